#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cartierlab/error.hpp"

namespace cartierlab {

/// The prime field F_p, 2 <= p < 2^31. Elements are plain integers in [0, p).
class PrimeField {
 public:
  using value_type = std::uint32_t;

  explicit PrimeField(std::uint64_t p);

  value_type characteristic() const noexcept { return p_; }

  value_type reduce(std::int64_t v) const noexcept;
  value_type add(value_type a, value_type b) const noexcept {
    std::uint64_t s = std::uint64_t{a} + b;
    return static_cast<value_type>(s >= p_ ? s - p_ : s);
  }
  value_type sub(value_type a, value_type b) const noexcept {
    return a >= b ? a - b : static_cast<value_type>(std::uint64_t{a} + p_ - b);
  }
  value_type neg(value_type a) const noexcept { return a == 0 ? 0 : p_ - a; }
  value_type mul(value_type a, value_type b) const noexcept {
    return static_cast<value_type>((std::uint64_t{a} * b) % p_);
  }
  value_type pow(value_type a, std::uint64_t k) const noexcept;
  /// Throws invalid_argument for a == 0.
  value_type inv(value_type a) const;

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  value_type p_;
};

bool is_prime(std::uint64_t n) noexcept;

/// Ring descriptor: F_p together with an ordered list of variable names.
class Ring {
 public:
  Ring(PrimeField field, std::vector<std::string> variables);

  const PrimeField& field() const noexcept { return field_; }
  std::uint32_t characteristic() const noexcept { return field_.characteristic(); }
  std::size_t num_vars() const noexcept { return variables_.size(); }
  const std::vector<std::string>& variables() const noexcept { return variables_; }
  std::optional<std::size_t> index_of(std::string_view name) const;

  friend bool operator==(const Ring&, const Ring&) = default;

 private:
  PrimeField field_;
  std::vector<std::string> variables_;
};

using RingPtr = std::shared_ptr<const Ring>;

RingPtr make_ring(std::uint64_t p, std::vector<std::string> variables);

/// Throws ring_mismatch unless both descriptors describe the same ring.
void require_same_ring(const RingPtr& a, const RingPtr& b);
bool same_ring(const RingPtr& a, const RingPtr& b) noexcept;

/// Exponent vector. Multiplication is guarded against overflow of the
/// per-variable exponent (limit 2^31 - 1).
class Monomial {
 public:
  static constexpr std::uint64_t max_exponent = (std::uint64_t{1} << 31) - 1;

  Monomial() = default;
  explicit Monomial(std::size_t num_vars) : exps_(num_vars, 0) {}
  explicit Monomial(std::vector<std::uint32_t> exponents);

  std::size_t size() const noexcept { return exps_.size(); }
  std::uint32_t operator[](std::size_t i) const noexcept { return exps_[i]; }
  std::span<const std::uint32_t> exponents() const noexcept { return exps_; }
  std::uint64_t degree() const noexcept { return degree_; }
  bool is_one() const noexcept { return degree_ == 0; }

  Monomial operator*(const Monomial& other) const;
  /// Precondition: other.divides(*this).
  Monomial operator/(const Monomial& other) const;
  bool divides(const Monomial& other) const noexcept;
  bool coprime(const Monomial& other) const noexcept;
  Monomial lcm(const Monomial& other) const;

  std::size_t hash() const noexcept;

  friend bool operator==(const Monomial& a, const Monomial& b) noexcept {
    return a.exps_ == b.exps_;
  }
  /// Plain lexicographic comparison of exponent vectors, for containers only.
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) noexcept {
    return a.exps_ <=> b.exps_;
  }

 private:
  std::vector<std::uint32_t> exps_;
  std::uint64_t degree_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept { return m.hash(); }
};

/// Graded reverse lexicographic comparison (x_0 > x_1 > ... > x_{n-1}).
std::strong_ordering grevlex_compare(const Monomial& a, const Monomial& b) noexcept;

struct Term {
  Monomial monomial;
  PrimeField::value_type coeff;

  friend bool operator==(const Term&, const Term&) = default;
};

/// Sparse polynomial over F_p in canonical form: terms strictly descending in
/// grevlex, no zero coefficients. The zero polynomial has no terms.
class Polynomial {
 public:
  explicit Polynomial(RingPtr ring);

  static Polynomial constant(RingPtr ring, std::int64_t value);
  static Polynomial variable(RingPtr ring, std::size_t index);
  static Polynomial variable(RingPtr ring, std::string_view name);
  static Polynomial monomial(RingPtr ring, Monomial m, PrimeField::value_type coeff = 1);
  /// Sorts, merges equal monomials and drops zero coefficients.
  static Polynomial from_terms(RingPtr ring, std::vector<Term> terms);

  const RingPtr& ring() const noexcept { return ring_; }
  const PrimeField& field() const noexcept { return ring_->field(); }
  std::span<const Term> terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  /// Nonzero constant.
  bool is_unit() const noexcept;
  std::uint64_t total_degree() const noexcept;
  /// Constant coefficient (0 when absent).
  PrimeField::value_type constant_term() const noexcept;

  /// Precondition: nonzero.
  const Term& leading_term() const { return terms_.front(); }

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Polynomial& other);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

  Polynomial scaled(PrimeField::value_type c) const;
  Polynomial times_term(const Monomial& m, PrimeField::value_type c) const;
  /// Leading coefficient normalized to 1 (zero stays zero).
  Polynomial monic() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);

  std::string to_string() const;

 private:
  Polynomial(RingPtr ring, std::vector<Term> canonical_terms);

  RingPtr ring_;
  std::vector<Term> terms_;
};

/// Repeated squaring; power(a, 0) == 1. Throws resource_cap when an
/// intermediate result exceeds `max_terms` terms.
Polynomial power(const Polynomial& a, std::uint64_t k,
                 std::size_t max_terms = 20'000'000);

Polynomial derivative(const Polynomial& a, std::size_t var);

/// Rewrites every monomial through `map` into `target`, summing collisions.
/// The monomial map must return exponent vectors sized for `target`.
Polynomial map_monomials(const Polynomial& a, const RingPtr& target,
                         const std::function<Monomial(const Monomial&)>& map);

/// Moves `a` into `target`, sending variable i to variable var_map[i].
Polynomial change_ring(const Polynomial& a, const RingPtr& target,
                       std::span<const std::size_t> var_map);

/// a / b when b divides a exactly, otherwise nullopt. b must be nonzero.
std::optional<Polynomial> divide_exact(const Polynomial& a, const Polynomial& b);

/// Grammar (whitespace insignificant):
///   poly   := ['-'] term (('+'|'-') term)*
///   term   := coeff ('*' factor)* | factor ('*' factor)*
///   factor := var ('^' uint)?
Polynomial parse_polynomial(std::string_view text, const RingPtr& ring);

/// Canonical text form; terms in descending grevlex order, joined by " + ".
std::string emit(const Polynomial& p);

/// Nonnegative rational number kept in lowest terms.
class RationalExponent {
 public:
  RationalExponent() = default;
  RationalExponent(std::int64_t numerator, std::int64_t denominator = 1);

  /// Accepts "a" or "a/b".
  static RationalExponent parse(std::string_view text);

  std::int64_t numerator() const noexcept { return num_; }
  std::int64_t denominator() const noexcept { return den_; }
  bool is_zero() const noexcept { return num_ == 0; }
  bool is_integer() const noexcept { return den_ == 1; }
  /// Round-up integer part.
  std::int64_t ceil() const noexcept { return (num_ + den_ - 1) / den_; }
  std::int64_t floor() const noexcept { return num_ / den_; }

  RationalExponent operator+(const RationalExponent& o) const;
  /// Throws invalid_argument on a negative result.
  RationalExponent operator-(const RationalExponent& o) const;
  RationalExponent operator*(const RationalExponent& o) const;

  friend bool operator==(const RationalExponent&, const RationalExponent&) = default;
  friend std::strong_ordering operator<=>(const RationalExponent& a,
                                          const RationalExponent& b) noexcept;

  std::string to_string() const;

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// ceil(t * m), exact. Throws overflow if the result does not fit.
std::uint64_t ceil_scale(const RationalExponent& t, std::uint64_t m);
/// floor(t * m), exact.
std::uint64_t floor_scale(const RationalExponent& t, std::uint64_t m);

/// p^e as a 64-bit integer; throws overflow beyond 2^62.
std::uint64_t checked_pow(std::uint64_t p, unsigned e);

}  // namespace cartierlab
