#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cartierlab/polyring.hpp"

namespace cartierlab {

enum class OrderKind { grevlex, lex };

/// A monomial order on n variables. `permutation[k]` is the variable that
/// ranks k-th (the largest variable comes first).
class MonomialOrder {
 public:
  MonomialOrder(OrderKind kind, std::vector<std::size_t> permutation);

  static MonomialOrder grevlex(std::size_t num_vars);
  static MonomialOrder lex(std::size_t num_vars);

  OrderKind kind() const noexcept { return kind_; }
  std::span<const std::size_t> permutation() const noexcept { return perm_; }
  std::size_t num_vars() const noexcept { return perm_.size(); }

  std::strong_ordering compare(const Monomial& a, const Monomial& b) const noexcept;

  friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;

 private:
  OrderKind kind_;
  std::vector<std::size_t> perm_;
  bool identity_ = true;
};

struct GroebnerOptions {
  /// Maximum number of S-pairs reduced before giving up with resource_cap.
  std::size_t spair_cap = 100'000;
};

/// Reduced Groebner basis: monic, inter-reduced, sorted by leading monomial
/// descending under `order`. The empty basis is the zero ideal.
std::vector<Polynomial> buchberger(std::span<const Polynomial> generators,
                                   const MonomialOrder& order,
                                   const GroebnerOptions& options = {});
std::vector<Polynomial> buchberger(std::span<const Polynomial> generators,
                                   const GroebnerOptions& options = {});

/// Fully reduced remainder of f modulo `basis` (which must be a Groebner
/// basis under `order` for the result to be canonical).
Polynomial normal_form(const Polynomial& f, std::span<const Polynomial> basis,
                       const MonomialOrder& order);
Polynomial normal_form(const Polynomial& f, std::span<const Polynomial> basis);

/// Leading term of a polynomial under an arbitrary order.
const Term& leading_term(const Polynomial& f, const MonomialOrder& order);

/// Finitely generated ideal. The grevlex reduced basis is computed on first
/// use and then shared between copies; once set it never changes.
class Ideal {
 public:
  Ideal(RingPtr ring, std::vector<Polynomial> generators);

  static Ideal unit(RingPtr ring);
  static Ideal zero(RingPtr ring);

  const RingPtr& ring() const noexcept { return ring_; }
  std::span<const Polynomial> generators() const noexcept { return gens_; }

  const std::vector<Polynomial>& groebner_basis(const GroebnerOptions& options = {}) const;

  bool is_zero() const noexcept { return gens_.empty(); }
  bool is_unit(const GroebnerOptions& options = {}) const;

  /// Reduced-basis generators as canonical strings.
  std::vector<std::string> generator_strings(const GroebnerOptions& options = {}) const;
  /// "(g1, g2, ...)" over the reduced basis; "(0)" for the zero ideal.
  std::string to_string(const GroebnerOptions& options = {}) const;

 private:
  struct Cache;

  RingPtr ring_;
  std::vector<Polynomial> gens_;
  std::shared_ptr<Cache> cache_;
};

bool ideal_contains(const Ideal& ideal, const Polynomial& f, const GroebnerOptions& options = {});
/// inner ⊆ outer.
bool ideal_contains(const Ideal& outer, const Ideal& inner, const GroebnerOptions& options = {});
bool ideal_equal(const Ideal& a, const Ideal& b, const GroebnerOptions& options = {});
Ideal ideal_sum(const Ideal& a, const Ideal& b);
Ideal ideal_product(const Ideal& a, const Ideal& b);
Ideal ideal_scale(const Ideal& a, const Polynomial& f);
/// a ∩ b by eliminating an auxiliary variable under lex.
Ideal ideal_intersection(const Ideal& a, const Ideal& b, const GroebnerOptions& options = {});

/// Parses "(g1, g2, ...)"; "(0)" and "()" give the zero ideal.
Ideal parse_ideal(std::string_view text, const RingPtr& ring);

}  // namespace cartierlab
