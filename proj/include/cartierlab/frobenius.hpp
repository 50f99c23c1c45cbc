#pragma once

#include <cstddef>
#include <cstdint>
#include <map>

#include "cartierlab/groebner.hpp"
#include "cartierlab/polyring.hpp"

namespace cartierlab {

/// Upper bound on the Frobenius iteration count e; guards p^e arithmetic.
inline constexpr unsigned default_max_frobenius_iterations = 12;

/// f = sum_b parts[b]^(p^e) * x^b, with every exponent of b in [0, p^e).
struct FrobeniusDecomposition {
  RingPtr ring;
  unsigned e = 1;
  std::map<Monomial, Polynomial> parts;

  Polynomial reconstruct() const;
};

FrobeniusDecomposition decompose(const Polynomial& f, unsigned e);

/// The p^{-e}-linear map f -> Phi^e(F^e_* h*f), where Phi^e sends
/// x^{(p^e-1,...,p^e-1)} to 1 and every other residue monomial to 0.
class CartierMap {
 public:
  CartierMap(unsigned e, Polynomial premultiplier,
             unsigned max_e = default_max_frobenius_iterations);

  unsigned e() const noexcept { return e_; }
  const Polynomial& premultiplier() const noexcept { return h_; }

  Polynomial operator()(const Polynomial& f) const;

 private:
  unsigned e_;
  Polynomial h_;
};

Polynomial cartier_apply(const CartierMap& m, const Polynomial& f);

/// Map that applies `first` and then `then`:
///   compose(first, then)(f) == then(first(f)),
/// with data (e1 + e2, h2^(p^e1) * h1).
CartierMap compose(const CartierMap& first, const CartierMap& then);

/// Image of F^e_*(h * R) under Phi^e, i.e. the ideal generated by every part
/// of decompose(h, e). This is (h)^{[1/p^e]}.
Ideal frobenius_root(const Polynomial& h, unsigned e);
/// Image of F^e_*(h * I).
Ideal frobenius_root(const Ideal& ideal, const Polynomial& h, unsigned e);

struct SpanCheckReport {
  bool spans = false;
  std::size_t maps_checked = 0;
  std::size_t premultipliers_enumerated = 0;
};

/// Exhaustively checks, in one variable, that every p^{-e}-linear map whose
/// values on the basis 1, x, ..., x^(p^e-1) have degree <= d is of the form
/// f -> Phi^e(F^e_* h*f) for some premultiplier h of degree < p^e (d+1).
/// Throws resource_cap when p^(p^e (d+1)) exceeds `cap`.
SpanCheckReport span_check(const RingPtr& ring, unsigned e, unsigned d,
                           std::size_t cap = 4'000'000);

}  // namespace cartierlab
