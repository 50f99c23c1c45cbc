#include "cartierlab/multoracle.hpp"

#include <algorithm>

namespace cartierlab {

NewtonData newton_data(const Polynomial& g, const RationalExponent& t) {
  if (g.size() != 1) throw Error(ErrorKind::unsupported, "multiplier oracle needs a monomial g");
  auto exps = g.leading_term().monomial.exponents();
  NewtonData d{{exps.begin(), exps.end()}, t};
  bool all_zero = std::all_of(d.v.begin(), d.v.end(), [](std::uint32_t a) { return a == 0; });
  if (all_zero && !t.is_zero()) {
    throw Error(ErrorKind::invalid_argument, "constant g needs t = 0 in the multiplier oracle");
  }
  return d;
}

std::uint32_t howald_exponent(const RationalExponent& t, std::uint32_t v) {
  const RationalExponent bound = t * RationalExponent(v);
  auto member = [&](std::uint64_t a) { return RationalExponent(static_cast<std::int64_t>(a) + 1) > bound; };
  std::uint64_t a = floor_scale(t, v);
  while (a > 0 && member(a - 1)) --a;
  while (!member(a)) ++a;
  return static_cast<std::uint32_t>(a);
}

Ideal howald_multiplier(const RingPtr& ring, const NewtonData& data) {
  if (data.dimension() != ring->num_vars()) {
    throw Error(ErrorKind::ring_mismatch, "Newton data dimension differs from the ring");
  }
  std::vector<std::uint32_t> a(data.dimension());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = howald_exponent(data.t, data.v[i]);
  return Ideal(ring, {Polynomial::monomial(ring, Monomial(std::move(a)))});
}

MultiplierComparison compare_tau_multiplier(const PrincipalPair& pair, const TauOptions& options) {
  if (pair.ambient.is_quotient()) {
    throw Error(ErrorKind::unsupported, "multiplier comparison needs a polynomial ambient ring");
  }
  const auto& ring = pair.ambient.ring();
  auto J = howald_multiplier(ring, newton_data(pair.g, pair.t));
  auto tau_ideal = tau_polynomial(pair, options).ideal;
  MultiplierComparison out{tau_ideal, J};
  out.contained = ideal_contains(J, tau_ideal, options.groebner);
  out.equal = out.contained && ideal_contains(tau_ideal, J, options.groebner);
  return out;
}

}  // namespace cartierlab
