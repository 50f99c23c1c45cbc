#pragma once

#include <cstdint>
#include <vector>

#include "cartierlab/groebner.hpp"
#include "cartierlab/polyring.hpp"
#include "cartierlab/testideal.hpp"

namespace cartierlab {

/// Exponent vector of a monomial g together with the coefficient t of t*div(g).
struct NewtonData {
  std::vector<std::uint32_t> v;
  RationalExponent t;

  std::size_t dimension() const noexcept { return v.size(); }
};

/// Throws unsupported unless g is a single term (the coefficient is ignored).
NewtonData newton_data(const Polynomial& g, const RationalExponent& t);

/// Smallest a with a + 1 > c, i.e. floor(c), for c = t * v.
std::uint32_t howald_exponent(const RationalExponent& t, std::uint32_t v);

/// Monomial multiplier ideal: x^a is a member iff a_i + 1 > t * v_i for every i.
/// For a single monomial this is the principal ideal (x^(floor(t v))).
Ideal howald_multiplier(const RingPtr& ring, const NewtonData& data);

struct MultiplierComparison {
  Ideal tau;
  Ideal multiplier;
  bool contained = false;  // tau ⊆ multiplier
  bool equal = false;
};

/// Compares tau(g^t) with the monomial multiplier ideal; polynomial ambient only.
MultiplierComparison compare_tau_multiplier(const PrincipalPair& pair, const TauOptions& options = {});

}  // namespace cartierlab
