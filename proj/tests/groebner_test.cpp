#include <gtest/gtest.h>

#include <algorithm>

#include "cartierlab/groebner.hpp"
#include "support.hpp"

using namespace cartierlab;
using cartierlab::testing::P;
using cartierlab::testing::Rng;

namespace {

bool monomial_oracle_contains(const std::vector<Monomial>& gens, const Polynomial& f) {
  return std::all_of(f.terms().begin(), f.terms().end(), [&](const Term& t) {
    return std::any_of(gens.begin(), gens.end(), [&](const Monomial& g) { return g.divides(t.monomial); });
  });
}

Ideal monomial_ideal(const RingPtr& R, const std::vector<Monomial>& gens) {
  std::vector<Polynomial> polys;
  for (const auto& m : gens) polys.push_back(Polynomial::monomial(R, m));
  return Ideal(R, polys);
}

}  // namespace

TEST(Groebner, CircleHyperbolaStyleExample) {
  auto R = make_ring(5, {"x", "y"});
  auto f1 = P(R, "x^2 - 1");
  auto f2 = P(R, "x*y - 1");
  auto x = P(R, "x");
  auto y = P(R, "y");
  // Cofactor identities place both basis elements in the ideal.
  auto g1 = y * f1 - x * f2;
  EXPECT_EQ(g1, P(R, "x - y"));
  auto g2 = -(y * g1) + f2;
  EXPECT_EQ(g2, P(R, "y^2 - 1"));
  // And the inputs come back from them.
  EXPECT_EQ(f1, (x + y) * g1 + g2);

  std::vector<Polynomial> gens{f1, f2};
  auto gb = buchberger(gens);
  ASSERT_EQ(gb.size(), 2u);
  EXPECT_EQ(gb[0], g2);
  EXPECT_EQ(gb[1], g1);
}

TEST(Groebner, NormalForm) {
  auto R = make_ring(7, {"x", "y"});
  std::vector<Polynomial> basis{P(R, "x - y")};
  EXPECT_EQ(normal_form(P(R, "x^2 + x*y"), basis), P(R, "2*y^2"));
}

TEST(Groebner, UnitAndZeroIdeals) {
  auto R = make_ring(3, {"x", "y"});
  EXPECT_TRUE(Ideal(R, {P(R, "x"), P(R, "x + 1")}).is_unit());
  EXPECT_TRUE(Ideal::zero(R).is_zero());
  EXPECT_EQ(Ideal::zero(R).to_string(), "(0)");
  EXPECT_EQ(Ideal(R, {P(R, "2*x^2")}).to_string(), "(x^2)");
  EXPECT_TRUE(ideal_contains(Ideal::unit(R), P(R, "x*y + 1")));
}

TEST(Groebner, LexElimination) {
  auto R = make_ring(5, {"t", "x", "y"});
  std::vector<Polynomial> gens{P(R, "x - t^2"), P(R, "y - t^3")};
  auto gb = buchberger(gens, MonomialOrder::lex(3));
  bool found = false;
  for (const auto& g : gb) {
    if (std::all_of(g.terms().begin(), g.terms().end(), [](const Term& t) { return t.monomial[0] == 0; })) {
      EXPECT_EQ(g, P(R, "x^3 - y^2").monic());
      found = true;
    }
  }
  EXPECT_TRUE(found);
}

TEST(Groebner, SpairCap) {
  auto R = make_ring(7, {"x", "y", "z"});
  std::vector<Polynomial> gens{P(R, "x^2 + y*z + 1"), P(R, "x*y + z^2"), P(R, "y^2 + x*z - 3")};
  try {
    buchberger(gens, GroebnerOptions{1});
    FAIL() << "cap not enforced";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::resource_cap);
  }
}

TEST(Groebner, Intersection) {
  auto R = make_ring(5, {"x", "y"});
  Ideal a(R, {P(R, "x")});
  Ideal b(R, {P(R, "y")});
  EXPECT_TRUE(ideal_equal(ideal_intersection(a, b), Ideal(R, {P(R, "x*y")})));
  Ideal c(R, {P(R, "x^2"), P(R, "y")});
  Ideal d(R, {P(R, "x"), P(R, "y^3")});
  EXPECT_TRUE(ideal_equal(ideal_intersection(c, d), Ideal(R, {P(R, "x^2"), P(R, "x*y"), P(R, "y^3")})));
}

TEST(Groebner, ParseIdeal) {
  auto R = make_ring(5, {"x", "y"});
  EXPECT_TRUE(ideal_equal(parse_ideal("(x, y)", R), Ideal(R, {P(R, "x"), P(R, "y")})));
  EXPECT_TRUE(parse_ideal("(0)", R).is_zero());
  EXPECT_TRUE(parse_ideal("()", R).is_zero());
  EXPECT_THROW(parse_ideal("(x, ", R), Error);
  EXPECT_THROW(parse_ideal("x, y", R), Error);
}

TEST(GroebnerProperty, MonomialMembershipBruteForce) {
  Rng rng(21);
  auto R = make_ring(2, {"x", "y", "z"});
  for (int it = 0; it < 150; ++it) {
    std::vector<Monomial> gens;
    std::size_t k = rng.uniform(1, 3);
    for (std::size_t i = 0; i < k; ++i) gens.push_back(cartierlab::testing::random_monomial(rng, 3, 2));
    auto I = monomial_ideal(R, gens);
    for (int j = 0; j < 10; ++j) {
      auto f = cartierlab::testing::random_poly(rng, R, 4, 3);
      EXPECT_EQ(ideal_contains(I, f), monomial_oracle_contains(gens, f)) << emit(f) << " in " << I.to_string();
    }
  }
}

TEST(GroebnerProperty, MonomialIntersectionIsLcm) {
  Rng rng(22);
  auto R = make_ring(3, {"x", "y"});
  for (int it = 0; it < 60; ++it) {
    std::vector<Monomial> a, b, lcms;
    for (std::size_t i = 0, k = rng.uniform(1, 3); i < k; ++i) a.push_back(cartierlab::testing::random_monomial(rng, 2, 3));
    for (std::size_t i = 0, k = rng.uniform(1, 3); i < k; ++i) b.push_back(cartierlab::testing::random_monomial(rng, 2, 3));
    for (const auto& m : a)
      for (const auto& n : b) lcms.push_back(m.lcm(n));
    EXPECT_TRUE(ideal_equal(ideal_intersection(monomial_ideal(R, a), monomial_ideal(R, b)), monomial_ideal(R, lcms)));
  }
}

TEST(GroebnerProperty, SoundReducedDeterministic) {
  Rng rng(23);
  for (std::uint64_t p : {2, 3, 7}) {
    auto R = make_ring(p, {"x", "y", "z"});
    for (int it = 0; it < 40; ++it) {
      std::vector<Polynomial> gens;
      for (std::size_t i = 0, k = rng.uniform(1, 3); i < k; ++i) {
        gens.push_back(cartierlab::testing::nonzero_poly(rng, R, 3, 2));
      }
      auto gb = buchberger(gens);
      for (const auto& g : gens) EXPECT_TRUE(normal_form(g, gb).is_zero());
      // Reduced: monic, and no term of one element is divisible by another's leading monomial.
      for (std::size_t i = 0; i < gb.size(); ++i) {
        EXPECT_EQ(gb[i].leading_term().coeff, 1u);
        for (std::size_t j = 0; j < gb.size(); ++j) {
          if (i == j) continue;
          for (const auto& t : gb[i].terms()) {
            EXPECT_FALSE(gb[j].leading_term().monomial.divides(t.monomial));
          }
        }
      }
      EXPECT_EQ(buchberger(gb), gb);
      auto shuffled = gens;
      std::reverse(shuffled.begin(), shuffled.end());
      shuffled.push_back(gens.front() * P(R, "x + 1"));
      EXPECT_EQ(buchberger(shuffled), gb);
    }
  }
}
