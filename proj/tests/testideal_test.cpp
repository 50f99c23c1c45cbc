#include <gtest/gtest.h>

#include <map>

#include "cartierlab/testideal.hpp"
#include "support.hpp"

using namespace cartierlab;
using cartierlab::testing::P;

namespace {

// C(n, k) mod p by Lucas' theorem.
std::uint64_t binomial_mod(std::uint64_t n, std::uint64_t k, std::uint64_t p) {
  std::uint64_t result = 1;
  while (n > 0 || k > 0) {
    std::uint64_t a = n % p, b = k % p;
    if (b > a) return 0;
    std::uint64_t c = 1;
    for (std::uint64_t i = 0; i < b; ++i) c = c * (a - i) % p;
    std::uint64_t d = 1;
    for (std::uint64_t i = 1; i <= b; ++i) d = d * i % p;
    std::uint64_t inv = 1, base = d, ex = p - 2;
    while (ex) {
      if (ex & 1) inv = inv * base % p;
      base = base * base % p;
      ex >>= 1;
    }
    result = result * c % p * inv % p;
    n /= p;
    k /= p;
  }
  return result;
}

// nu for x^a + y^b from the binomial expansion of (x^a + y^b)^r.
std::uint64_t nu_binomial_oracle(std::uint64_t a, std::uint64_t b, std::uint64_t p, unsigned e) {
  const std::uint64_t q = checked_pow(p, e);
  auto survives = [&](std::uint64_t r) {
    for (std::uint64_t k = 0; k <= r; ++k) {
      if (a * k < q && b * (r - k) < q && binomial_mod(r, k, p) != 0) return true;
    }
    return false;
  };
  std::uint64_t r = 0;
  while (survives(r + 1)) ++r;
  return r;
}

// (g^m)^{[1/q]} for g = x^a + y^b, built from the binomial expansion and the
// base-q digit grouping, with no use of the library's power or decompose.
Ideal cusp_root_oracle(const RingPtr& R, std::uint32_t a, std::uint32_t b, std::uint64_t m, std::uint64_t q) {
  const std::uint64_t p = R->characteristic();
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::vector<Term>> parts;
  for (std::uint64_t k = 0; k <= m; ++k) {
    auto c = binomial_mod(m, k, p);
    if (c == 0) continue;
    std::uint64_t ex = a * k, ey = b * (m - k);
    parts[{ex % q, ey % q}].push_back(
        {Monomial(std::vector<std::uint32_t>{static_cast<std::uint32_t>(ex / q), static_cast<std::uint32_t>(ey / q)}),
         static_cast<std::uint32_t>(c)});
  }
  std::vector<Polynomial> gens;
  for (auto& [key, terms] : parts) gens.push_back(Polynomial::from_terms(R, terms));
  return Ideal(R, gens);
}

TauResult tau_of(const RingPtr& R, const std::string& g, const std::string& t, ExponentScheme scheme = ExponentScheme::classical) {
  TauOptions o;
  o.scheme = scheme;
  return tau(PrincipalPair(AmbientRing::polynomial(R), P(R, g), RationalExponent::parse(t)), o);
}

Ideal ideal_of(const RingPtr& R, std::initializer_list<const char*> gens) {
  std::vector<Polynomial> polys;
  for (auto g : gens) polys.push_back(P(R, g));
  return Ideal(R, polys);
}

}  // namespace

TEST(Tau, PolynomialExamples) {
  auto R = make_ring(3, {"x"});
  EXPECT_TRUE(tau_of(R, "x", "1/2").ideal.is_unit());
  EXPECT_TRUE(ideal_equal(tau_of(R, "x", "3/2").ideal, ideal_of(R, {"x"})));
  auto S = make_ring(7, {"x", "y"});
  auto cusp = tau_of(S, "x^2 + y^3", "5/6");
  EXPECT_TRUE(ideal_equal(cusp.ideal, ideal_of(S, {"x", "y"})));
  EXPECT_LE(cusp.stabilized_at_e, 3u);
}

TEST(Tau, TrivialPairs) {
  auto R = make_ring(5, {"x", "y"});
  EXPECT_TRUE(tau_of(R, "x*y", "0").ideal.is_unit());
  EXPECT_TRUE(tau_of(R, "3", "7/2").ideal.is_unit());
  EXPECT_THROW(PrincipalPair(AmbientRing::polynomial(R), P(R, "0"), RationalExponent(1)), Error);
}

TEST(Tau, CuspChainMatchesBinomialOracle) {
  auto R = make_ring(7, {"x", "y"});
  auto r = tau_of(R, "x^2 + y^3", "5/6");
  const RationalExponent t(5, 6);
  for (unsigned e = 1; e < r.terms.size(); ++e) {
    std::uint64_t q = checked_pow(7, e);
    EXPECT_TRUE(ideal_equal(r.terms[e], cusp_root_oracle(R, 2, 3, ceil_scale(t, q), q))) << "e=" << e;
  }
}

TEST(Tau, ChainIsAscendingAndSumsTerms) {
  auto R = make_ring(5, {"x", "y"});
  for (const char* t : {"1/3", "5/6", "1", "4/3"}) {
    auto r = tau_of(R, "x^2 + y^3", t, ExponentScheme::premultiplied);
    for (std::size_t i = 1; i < r.partial_sums.size(); ++i) {
      EXPECT_TRUE(ideal_contains(r.partial_sums[i], r.partial_sums[i - 1]));
    }
    Ideal sum = r.terms[0];
    for (std::size_t i = 1; i <= r.stabilized_at_e; ++i) sum = ideal_sum(sum, r.terms[i]);
    EXPECT_TRUE(ideal_equal(sum, r.ideal));
  }
}

TEST(Tau, SchemesAgreeOnSuite) {
  const std::vector<std::pair<std::string, std::vector<std::string>>> suite = {
      {"x", {"x"}}, {"x*y", {"x", "y"}}, {"x^2*y", {"x", "y"}}, {"x^2 + y^3", {"x", "y"}},
      {"x^2 + y^2", {"x", "y"}}, {"x^2*y + x*y^2", {"x", "y"}}};
  const std::vector<std::string> ts = {"1/4", "1/2", "2/3", "5/6", "1", "3/2", "2"};
  for (std::uint64_t p : {2, 3, 5, 7}) {
    for (const auto& [g, vars] : suite) {
      auto R = make_ring(p, vars);
      for (const auto& t : ts) {
        auto a = tau_of(R, g, t, ExponentScheme::classical);
        auto b = tau_of(R, g, t, ExponentScheme::premultiplied);
        EXPECT_TRUE(ideal_equal(a.ideal, b.ideal)) << g << " p=" << p << " t=" << t << " " << a.ideal.to_string() << " vs "
                                                   << b.ideal.to_string();
      }
    }
  }
}

TEST(Tau, MonotoneInT) {
  auto R = make_ring(5, {"x", "y"});
  const std::vector<std::string> ts = {"0", "1/6", "1/2", "4/5", "5/6", "1", "7/6", "3/2"};
  for (const char* g : {"x^2 + y^3", "x*y^2", "x^3 + y^3"}) {
    for (std::size_t i = 1; i < ts.size(); ++i) {
      EXPECT_TRUE(ideal_contains(tau_of(R, g, ts[i - 1]).ideal, tau_of(R, g, ts[i]).ideal)) << g << " " << ts[i];
    }
  }
}

TEST(Tau, SkodaShift) {
  for (std::uint64_t p : {3, 5, 7}) {
    auto R = make_ring(p, {"x", "y"});
    for (const char* g : {"x^2 + y^3", "x*y", "x^2*y"}) {
      for (const char* t : {"1/2", "5/6", "1/3"}) {
        auto base = tau_of(R, g, t).ideal;
        auto shifted = tau_of(R, g, (RationalExponent::parse(t) + RationalExponent(1)).to_string()).ideal;
        EXPECT_TRUE(ideal_equal(shifted, ideal_scale(base, P(R, g)))) << g << " p=" << p << " t=" << t;
      }
    }
  }
}

TEST(Tau, NotStabilized) {
  auto R = make_ring(7, {"x", "y"});
  TauOptions o;
  o.e_max = 0;
  o.window = 1;
  try {
    tau(PrincipalPair(AmbientRing::polynomial(R), P(R, "x^2 + y^3"), RationalExponent(5, 6)), o);
    FAIL();
  } catch (const NotStabilizedError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::not_stabilized);
    EXPECT_EQ(e.chain().size(), 1u);
  }
  o.window = 0;
  EXPECT_THROW(tau(PrincipalPair(AmbientRing::polynomial(R), P(R, "x"), RationalExponent(1)), o), Error);
}

TEST(Tau, QuotientExamples) {
  auto R = make_ring(3, {"x", "z"});
  auto Q = AmbientRing::quotient(P(R, "z^2 - x"));
  EXPECT_TRUE(tau(PrincipalPair(Q, P(R, "1"), RationalExponent(0))).ideal.is_unit());
  auto smooth = tau(PrincipalPair(Q, P(R, "z"), RationalExponent(1))).ideal;
  EXPECT_TRUE(ideal_equal(smooth, ideal_of(R, {"z", "z^2 - x"})));

  auto C = make_ring(3, {"x", "y", "z"});
  auto cone = AmbientRing::quotient(P(C, "z^2 - x*y"));
  EXPECT_TRUE(tau(PrincipalPair(cone, P(C, "1"), RationalExponent(0))).ideal.is_unit());
  EXPECT_TRUE(ideal_equal(tau(PrincipalPair(cone, P(C, "x"), RationalExponent(1))).ideal, ideal_of(C, {"x", "z^2"})));

  EXPECT_THROW(AmbientRing::quotient(P(C, "1")), Error);
  EXPECT_THROW(PrincipalPair(cone, P(C, "z^2 - x*y"), RationalExponent(1)), Error);
}

TEST(Tau, NonFRegularQuotient) {
  // z^3 = x^3 + y^3 over F_7 is a cone over an ordinary elliptic curve; its
  // test ideal is the maximal ideal, so t = 0 must not short-circuit.
  auto R = make_ring(7, {"x", "y", "z"});
  auto Q = AmbientRing::quotient(P(R, "x^3 + y^3 - z^3"));
  auto r = tau(PrincipalPair(Q, P(R, "1"), RationalExponent(0)));
  EXPECT_TRUE(ideal_equal(r.ideal, ideal_of(R, {"x", "y", "z"})));
}

TEST(Nu, Examples) {
  auto R = make_ring(5, {"x"});
  EXPECT_EQ(nu_value(P(R, "x"), 1), 4u);
  auto S = make_ring(3, {"x", "y"});
  EXPECT_EQ(nu_value(P(S, "x*y"), 1), 2u);
  auto T = make_ring(7, {"x", "y"});
  EXPECT_EQ(nu_value(P(T, "x^2 + y^3"), 1), 5u);
  EXPECT_THROW(nu_value(P(T, "x + 1"), 1), Error);
  EXPECT_THROW(nu_value(P(T, "x"), 0), Error);
}

TEST(Nu, MatchesBinomialOracle) {
  for (std::uint64_t p : {2, 3, 5, 7, 11}) {
    auto R = make_ring(p, {"x", "y"});
    for (auto [a, b] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 3}, {2, 5}, {3, 4}, {1, 1}}) {
      auto g = Polynomial::monomial(R, Monomial(std::vector<std::uint32_t>{a, 0})) +
               Polynomial::monomial(R, Monomial(std::vector<std::uint32_t>{0, b}));
      for (unsigned e = 1; e <= 3; ++e) {
        if (checked_pow(p, e) > 400) continue;
        EXPECT_EQ(nu_value(g, e), nu_binomial_oracle(a, b, p, e)) << emit(g) << " p=" << p << " e=" << e;
      }
    }
  }
}

TEST(Nu, UnitDetectionAgreesWithBounds) {
  auto R = make_ring(7, {"x", "y"});
  auto A = AmbientRing::polynomial(R);
  for (const char* g : {"x^2 + y^3", "x*y", "x^3 + y^4"}) {
    for (unsigned e = 1; e <= 2; ++e) {
      auto q = static_cast<std::int64_t>(checked_pow(7, e));
      auto nu = static_cast<std::int64_t>(nu_value(P(R, g), e));
      EXPECT_TRUE(tau(PrincipalPair(A, P(R, g), RationalExponent(nu, q))).ideal.is_unit()) << g;
      EXPECT_FALSE(tau(PrincipalPair(A, P(R, g), RationalExponent(nu + 1, q))).ideal.is_unit()) << g;
    }
  }
}

TEST(Fpt, Examples) {
  for (std::uint64_t p : {2, 3, 5, 7}) {
    auto R = make_ring(p, {"x", "y"});
    auto fx = fpt_search(P(R, "x"), 2, 4);
    EXPECT_LT(fx.lo, RationalExponent(1));
    EXPECT_EQ(fx.hi, RationalExponent(1));
  }
  auto R5 = make_ring(5, {"x", "y"});
  auto fxy = fpt_search(P(R5, "x*y"), 2, 4);
  EXPECT_EQ(fxy.hi, RationalExponent(1));
  EXPECT_EQ(fxy.nu, (std::vector<std::uint64_t>{4, 24}));

  auto R7 = make_ring(7, {"x", "y"});
  auto cusp = fpt_search(P(R7, "x^2 + y^3"), 2, 12);
  EXPECT_EQ(cusp.hi, RationalExponent(5, 6));
  EXPECT_EQ(cusp.lo, RationalExponent(40, 49));
  EXPECT_EQ(cusp.nu, (std::vector<std::uint64_t>{5, 40}));
  EXPECT_TRUE(tau(PrincipalPair(AmbientRing::polynomial(R7), P(R7, "x^2 + y^3"),
                                RationalExponent(5, 6) - RationalExponent(1, 100)))
                  .ideal.is_unit());
}
