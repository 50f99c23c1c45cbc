#include "cartierlab/testideal.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <utility>

namespace cartierlab {

// ---------------------------------------------------------------------------
// AmbientRing / PrincipalPair

AmbientRing AmbientRing::polynomial(RingPtr ring) { return AmbientRing(std::move(ring), std::nullopt); }

AmbientRing AmbientRing::quotient(Polynomial relation) {
  if (relation.is_zero() || relation.is_unit()) {
    throw Error(ErrorKind::invalid_argument, "hypersurface relation must be a nonzero non-unit");
  }
  auto ring = relation.ring();
  return AmbientRing(std::move(ring), std::move(relation));
}

Ideal AmbientRing::relation_ideal() const {
  if (!relation_) return Ideal::zero(ring_);
  return Ideal(ring_, {*relation_});
}

Ideal AmbientRing::lift(const Ideal& ideal) const {
  if (!relation_) return ideal;
  return ideal_sum(ideal, relation_ideal());
}

Polynomial AmbientRing::reduce(const Polynomial& f, const GroebnerOptions& options) const {
  if (!relation_) return f;
  return normal_form(f, relation_ideal().groebner_basis(options));
}

PrincipalPair::PrincipalPair(AmbientRing ambient_, Polynomial g_, RationalExponent t_)
    : ambient(std::move(ambient_)), g(std::move(g_)), t(t_) {
  require_same_ring(ambient.ring(), g.ring());
  if (ambient.reduce(g).is_zero()) {
    throw Error(ErrorKind::invalid_argument, "g must be nonzero in the ambient ring");
  }
}

// ---------------------------------------------------------------------------
// Stabilizing chain

namespace {

unsigned default_power(const PrincipalPair& pair, const TauOptions& options) {
  if (options.N) return *options.N;
  return static_cast<unsigned>(std::max<std::int64_t>(1, pair.t.ceil()));
}

// Premultiplier base for a quotient: g times a partial derivative of w that
// does not vanish identically on A/(w).
Polynomial quotient_test_element(const PrincipalPair& pair, const GroebnerOptions& options) {
  const auto& w = *pair.ambient.relation();
  const auto& ring = pair.ambient.ring();
  std::optional<Polynomial> chosen;
  for (std::size_t i = 0; i < ring->num_vars(); ++i) {
    auto d = derivative(w, i);
    if (d.is_unit()) return pair.g;
    if (!chosen && !pair.ambient.reduce(d, options).is_zero()) chosen = std::move(d);
  }
  if (!chosen) {
    throw Error(ErrorKind::unsupported,
                "every partial derivative of the relation vanishes on the quotient");
  }
  return pair.g * *chosen;
}

/// exponent(e), when known, is a with term_e = (g^a)^[1/p^e]. Such a step is
/// a forced repeat when a_e = p a_(e-1) and does not count toward the window,
/// and it is exact when a_e = t p^e.
template <typename TermFn, typename ExponentFn>
TauResult run_chain(const PrincipalPair& pair, const TauOptions& options, TermFn&& term_at,
                    ExponentFn&& exponent) {
  if (options.window == 0) throw Error(ErrorKind::invalid_argument, "window must be >= 1");
  if (options.e_max > default_max_frobenius_iterations) {
    throw Error(ErrorKind::invalid_argument,
                "e_max exceeds the Frobenius iteration cap " +
                    std::to_string(default_max_frobenius_iterations));
  }
  const auto& ambient = pair.ambient;
  const auto& gb_opts = options.groebner;
  const std::uint64_t p = ambient.ring()->characteristic();
  TauResult result{Ideal::zero(ambient.ring()), 0, {}, {}};
  unsigned equal_run = 0;
  std::optional<std::uint64_t> previous;
  for (unsigned e = 0; e <= options.e_max; ++e) {
    Ideal term = ambient.lift(term_at(e));
    std::optional<std::uint64_t> a = exponent(e);
    const bool forced = e > 0 && a && previous && *a == p * *previous;
    bool exact = false;
    if (a) {
      const std::uint64_t q = checked_pow(p, e);
      exact = ceil_scale(pair.t, q) == floor_scale(pair.t, q) && *a == ceil_scale(pair.t, q);
    }
    previous = a;
    result.terms.push_back(term);
    if (e == 0) {
      result.partial_sums.push_back(Ideal(ambient.ring(), term.groebner_basis(gb_opts)));
      result.stabilized_at_e = 0;
    } else if (ideal_contains(result.partial_sums.back(), term, gb_opts)) {
      result.partial_sums.push_back(result.partial_sums.back());
      if (!forced) ++equal_run;
    } else {
      Ideal sum = ideal_sum(result.partial_sums.back(), term);
      result.partial_sums.push_back(Ideal(ambient.ring(), sum.groebner_basis(gb_opts)));
      result.stabilized_at_e = e;
      equal_run = 0;
    }
    const Ideal& current = result.partial_sums.back();
    // The unit ideal cannot grow further.
    if (exact || current.is_unit(gb_opts) || equal_run >= options.window) {
      result.ideal = current;
      return result;
    }
  }
  throw NotStabilizedError("partial sums did not stabilize within e_max = " +
                               std::to_string(options.e_max) + " (window " +
                               std::to_string(options.window) + ")",
                           result.partial_sums);
}

TauResult unit_result(const RingPtr& ring) {
  auto unit = Ideal::unit(ring);
  return TauResult{unit, 0, {unit}, {unit}};
}

}  // namespace

TauResult tau_polynomial(const PrincipalPair& pair, const TauOptions& options) {
  if (pair.ambient.is_quotient()) {
    throw Error(ErrorKind::invalid_argument, "tau_polynomial needs a polynomial ambient ring");
  }
  const auto& ring = pair.ambient.ring();
  if (pair.t.is_zero() || pair.g.is_unit()) return unit_result(ring);
  const std::uint64_t p = ring->characteristic();

  if (options.scheme == ExponentScheme::classical) {
    return run_chain(pair, options, [&](unsigned e) {
      std::uint64_t q = checked_pow(p, e);
      Polynomial h = power(pair.g, ceil_scale(pair.t, q));
      return e == 0 ? Ideal(ring, {h}) : frobenius_root(h, e);
    }, [&](unsigned e) -> std::optional<std::uint64_t> { return ceil_scale(pair.t, checked_pow(p, e)); });
  }

  Polynomial c = options.c.value_or(pair.g);
  require_same_ring(ring, c.ring());
  const unsigned N = default_power(pair, options);
  Polynomial cN = power(c, N);
  const bool c_is_g = c == pair.g;
  return run_chain(pair, options, [&](unsigned e) {
    if (e == 0) return Ideal(ring, {cN});
    std::uint64_t q = checked_pow(p, e);
    return frobenius_root(cN * power(pair.g, ceil_scale(pair.t, q - 1)), e);
  }, [&](unsigned e) -> std::optional<std::uint64_t> {
    if (!c_is_g) return std::nullopt;
    return N + ceil_scale(pair.t, checked_pow(p, e) - 1);
  });
}

TauResult tau_quotient(const PrincipalPair& pair, const TauOptions& options) {
  if (!pair.ambient.is_quotient()) {
    throw Error(ErrorKind::invalid_argument, "tau_quotient needs a hypersurface quotient");
  }
  const auto& ring = pair.ambient.ring();
  const auto& w = *pair.ambient.relation();
  const std::uint64_t p = ring->characteristic();
  Polynomial c = options.c ? *options.c : quotient_test_element(pair, options.groebner);
  require_same_ring(ring, c.ring());
  Polynomial cN = power(c, default_power(pair, options));
  return run_chain(pair, options, [&](unsigned e) {
    if (e == 0) return Ideal(ring, {cN});
    std::uint64_t q = checked_pow(p, e);
    Polynomial h = power(w, q - 1) * cN * power(pair.g, ceil_scale(pair.t, q - 1));
    return frobenius_root(h, e);
  }, [](unsigned) -> std::optional<std::uint64_t> { return std::nullopt; });
}

TauResult tau(const PrincipalPair& pair, const TauOptions& options) {
  return pair.ambient.is_quotient() ? tau_quotient(pair, options) : tau_polynomial(pair, options);
}

// ---------------------------------------------------------------------------
// nu and fpt

std::uint64_t nu_value(const Polynomial& g, unsigned e) {
  if (e == 0) throw Error(ErrorKind::invalid_argument, "nu_value requires e >= 1");
  if (g.constant_term() != 0) {
    throw Error(ErrorKind::invalid_argument, "nu_value requires g in the maximal ideal");
  }
  if (g.is_zero()) throw Error(ErrorKind::invalid_argument, "nu_value of the zero polynomial");
  const std::uint64_t q = checked_pow(g.ring()->characteristic(), e);
  auto truncate = [&](const Polynomial& f) {
    std::vector<Term> kept;
    for (const auto& t : f.terms()) {
      auto exps = t.monomial.exponents();
      if (std::all_of(exps.begin(), exps.end(), [&](std::uint32_t a) { return a < q; })) {
        kept.push_back(t);
      }
    }
    return Polynomial::from_terms(f.ring(), std::move(kept));
  };
  Polynomial current = Polynomial::constant(g.ring(), 1);
  std::uint64_t r = 0;
  for (;;) {
    Polynomial next = truncate(current * g);
    if (next.is_zero()) return r;
    current = std::move(next);
    ++r;
  }
}

FptInterval fpt_search(const Polynomial& g, unsigned e_max, std::uint64_t denominator_bound,
                       const TauOptions& options) {
  if (e_max == 0) throw Error(ErrorKind::invalid_argument, "fpt_search requires e_max >= 1");
  FptInterval out;
  for (unsigned e = 1; e <= e_max; ++e) out.nu.push_back(nu_value(g, e));
  const std::uint64_t q = checked_pow(g.ring()->characteristic(), e_max);
  out.lo = RationalExponent(static_cast<std::int64_t>(out.nu.back()), static_cast<std::int64_t>(q));
  out.hi = RationalExponent(static_cast<std::int64_t>(out.nu.back() + 1), static_cast<std::int64_t>(q));

  auto ambient = AmbientRing::polynomial(g.ring());
  auto is_unit_at = [&](const RationalExponent& t) {
    return tau_polynomial(PrincipalPair(ambient, g, t), options).ideal.is_unit(options.groebner);
  };

  std::set<RationalExponent> candidates;
  for (std::uint64_t b = 1; b <= denominator_bound; ++b) {
    std::uint64_t a = floor_scale(out.lo, b) + 1;
    for (;; ++a) {
      RationalExponent r(static_cast<std::int64_t>(a), static_cast<std::int64_t>(b));
      if (r >= out.hi) break;
      if (r > out.lo) candidates.insert(r);
    }
  }
  for (const auto& r : candidates) {
    if (!is_unit_at(r)) {
      out.hi = r;
      break;
    }
  }
  if (!is_unit_at(out.lo) || is_unit_at(out.hi)) {
    throw Error(ErrorKind::invalid_argument,
                "test-ideal chain disagrees with the nu bracket; raise e_max or the window");
  }
  return out;
}

}  // namespace cartierlab
