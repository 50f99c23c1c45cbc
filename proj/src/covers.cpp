#include "cartierlab/covers.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <utility>

#include "cartierlab/frobenius.hpp"
#include "cartierlab/multoracle.hpp"

namespace cartierlab {

namespace {

std::string fresh_variable(const Ring& ring, std::vector<std::string> preferred) {
  for (int i = 1; i < 1000; ++i) preferred.push_back("z" + std::to_string(i));
  for (const auto& name : preferred) {
    if (!ring.index_of(name)) return name;
  }
  throw Error(ErrorKind::invalid_argument, "no free variable name");
}

bool is_squarefree_monomial(const Polynomial& f) {
  if (f.size() != 1) return false;
  auto exps = f.leading_term().monomial.exponents();
  return std::all_of(exps.begin(), exps.end(), [](std::uint32_t a) { return a <= 1; }) &&
         f.total_degree() >= 1;
}

std::optional<std::size_t> coordinate_of(const Polynomial& f) {
  if (f.size() != 1 || f.total_degree() != 1 || f.leading_term().coeff != 1) return std::nullopt;
  auto exps = f.leading_term().monomial.exponents();
  return static_cast<std::size_t>(std::find(exps.begin(), exps.end(), 1u) - exps.begin());
}

Polynomial z_power(const KummerCover& cover, std::uint64_t k) { return power(cover.generator(), k); }

// Ideal of the base generated by Tr(z^(jn-k) * s * z^i), i < n, for s in gens.
std::vector<Polynomial> trace_generators(const KummerCover& cover, std::span<const Polynomial> gens,
                                         unsigned k, unsigned& j) {
  const unsigned n = cover.degree();
  j = (k + n - 1) / n;
  const unsigned shift = j * n - k;
  std::vector<Polynomial> out;
  for (const auto& g : gens) {
    for (unsigned i = 0; i < n; ++i) {
      auto tr = field_trace(cover, cover.to_element(g * z_power(cover, shift + i)));
      if (!tr.is_zero()) out.push_back(std::move(tr));
    }
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// KummerCover

KummerCover::KummerCover(AmbientRing base, unsigned n, Polynomial f, CoverOptions options)
    : base_(std::move(base)), n_(n), f_(std::move(f)), model_(CoverModel::presentation) {
  require_same_ring(base_.ring(), f_.ring());
  const auto& ring = *base_.ring();
  if (n_ < 2) throw Error(ErrorKind::invalid_argument, "cover degree must be >= 2");
  if (n_ > 64) throw Error(ErrorKind::resource_cap, "cover degree above 64 is not supported");
  if (std::gcd<std::uint64_t>(n_, ring.characteristic()) != 1) {
    throw Error(ErrorKind::invalid_argument, "cover degree must be prime to the characteristic");
  }
  Polynomial reduced = base_.reduce(f_);
  if (reduced.is_zero() || reduced.is_unit()) {
    throw Error(ErrorKind::invalid_argument, "branch element must be a nonzero non-unit");
  }
  if (!options.assume_irreducible && !is_squarefree_monomial(f_)) {
    throw Error(ErrorKind::unsupported,
                "branch element must be a product of distinct variables unless irreducibility is "
                "asserted");
  }
  if (options.variable.empty()) {
    variable_ = fresh_variable(ring, {"z", "u", "v", "w", "s"});
  } else {
    if (ring.index_of(options.variable)) {
      throw Error(ErrorKind::invalid_argument,
                  "cover variable '" + options.variable + "' clashes with a base variable");
    }
    variable_ = options.variable;
  }

  auto vars = ring.variables();
  auto coord = base_.is_quotient() ? std::nullopt : coordinate_of(f_);
  if (coord) {
    model_ = CoverModel::coordinate;
    coordinate_index_ = *coord;
    vars[coordinate_index_] = variable_;
    cover_ring_ = make_ring(ring.characteristic(), vars);
    cover_ambient_ = AmbientRing::polynomial(cover_ring_);
  } else {
    vars.push_back(variable_);
    cover_ring_ = make_ring(ring.characteristic(), vars);
    if (!base_.is_quotient()) {
      cover_ambient_ = AmbientRing::quotient(power(generator(), n_) - embed(f_));
    }
  }
}

const AmbientRing& KummerCover::cover_ambient() const {
  if (!cover_ambient_) {
    throw Error(ErrorKind::unsupported, "cover of a quotient base is not a hypersurface");
  }
  return *cover_ambient_;
}

Polynomial KummerCover::generator() const {
  auto idx = model_ == CoverModel::coordinate ? coordinate_index_ : cover_ring_->num_vars() - 1;
  return Polynomial::variable(cover_ring_, idx);
}

Polynomial KummerCover::embed(const Polynomial& r) const {
  require_same_ring(base_.ring(), r.ring());
  const std::size_t nv = cover_ring_->num_vars();
  const std::size_t i = coordinate_index_;
  const bool coordinate = model_ == CoverModel::coordinate;
  const unsigned n = n_;
  return map_monomials(r, cover_ring_, [&](const Monomial& m) {
    std::vector<std::uint32_t> exps(nv, 0);
    for (std::size_t k = 0; k < m.size(); ++k) exps[k] = m[k];
    if (coordinate) {
      std::uint64_t v = std::uint64_t{m[i]} * n;
      if (v > Monomial::max_exponent) throw Error(ErrorKind::overflow, "exponent overflow");
      exps[i] = static_cast<std::uint32_t>(v);
    }
    return Monomial(std::move(exps));
  });
}

CoverElement KummerCover::to_element(const Polynomial& s) const {
  require_same_ring(cover_ring_, s.ring());
  const auto& base_ring = base_.ring();
  const std::size_t nb = base_ring->num_vars();
  const std::size_t zi = model_ == CoverModel::coordinate ? coordinate_index_ : nb;
  // (residue r, quotient q) -> terms, standing for sum * f^q * z^r.
  std::map<std::pair<unsigned, std::uint32_t>, std::vector<Term>> grouped;
  for (const auto& t : s.terms()) {
    std::uint32_t k = t.monomial[zi];
    std::vector<std::uint32_t> exps(nb);
    for (std::size_t v = 0; v < nb; ++v) exps[v] = t.monomial[v];
    std::uint32_t q = k / n_;
    unsigned r = k % n_;
    if (model_ == CoverModel::coordinate) {
      exps[zi] = q;
      q = 0;
    }
    grouped[{r, q}].push_back({Monomial(std::move(exps)), t.coeff});
  }
  CoverElement out;
  out.coords.assign(n_, Polynomial(base_ring));
  for (auto& [key, terms] : grouped) {
    auto part = Polynomial::from_terms(base_ring, std::move(terms));
    if (key.second > 0) part *= power(f_, key.second);
    out.coords[key.first] += part;
  }
  if (base_.is_quotient()) {
    for (auto& c : out.coords) c = base_.reduce(c);
  }
  return out;
}

Polynomial KummerCover::from_element(const CoverElement& s) const {
  if (s.coords.size() != n_) throw Error(ErrorKind::invalid_argument, "cover element size mismatch");
  Polynomial out(cover_ring_);
  for (unsigned r = 0; r < n_; ++r) {
    if (!s.coords[r].is_zero()) out += embed(s.coords[r]) * z_power(*this, r);
  }
  return out;
}

CoverElement KummerCover::element(std::vector<Polynomial> coords) const {
  if (coords.size() != n_) throw Error(ErrorKind::invalid_argument, "cover element size mismatch");
  for (auto& c : coords) {
    require_same_ring(base_.ring(), c.ring());
    c = base_.reduce(c);
  }
  return CoverElement{std::move(coords)};
}

CoverElement KummerCover::multiply(const CoverElement& a, const CoverElement& b) const {
  if (a.coords.size() != n_ || b.coords.size() != n_) {
    throw Error(ErrorKind::invalid_argument, "cover element size mismatch");
  }
  CoverElement out;
  out.coords.assign(n_, Polynomial(base_.ring()));
  for (unsigned i = 0; i < n_; ++i) {
    if (a.coords[i].is_zero()) continue;
    for (unsigned j = 0; j < n_; ++j) {
      if (b.coords[j].is_zero()) continue;
      Polynomial prod = a.coords[i] * b.coords[j];
      if (i + j < n_) {
        out.coords[i + j] += prod;
      } else {
        out.coords[i + j - n_] += f_ * prod;
      }
    }
  }
  if (base_.is_quotient()) {
    for (auto& c : out.coords) c = base_.reduce(c);
  }
  return out;
}

Polynomial field_trace(const KummerCover& cover, const CoverElement& s) {
  const unsigned n = cover.degree();
  const auto& ring = cover.base().ring();
  Polynomial tr(ring);
  for (unsigned i = 0; i < n; ++i) {
    CoverElement basis;
    basis.coords.assign(n, Polynomial(ring));
    basis.coords[i] = Polynomial::constant(ring, 1);
    tr += cover.multiply(s, basis).coords[i];
  }
  return tr;
}

RamificationDivisor ramification_divisor(const KummerCover& cover) {
  return RamificationDivisor{cover.generator(), cover.degree() - 1};
}

PrincipalPair pullback_pair(const KummerCover& cover, const PrincipalPair& pair,
                            const GroebnerOptions& options) {
  require_same_ring(cover.base().ring(), pair.ambient.ring());
  if (pair.ambient.is_quotient() != cover.base().is_quotient()) {
    throw Error(ErrorKind::ring_mismatch, "pair and cover have different base rings");
  }
  const auto& S = cover.cover_ambient();
  const auto& ring = pair.ambient.ring();
  if (pair.t.is_zero()) return PrincipalPair(S, Polynomial::constant(S.ring(), 1), pair.t);
  if (pair.g.monic() == cover.branch().monic()) {
    return PrincipalPair(S, cover.generator(),
                         pair.t * RationalExponent(static_cast<std::int64_t>(cover.degree())));
  }
  if (!pair.ambient.is_quotient()) {
    Ideal fg(ring, {cover.branch() * pair.g});
    auto meet = ideal_intersection(Ideal(ring, {cover.branch()}), Ideal(ring, {pair.g}), options);
    if (ideal_equal(meet, fg, options)) return PrincipalPair(S, cover.embed(pair.g), pair.t);
  }
  throw Error(ErrorKind::unsupported, "g must equal the branch element or be coprime to it");
}

// ---------------------------------------------------------------------------
// Fractional ideals

FractionalIdeal::FractionalIdeal(AmbientRing ambient, Ideal numerator, Polynomial denominator,
                                 unsigned k, const GroebnerOptions& options)
    : ambient_(std::move(ambient)),
      numerator_(std::move(numerator)),
      denominator_(std::move(denominator)),
      k_(k) {
  require_same_ring(ambient_.ring(), numerator_.ring());
  require_same_ring(ambient_.ring(), denominator_.ring());
  if (ambient_.reduce(denominator_, options).is_zero()) {
    throw Error(ErrorKind::invalid_argument, "fractional ideal denominator must be nonzero");
  }
  numerator_ = ambient_.lift(numerator_);
  if (numerator_.is_zero()) k_ = 0;
  while (k_ > 0) {
    std::vector<Polynomial> candidates;
    if (!ambient_.is_quotient()) {
      candidates = numerator_.groebner_basis(options);
    } else {
      auto w = ambient_.relation()->monic();
      for (const auto& g : numerator_.generators()) {
        if (g.monic() != w) candidates.push_back(g);
      }
    }
    std::vector<Polynomial> divided;
    for (const auto& g : candidates) {
      auto q = divide_exact(g, denominator_);
      if (!q) break;
      divided.push_back(std::move(*q));
    }
    if (divided.size() != candidates.size()) break;
    numerator_ = ambient_.lift(Ideal(ambient_.ring(), std::move(divided)));
    --k_;
  }
  if (k_ == 0) denominator_ = Polynomial::constant(ambient_.ring(), 1);
}

FractionalIdeal::FractionalIdeal(AmbientRing ambient, Ideal numerator)
    : FractionalIdeal(ambient, std::move(numerator), Polynomial::constant(ambient.ring(), 1), 0) {}

std::string FractionalIdeal::to_string(const GroebnerOptions& options) const {
  std::string out = numerator_.to_string(options);
  if (k_ == 0) return out;
  out += "/(" + emit(denominator_) + ")";
  if (k_ > 1) out += "^" + std::to_string(k_);
  return out;
}

bool fractional_contains(const FractionalIdeal& outer, const FractionalIdeal& inner,
                         const GroebnerOptions& options) {
  require_same_ring(outer.ambient().ring(), inner.ambient().ring());
  const auto& ambient = outer.ambient();
  // b^-kb J ⊆ a^-ka I  <=>  a^ka J ⊆ b^kb I.
  Ideal lhs = ideal_scale(inner.numerator(), power(outer.denominator(), outer.exponent()));
  Ideal rhs = ideal_scale(outer.numerator(), power(inner.denominator(), inner.exponent()));
  return ideal_contains(ambient.lift(rhs), ambient.lift(lhs), options);
}

bool fractional_equal(const FractionalIdeal& a, const FractionalIdeal& b,
                      const GroebnerOptions& options) {
  return fractional_contains(a, b, options) && fractional_contains(b, a, options);
}

bool is_phi_stable(const FractionalIdeal& module, const GroebnerOptions& options) {
  const auto& ambient = module.ambient();
  const std::uint64_t p = ambient.ring()->characteristic();
  Polynomial premultiplier = power(module.denominator(), std::uint64_t{module.exponent()} * (p - 1));
  if (ambient.is_quotient()) premultiplier *= power(*ambient.relation(), p - 1);
  if (module.numerator().is_zero()) return true;
  Ideal image = frobenius_root(module.numerator(), premultiplier, 1);
  return ideal_contains(module.numerator(), ambient.lift(image), options);
}

FractionalIdeal trace(const KummerCover& cover, const FractionalIdeal& on_cover,
                      const GroebnerOptions& options) {
  require_same_ring(cover.cover_ring(), on_cover.ambient().ring());
  if (on_cover.exponent() > 0 && on_cover.denominator().monic() != cover.generator()) {
    throw Error(ErrorKind::unsupported, "trace needs a power of the cover variable as denominator");
  }
  unsigned j = 0;
  auto gens = trace_generators(cover, on_cover.numerator().generators(), on_cover.exponent(), j);
  const auto& base = cover.base();
  return FractionalIdeal(base, Ideal(base.ring(), std::move(gens)), cover.branch(), j, options);
}

// ---------------------------------------------------------------------------
// Verifiers

TransformReport verify_tau_transform(const KummerCover& cover, const PrincipalPair& pair,
                                     const TauOptions& options) {
  if (cover.base().is_quotient()) {
    throw Error(ErrorKind::unsupported, "transform check needs a polynomial base");
  }
  const auto& gb = options.groebner;
  auto pulled = pullback_pair(cover, pair, gb);
  TauOptions cover_options = options;
  cover_options.c.reset();
  auto cover_tau = tau(pulled, cover_options).ideal;
  FractionalIdeal omega_twist(cover.cover_ambient(), cover_tau, cover.generator(),
                              cover.degree() - 1, gb);
  auto lhs = trace(cover, omega_twist, gb);
  FractionalIdeal rhs(pair.ambient, tau(pair, options).ideal);
  bool equal = fractional_equal(lhs, rhs, gb);
  return TransformReport{std::move(lhs), std::move(rhs), equal};
}

TraceImage trace_image(const KummerCover& cover, const GroebnerOptions& options) {
  unsigned j = 0;
  std::vector<Polynomial> one{Polynomial::constant(cover.cover_ring(), 1)};
  auto gens = trace_generators(cover, one, cover.degree() - 1, j);
  const auto& base = cover.base();
  FractionalIdeal image(base, Ideal(base.ring(), std::move(gens)), cover.branch(), j, options);
  bool stable = is_phi_stable(image, options);
  return TraceImage{std::move(image), stable};
}

bool verify_containment_tau_in_image(const KummerCover& cover, const TauOptions& options) {
  const auto& base = cover.base();
  PrincipalPair trivial(base, Polynomial::constant(base.ring(), 1), RationalExponent(0));
  FractionalIdeal tau_omega(base, tau(trivial, options).ideal);
  return fractional_contains(trace_image(cover, options.groebner).ideal, tau_omega,
                             options.groebner);
}

TransformReport verify_multiplier_transform(const KummerCover& cover, const PrincipalPair& pair,
                                            const GroebnerOptions& options) {
  if (cover.model() != CoverModel::coordinate) {
    throw Error(ErrorKind::unsupported, "multiplier transform needs a cover along a coordinate");
  }
  require_same_ring(cover.base().ring(), pair.ambient.ring());
  auto data = newton_data(pair.g, pair.t);
  const unsigned n = cover.degree();
  const auto z = cover.generator();
  const std::size_t zi = cover.base().ring()->index_of(emit(cover.branch())).value();

  // Delta_Y = pi^* Delta_X - Ram: coefficient t v_i n - (n - 1) on div(z).
  std::vector<std::uint32_t> exps(data.dimension());
  for (std::size_t j = 0; j < exps.size(); ++j) exps[j] = howald_exponent(data.t, data.v[j]);
  const RationalExponent pulled = data.t * RationalExponent(static_cast<std::int64_t>(data.v[zi] * n));
  const RationalExponent ram(static_cast<std::int64_t>(n - 1));
  unsigned k = 0;
  if (pulled >= ram) {
    exps[zi] = howald_exponent(pulled - ram, 1);
  } else {
    // floor(c) for c = pulled - ram < 0.
    exps[zi] = 0;
    k = static_cast<unsigned>(static_cast<std::int64_t>(n - 1) - pulled.floor());
  }
  Ideal cover_multiplier(cover.cover_ring(),
                         {Polynomial::monomial(cover.cover_ring(), Monomial(std::move(exps)))});
  auto lhs = trace(cover, FractionalIdeal(cover.cover_ambient(), cover_multiplier, z, k, options),
                   options);
  FractionalIdeal rhs(pair.ambient, howald_multiplier(pair.ambient.ring(), data));
  bool equal = fractional_equal(lhs, rhs, options);
  return TransformReport{std::move(lhs), std::move(rhs), equal};
}

TwistedRootPresentation twisted_root_presentation(const Polynomial& f, unsigned n,
                                                  const GroebnerOptions& options) {
  if (f.is_zero() || f.is_unit()) {
    throw Error(ErrorKind::invalid_argument, "f must be a nonzero non-unit");
  }
  if (n < 2) throw Error(ErrorKind::invalid_argument, "n must be >= 2");
  const auto& base = *f.ring();
  auto vars = base.variables();
  vars.push_back(fresh_variable(base, {"alpha", "a"}));
  auto ring = make_ring(base.characteristic(), vars);
  std::vector<std::size_t> var_map(base.num_vars());
  std::iota(var_map.begin(), var_map.end(), 0);
  Polynomial F = change_ring(f, ring, var_map);
  Polynomial alpha = Polynomial::variable(ring, vars.size() - 1);
  Polynomial one = Polynomial::constant(ring, 1);
  Polynomial relation = power(alpha, n) + F * alpha + F;
  Polynomial witness = alpha + one;

  TwistedRootPresentation out{ring, alpha, relation, witness};
  Ideal rel(ring, {relation});
  out.relation_identity =
      normal_form(power(alpha, n) + F * witness, rel.groebner_basis(options)).is_zero();
  out.witness_is_unit = Ideal(ring, {relation, witness}).is_unit(options);
  return out;
}

}  // namespace cartierlab
