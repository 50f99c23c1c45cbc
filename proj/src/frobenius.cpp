#include "cartierlab/frobenius.hpp"

#include <unordered_map>
#include <utility>
#include <vector>

namespace cartierlab {

namespace {

std::uint64_t frobenius_modulus(const RingPtr& ring, unsigned e) {
  return checked_pow(ring->characteristic(), e);
}

std::uint32_t narrow(std::uint64_t v) { return static_cast<std::uint32_t>(v); }

}  // namespace

Polynomial FrobeniusDecomposition::reconstruct() const {
  Polynomial sum(ring);
  const std::uint64_t q = frobenius_modulus(ring, e);
  for (const auto& [residue, part] : parts) {
    std::vector<Term> terms;
    for (const auto& t : part.terms()) {
      std::vector<std::uint32_t> exps(residue.size());
      for (std::size_t i = 0; i < exps.size(); ++i) {
        std::uint64_t v = std::uint64_t{t.monomial[i]} * q + residue[i];
        if (v > Monomial::max_exponent) throw Error(ErrorKind::overflow, "exponent overflow");
        exps[i] = narrow(v);
      }
      // (c m)^q = c m^q over F_p.
      terms.push_back({Monomial(std::move(exps)), t.coeff});
    }
    sum += Polynomial::from_terms(ring, std::move(terms));
  }
  return sum;
}

FrobeniusDecomposition decompose(const Polynomial& f, unsigned e) {
  if (e == 0) throw Error(ErrorKind::invalid_argument, "decompose requires e >= 1");
  const std::uint64_t q = frobenius_modulus(f.ring(), e);
  std::map<Monomial, std::vector<Term>> grouped;
  const std::size_t n = f.ring()->num_vars();
  for (const auto& t : f.terms()) {
    std::vector<std::uint32_t> res(n), quo(n);
    for (std::size_t i = 0; i < n; ++i) {
      res[i] = narrow(t.monomial[i] % q);
      quo[i] = narrow(t.monomial[i] / q);
    }
    grouped[Monomial(std::move(res))].push_back({Monomial(std::move(quo)), t.coeff});
  }
  FrobeniusDecomposition d{f.ring(), e, {}};
  for (auto& [residue, terms] : grouped) {
    auto part = Polynomial::from_terms(f.ring(), std::move(terms));
    if (!part.is_zero()) d.parts.emplace(residue, std::move(part));
  }
  return d;
}

CartierMap::CartierMap(unsigned e, Polynomial premultiplier, unsigned max_e)
    : e_(e), h_(std::move(premultiplier)) {
  if (e_ == 0) throw Error(ErrorKind::invalid_argument, "Cartier map requires e >= 1");
  if (e_ > max_e) {
    throw Error(ErrorKind::overflow, "Frobenius iteration count " + std::to_string(e_) +
                                         " exceeds the cap " + std::to_string(max_e));
  }
  if (h_.is_zero()) throw Error(ErrorKind::invalid_argument, "premultiplier must be nonzero");
  frobenius_modulus(h_.ring(), e_);
}

Polynomial CartierMap::operator()(const Polynomial& f) const {
  require_same_ring(h_.ring(), f.ring());
  const std::uint64_t q = frobenius_modulus(f.ring(), e_);
  Polynomial hf = h_ * f;
  std::vector<Term> out;
  for (const auto& t : hf.terms()) {
    std::vector<std::uint32_t> quo(t.monomial.size());
    bool top = true;
    for (std::size_t i = 0; i < quo.size() && top; ++i) {
      top = t.monomial[i] % q == q - 1;
      quo[i] = narrow(t.monomial[i] / q);
    }
    if (top) out.push_back({Monomial(std::move(quo)), t.coeff});
  }
  return Polynomial::from_terms(f.ring(), std::move(out));
}

Polynomial cartier_apply(const CartierMap& m, const Polynomial& f) { return m(f); }

CartierMap compose(const CartierMap& first, const CartierMap& then) {
  require_same_ring(first.premultiplier().ring(), then.premultiplier().ring());
  unsigned e = first.e() + then.e();
  std::uint64_t q1 = frobenius_modulus(first.premultiplier().ring(), first.e());
  Polynomial h = power(then.premultiplier(), q1) * first.premultiplier();
  return CartierMap(e, std::move(h));
}

Ideal frobenius_root(const Polynomial& h, unsigned e) {
  auto d = decompose(h, e);
  std::vector<Polynomial> gens;
  gens.reserve(d.parts.size());
  for (auto& [residue, part] : d.parts) gens.push_back(std::move(part));
  return Ideal(h.ring(), std::move(gens));
}

Ideal frobenius_root(const Ideal& ideal, const Polynomial& h, unsigned e) {
  require_same_ring(ideal.ring(), h.ring());
  std::vector<Polynomial> gens;
  for (const auto& g : ideal.generators()) {
    auto d = decompose(h * g, e);
    for (auto& [residue, part] : d.parts) gens.push_back(std::move(part));
  }
  return Ideal(ideal.ring(), std::move(gens));
}

SpanCheckReport span_check(const RingPtr& ring, unsigned e, unsigned d, std::size_t cap) {
  if (ring->num_vars() != 1) {
    throw Error(ErrorKind::invalid_argument, "span_check works in a one-variable ring");
  }
  const std::uint64_t p = ring->characteristic();
  const std::uint64_t q = frobenius_modulus(ring, e);
  const std::uint64_t dim = q * (d + 1);
  std::uint64_t count = 1;
  for (std::uint64_t i = 0; i < dim; ++i) {
    if (count > cap / p) {
      throw Error(ErrorKind::resource_cap, "span_check search space exceeds the cap");
    }
    count *= p;
  }

  auto from_digits = [&](std::uint64_t code, std::uint64_t len) {
    std::vector<Term> terms;
    for (std::uint64_t k = 0; k < len; ++k) {
      auto c = narrow(code % p);
      code /= p;
      if (c != 0) terms.push_back({Monomial(std::vector<std::uint32_t>{narrow(k)}), c});
    }
    return Polynomial::from_terms(ring, std::move(terms));
  };
  auto x_pow = [&](std::uint64_t k) {
    return Polynomial::monomial(ring, Monomial(std::vector<std::uint32_t>{narrow(k)}), 1);
  };
  // Value table of a map on x^0..x^(q-1), flattened to dim coefficients.
  auto encode = [&](const std::vector<Polynomial>& values) -> std::uint64_t {
    std::uint64_t code = 0, scale = 1;
    for (const auto& v : values) {
      std::vector<std::uint32_t> coeffs(d + 1, 0);
      for (const auto& t : v.terms()) {
        if (t.monomial[0] > d) return UINT64_MAX;
        coeffs[t.monomial[0]] = t.coeff;
      }
      for (auto c : coeffs) {
        code += c * scale;
        scale *= p;
      }
    }
    return code;
  };

  SpanCheckReport report;
  std::unordered_map<std::uint64_t, std::uint64_t> realized;
  for (std::uint64_t code = 0; code < count; ++code) {
    Polynomial h = from_digits(code, dim);
    if (h.is_zero()) {
      realized.emplace(0, code);
      ++report.premultipliers_enumerated;
      continue;
    }
    CartierMap m(e, h);
    std::vector<Polynomial> values;
    for (std::uint64_t b = 0; b < q; ++b) values.push_back(m(x_pow(b)));
    auto key = encode(values);
    if (key != UINT64_MAX) realized.emplace(key, code);
    ++report.premultipliers_enumerated;
  }

  report.spans = true;
  for (std::uint64_t code = 0; code < count; ++code) {
    ++report.maps_checked;
    auto it = realized.find(code);
    if (it == realized.end()) {
      report.spans = false;
      break;
    }
    // The map is fixed by its basis values v_b; extend by p^{-e}-linearity
    // x^(aq+b) -> x^a v_b and compare on every monomial of degree < dim.
    std::vector<Polynomial> basis_values;
    std::uint64_t rest = code;
    for (std::uint64_t b = 0; b < q; ++b) {
      basis_values.push_back(from_digits(rest, d + 1));
      for (unsigned k = 0; k <= d; ++k) rest /= p;
    }
    Polynomial h = from_digits(it->second, dim);
    for (std::uint64_t j = 0; j < dim && report.spans; ++j) {
      Polynomial expected = x_pow(j / q) * basis_values[j % q];
      Polynomial actual = h.is_zero() ? Polynomial(ring) : CartierMap(e, h)(x_pow(j));
      report.spans = expected == actual;
    }
    if (!report.spans) break;
  }
  return report;
}

}  // namespace cartierlab
