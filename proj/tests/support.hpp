#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cartierlab/polyring.hpp"

namespace cartierlab::testing {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi) {
    return std::uniform_int_distribution<std::uint64_t>(lo, hi)(engine_);
  }
  bool coin() { return uniform(0, 1) == 1; }
  template <typename T>
  const T& pick(const std::vector<T>& items) {
    return items[uniform(0, items.size() - 1)];
  }

 private:
  std::mt19937_64 engine_;
};

inline Monomial random_monomial(Rng& rng, std::size_t nvars, std::uint32_t max_exp) {
  std::vector<std::uint32_t> exps(nvars);
  for (auto& a : exps) a = static_cast<std::uint32_t>(rng.uniform(0, max_exp));
  return Monomial(std::move(exps));
}

/// Up to max_terms random terms with per-variable exponents <= max_exp.
inline Polynomial random_poly(Rng& rng, const RingPtr& ring, std::size_t max_terms,
                              std::uint32_t max_exp) {
  std::vector<Term> terms;
  std::size_t k = rng.uniform(0, max_terms);
  const auto p = ring->characteristic();
  for (std::size_t i = 0; i < k; ++i) {
    terms.push_back({random_monomial(rng, ring->num_vars(), max_exp),
                     static_cast<std::uint32_t>(rng.uniform(1, p - 1))});
  }
  return Polynomial::from_terms(ring, std::move(terms));
}

inline Polynomial nonzero_poly(Rng& rng, const RingPtr& ring, std::size_t max_terms,
                               std::uint32_t max_exp) {
  for (;;) {
    auto f = random_poly(rng, ring, max_terms, max_exp);
    if (!f.is_zero()) return f;
  }
}

inline Polynomial P(const RingPtr& ring, const std::string& text) {
  return parse_polynomial(text, ring);
}

}  // namespace cartierlab::testing
