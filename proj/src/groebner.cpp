#include "cartierlab/groebner.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <optional>
#include <utility>

namespace cartierlab {

// ---------------------------------------------------------------------------
// MonomialOrder

MonomialOrder::MonomialOrder(OrderKind kind, std::vector<std::size_t> permutation)
    : kind_(kind), perm_(std::move(permutation)) {
  std::vector<bool> seen(perm_.size(), false);
  for (std::size_t k = 0; k < perm_.size(); ++k) {
    if (perm_[k] >= perm_.size() || seen[perm_[k]]) {
      throw Error(ErrorKind::invalid_argument, "monomial order permutation is not a permutation");
    }
    seen[perm_[k]] = true;
    identity_ = identity_ && perm_[k] == k;
  }
}

MonomialOrder MonomialOrder::grevlex(std::size_t num_vars) {
  std::vector<std::size_t> p(num_vars);
  std::iota(p.begin(), p.end(), 0);
  return MonomialOrder(OrderKind::grevlex, std::move(p));
}

MonomialOrder MonomialOrder::lex(std::size_t num_vars) {
  std::vector<std::size_t> p(num_vars);
  std::iota(p.begin(), p.end(), 0);
  return MonomialOrder(OrderKind::lex, std::move(p));
}

std::strong_ordering MonomialOrder::compare(const Monomial& a, const Monomial& b) const noexcept {
  if (kind_ == OrderKind::grevlex) {
    if (identity_) return grevlex_compare(a, b);
    if (a.degree() != b.degree()) return a.degree() <=> b.degree();
    for (std::size_t k = perm_.size(); k-- > 0;) {
      auto v = perm_[k];
      if (a[v] != b[v]) return b[v] <=> a[v];
    }
    return std::strong_ordering::equal;
  }
  for (auto v : perm_) {
    if (a[v] != b[v]) return a[v] <=> b[v];
  }
  return std::strong_ordering::equal;
}

// ---------------------------------------------------------------------------
// Working representation: terms sorted descending under a given order.

namespace {

struct WorkPoly {
  std::vector<Term> terms;

  bool empty() const { return terms.empty(); }
  const Term& lt() const { return terms.front(); }
};

class Engine {
 public:
  Engine(const RingPtr& ring, const MonomialOrder& order)
      : ring_(ring), F_(ring->field()), order_(order) {}

  WorkPoly to_work(const Polynomial& p) const {
    WorkPoly w{std::vector<Term>(p.terms().begin(), p.terms().end())};
    if (!(order_ == MonomialOrder::grevlex(order_.num_vars()))) {
      std::sort(w.terms.begin(), w.terms.end(), [&](const Term& a, const Term& b) {
        return order_.compare(a.monomial, b.monomial) == std::strong_ordering::greater;
      });
    }
    return w;
  }

  Polynomial from_work(const WorkPoly& w) const { return Polynomial::from_terms(ring_, w.terms); }

  void make_monic(WorkPoly& w) const {
    if (w.empty()) return;
    auto inv = F_.inv(w.lt().coeff);
    for (auto& t : w.terms) t.coeff = F_.mul(t.coeff, inv);
  }

  // a[from..] - c * m * b
  std::vector<Term> sub_mul(const std::vector<Term>& a, std::size_t from, PrimeField::value_type c,
                            const Monomial& m, std::span<const Term> b) const {
    std::vector<Term> out;
    out.reserve(a.size() - from + b.size());
    auto negc = F_.neg(c);
    std::size_t i = from, j = 0;
    while (i < a.size() && j < b.size()) {
      Monomial bm = b[j].monomial * m;
      auto cmp = order_.compare(a[i].monomial, bm);
      if (cmp == std::strong_ordering::greater) {
        out.push_back(a[i++]);
      } else if (cmp == std::strong_ordering::less) {
        out.push_back({std::move(bm), F_.mul(b[j].coeff, negc)});
        ++j;
      } else {
        auto v = F_.add(a[i].coeff, F_.mul(b[j].coeff, negc));
        if (v != 0) out.push_back({std::move(bm), v});
        ++i;
        ++j;
      }
    }
    for (; i < a.size(); ++i) out.push_back(a[i]);
    for (; j < b.size(); ++j) {
      out.push_back({b[j].monomial * m, F_.mul(b[j].coeff, negc)});
    }
    return out;
  }

  // Full reduction against the polynomials of `basis` selected by `active`.
  WorkPoly reduce(WorkPoly p, const std::vector<WorkPoly>& basis,
                  const std::vector<std::size_t>& active) const {
    std::vector<Term> rem;
    std::vector<Term> cur = std::move(p.terms);
    std::size_t head = 0;
    while (head < cur.size()) {
      const Term& t = cur[head];
      const WorkPoly* divisor = nullptr;
      for (auto idx : active) {
        if (basis[idx].lt().monomial.divides(t.monomial)) {
          divisor = &basis[idx];
          break;
        }
      }
      if (divisor == nullptr) {
        rem.push_back(t);
        ++head;
        continue;
      }
      auto c = F_.mul(t.coeff, F_.inv(divisor->lt().coeff));
      Monomial m = t.monomial / divisor->lt().monomial;
      // The leading terms cancel; drop cur[head] and subtract the tail.
      cur = sub_mul(cur, head + 1, c, m, std::span<const Term>(divisor->terms).subspan(1));
      head = 0;
    }
    return WorkPoly{std::move(rem)};
  }

  WorkPoly spoly(const WorkPoly& f, const WorkPoly& g) const {
    Monomial l = f.lt().monomial.lcm(g.lt().monomial);
    Monomial mf = l / f.lt().monomial;
    Monomial mg = l / g.lt().monomial;
    // f is monic-normalized by the caller; scale g's multiple accordingly.
    WorkPoly fs;
    fs.terms.reserve(f.terms.size());
    auto inv_f = F_.inv(f.lt().coeff);
    for (const auto& t : f.terms) fs.terms.push_back({t.monomial * mf, F_.mul(t.coeff, inv_f)});
    auto c = F_.inv(g.lt().coeff);
    return WorkPoly{sub_mul(fs.terms, 0, c, mg, g.terms)};
  }

  const MonomialOrder& order() const { return order_; }

 private:
  const RingPtr& ring_;
  const PrimeField& F_;
  const MonomialOrder& order_;
};

struct Pair {
  std::size_t i;
  std::size_t j;
  Monomial lcm;
};

}  // namespace

const Term& leading_term(const Polynomial& f, const MonomialOrder& order) {
  if (f.is_zero()) throw Error(ErrorKind::invalid_argument, "leading term of zero polynomial");
  const Term* best = &f.terms().front();
  for (const auto& t : f.terms()) {
    if (order.compare(t.monomial, best->monomial) == std::strong_ordering::greater) best = &t;
  }
  return *best;
}

std::vector<Polynomial> buchberger(std::span<const Polynomial> generators,
                                   const MonomialOrder& order, const GroebnerOptions& options) {
  if (generators.empty()) return {};
  const RingPtr& ring = generators.front().ring();
  for (const auto& g : generators) require_same_ring(ring, g.ring());
  if (order.num_vars() != ring->num_vars()) {
    throw Error(ErrorKind::invalid_argument, "monomial order does not match the ring");
  }
  Engine eng(ring, order);

  std::vector<WorkPoly> basis;
  std::vector<std::size_t> active;
  std::vector<Pair> pairs;

  // Gebauer-Moeller update (Becker-Weispfenning UPDATE).
  auto update = [&](std::size_t h) {
    const Monomial& lth = basis[h].lt().monomial;
    std::vector<Pair> cand;
    for (auto g : active) cand.push_back({h, g, lth.lcm(basis[g].lt().monomial)});
    std::vector<Pair> kept;
    for (std::size_t a = 0; a < cand.size(); ++a) {
      const Pair& p = cand[a];
      bool coprime = lth.coprime(basis[p.j].lt().monomial);
      bool dominated = false;
      if (!coprime) {
        for (std::size_t b = a + 1; b < cand.size() && !dominated; ++b) {
          dominated = cand[b].lcm.divides(p.lcm);
        }
        for (std::size_t b = 0; b < kept.size() && !dominated; ++b) {
          dominated = kept[b].lcm.divides(p.lcm);
        }
      }
      if (!dominated) kept.push_back(p);
    }
    std::vector<Pair> fresh;
    for (auto& p : kept) {
      if (!lth.coprime(basis[p.j].lt().monomial)) fresh.push_back(std::move(p));
    }
    std::vector<Pair> remaining;
    for (auto& p : pairs) {
      bool drop = lth.divides(p.lcm) &&
                  lth.lcm(basis[p.i].lt().monomial) != p.lcm &&
                  lth.lcm(basis[p.j].lt().monomial) != p.lcm;
      if (!drop) remaining.push_back(std::move(p));
    }
    for (auto& p : fresh) remaining.push_back(std::move(p));
    pairs = std::move(remaining);
    std::vector<std::size_t> next_active;
    for (auto g : active) {
      if (!lth.divides(basis[g].lt().monomial)) next_active.push_back(g);
    }
    next_active.push_back(h);
    active = std::move(next_active);
  };

  for (const auto& g : generators) {
    if (g.is_zero()) continue;
    WorkPoly w = eng.to_work(g);
    eng.make_monic(w);
    if (w.lt().monomial.is_one()) {
      return {Polynomial::constant(ring, 1)};
    }
    basis.push_back(std::move(w));
    update(basis.size() - 1);
  }
  if (basis.empty()) return {};

  std::size_t processed = 0;
  while (!pairs.empty()) {
    // Normal selection strategy: smallest lcm first, ties by index.
    std::size_t best = 0;
    for (std::size_t k = 1; k < pairs.size(); ++k) {
      auto c = order.compare(pairs[k].lcm, pairs[best].lcm);
      if (c == std::strong_ordering::less ||
          (c == std::strong_ordering::equal &&
           std::pair(pairs[k].i, pairs[k].j) < std::pair(pairs[best].i, pairs[best].j))) {
        best = k;
      }
    }
    Pair p = std::move(pairs[best]);
    pairs.erase(pairs.begin() + static_cast<std::ptrdiff_t>(best));
    if (++processed > options.spair_cap) {
      throw Error(ErrorKind::resource_cap,
                  "S-pair budget of " + std::to_string(options.spair_cap) + " exhausted");
    }
    WorkPoly s = eng.spoly(basis[p.i], basis[p.j]);
    WorkPoly h = eng.reduce(std::move(s), basis, active);
    if (h.empty()) continue;
    eng.make_monic(h);
    if (h.lt().monomial.is_one()) return {Polynomial::constant(ring, 1)};
    basis.push_back(std::move(h));
    update(basis.size() - 1);
  }

  // Minimalize, then inter-reduce.
  std::vector<std::size_t> minimal;
  for (auto a : active) {
    bool redundant = false;
    for (auto b : active) {
      if (a == b) continue;
      const auto& la = basis[a].lt().monomial;
      const auto& lb = basis[b].lt().monomial;
      if (lb.divides(la) && (la != lb || b < a)) {
        redundant = true;
        break;
      }
    }
    if (!redundant) minimal.push_back(a);
  }
  std::vector<WorkPoly> reduced;
  for (auto a : minimal) {
    std::vector<std::size_t> others;
    for (auto b : minimal) {
      if (b != a) others.push_back(b);
    }
    WorkPoly lead{std::vector<Term>{basis[a].lt()}};
    WorkPoly tail{std::vector<Term>(basis[a].terms.begin() + 1, basis[a].terms.end())};
    WorkPoly rt = eng.reduce(std::move(tail), basis, others);
    lead.terms.insert(lead.terms.end(), rt.terms.begin(), rt.terms.end());
    eng.make_monic(lead);
    reduced.push_back(std::move(lead));
  }
  std::sort(reduced.begin(), reduced.end(), [&](const WorkPoly& a, const WorkPoly& b) {
    return order.compare(a.lt().monomial, b.lt().monomial) == std::strong_ordering::greater;
  });
  std::vector<Polynomial> out;
  out.reserve(reduced.size());
  for (const auto& w : reduced) out.push_back(eng.from_work(w));
  return out;
}

std::vector<Polynomial> buchberger(std::span<const Polynomial> generators,
                                   const GroebnerOptions& options) {
  if (generators.empty()) return {};
  return buchberger(generators, MonomialOrder::grevlex(generators.front().ring()->num_vars()),
                    options);
}

Polynomial normal_form(const Polynomial& f, std::span<const Polynomial> basis,
                       const MonomialOrder& order) {
  Engine eng(f.ring(), order);
  std::vector<WorkPoly> work;
  std::vector<std::size_t> active;
  for (const auto& g : basis) {
    require_same_ring(f.ring(), g.ring());
    if (g.is_zero()) continue;
    active.push_back(work.size());
    work.push_back(eng.to_work(g));
  }
  return eng.from_work(eng.reduce(eng.to_work(f), work, active));
}

Polynomial normal_form(const Polynomial& f, std::span<const Polynomial> basis) {
  return normal_form(f, basis, MonomialOrder::grevlex(f.ring()->num_vars()));
}

// ---------------------------------------------------------------------------
// Ideal

struct Ideal::Cache {
  std::mutex mutex;
  std::optional<std::vector<Polynomial>> basis;
};

Ideal::Ideal(RingPtr ring, std::vector<Polynomial> generators)
    : ring_(std::move(ring)), cache_(std::make_shared<Cache>()) {
  for (auto& g : generators) {
    require_same_ring(ring_, g.ring());
    if (!g.is_zero()) gens_.push_back(std::move(g));
  }
}

Ideal Ideal::unit(RingPtr ring) {
  auto one = Polynomial::constant(ring, 1);
  return Ideal(std::move(ring), {std::move(one)});
}

Ideal Ideal::zero(RingPtr ring) { return Ideal(std::move(ring), {}); }

const std::vector<Polynomial>& Ideal::groebner_basis(const GroebnerOptions& options) const {
  std::lock_guard lock(cache_->mutex);
  if (!cache_->basis) cache_->basis = buchberger(gens_, options);
  return *cache_->basis;
}

bool Ideal::is_unit(const GroebnerOptions& options) const {
  for (const auto& g : gens_) {
    if (g.is_unit()) return true;
  }
  const auto& gb = groebner_basis(options);
  return gb.size() == 1 && gb.front().is_unit();
}

std::vector<std::string> Ideal::generator_strings(const GroebnerOptions& options) const {
  std::vector<std::string> out;
  for (const auto& g : groebner_basis(options)) out.push_back(emit(g));
  return out;
}

std::string Ideal::to_string(const GroebnerOptions& options) const {
  auto gens = generator_strings(options);
  if (gens.empty()) return "(0)";
  std::string s = "(";
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (i) s += ", ";
    s += gens[i];
  }
  return s + ")";
}

bool ideal_contains(const Ideal& ideal, const Polynomial& f, const GroebnerOptions& options) {
  require_same_ring(ideal.ring(), f.ring());
  if (f.is_zero()) return true;
  return normal_form(f, ideal.groebner_basis(options)).is_zero();
}

bool ideal_contains(const Ideal& outer, const Ideal& inner, const GroebnerOptions& options) {
  require_same_ring(outer.ring(), inner.ring());
  for (const auto& g : inner.generators()) {
    if (!ideal_contains(outer, g, options)) return false;
  }
  return true;
}

bool ideal_equal(const Ideal& a, const Ideal& b, const GroebnerOptions& options) {
  require_same_ring(a.ring(), b.ring());
  return a.groebner_basis(options) == b.groebner_basis(options);
}

Ideal ideal_sum(const Ideal& a, const Ideal& b) {
  require_same_ring(a.ring(), b.ring());
  std::vector<Polynomial> gens(a.generators().begin(), a.generators().end());
  gens.insert(gens.end(), b.generators().begin(), b.generators().end());
  return Ideal(a.ring(), std::move(gens));
}

Ideal ideal_product(const Ideal& a, const Ideal& b) {
  require_same_ring(a.ring(), b.ring());
  std::vector<Polynomial> gens;
  for (const auto& f : a.generators()) {
    for (const auto& g : b.generators()) gens.push_back(f * g);
  }
  return Ideal(a.ring(), std::move(gens));
}

Ideal ideal_scale(const Ideal& a, const Polynomial& f) {
  require_same_ring(a.ring(), f.ring());
  std::vector<Polynomial> gens;
  for (const auto& g : a.generators()) gens.push_back(g * f);
  return Ideal(a.ring(), std::move(gens));
}

Ideal ideal_intersection(const Ideal& a, const Ideal& b, const GroebnerOptions& options) {
  require_same_ring(a.ring(), b.ring());
  const auto& ring = a.ring();
  const std::size_t n = ring->num_vars();
  auto vars = ring->variables();
  std::string aux = "_elim";
  while (ring->index_of(aux)) aux += "_";
  vars.push_back(aux);
  auto big = make_ring(ring->characteristic(), std::move(vars));
  std::vector<std::size_t> embed(n);
  std::iota(embed.begin(), embed.end(), 0);

  auto t = Polynomial::variable(big, n);
  auto one_minus_t = Polynomial::constant(big, 1) - t;
  std::vector<Polynomial> gens;
  for (const auto& f : a.generators()) gens.push_back(t * change_ring(f, big, embed));
  for (const auto& g : b.generators()) gens.push_back(one_minus_t * change_ring(g, big, embed));

  std::vector<std::size_t> perm{n};
  for (std::size_t i = 0; i < n; ++i) perm.push_back(i);
  auto gb = buchberger(gens, MonomialOrder(OrderKind::lex, perm), options);

  std::vector<Polynomial> out;
  for (const auto& g : gb) {
    bool free_of_t = std::all_of(g.terms().begin(), g.terms().end(),
                                 [&](const Term& term) { return term.monomial[n] == 0; });
    if (!free_of_t) continue;
    out.push_back(map_monomials(g, ring, [&](const Monomial& m) {
      return Monomial(std::vector<std::uint32_t>(m.exponents().begin(), m.exponents().begin() + n));
    }));
  }
  return Ideal(ring, std::move(out));
}

Ideal parse_ideal(std::string_view text, const RingPtr& ring) {
  std::size_t b = 0, e = text.size();
  auto is_ws = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; };
  while (b < e && is_ws(text[b])) ++b;
  while (e > b && is_ws(text[e - 1])) --e;
  if (b == e || text[b] != '(') throw ParseError("expected '('", b);
  if (text[e - 1] != ')') throw ParseError("expected ')'", e - 1);
  std::string_view body = text.substr(b + 1, e - b - 2);
  std::vector<Polynomial> gens;
  if (body.find_first_not_of(" \t\r\n") == std::string_view::npos) return Ideal(ring, {});
  std::size_t start = 0;
  for (;;) {
    auto comma = body.find(',', start);
    auto piece = body.substr(start, comma == std::string_view::npos ? body.size() - start : comma - start);
    try {
      gens.push_back(parse_polynomial(piece, ring));
    } catch (const ParseError& err) {
      throw ParseError("invalid ideal generator", b + 1 + start + err.position());
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return Ideal(ring, std::move(gens));
}

}  // namespace cartierlab
