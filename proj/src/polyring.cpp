#include "cartierlab/polyring.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <numeric>
#include <utility>

namespace cartierlab {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid_argument";
    case ErrorKind::ring_mismatch: return "ring_mismatch";
    case ErrorKind::overflow: return "overflow";
    case ErrorKind::parse_error: return "parse_error";
    case ErrorKind::unknown_variable: return "unknown_variable";
    case ErrorKind::resource_cap: return "resource_cap";
    case ErrorKind::not_stabilized: return "not_stabilized";
    case ErrorKind::unsupported: return "unsupported";
    case ErrorKind::io_error: return "io_error";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// PrimeField

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint64_t p) {
  if (p < 2 || p > (std::uint64_t{1} << 31) - 1 || !is_prime(p)) {
    throw Error(ErrorKind::invalid_argument,
                "characteristic must be a prime in [2, 2^31-1], got " + std::to_string(p));
  }
  p_ = static_cast<value_type>(p);
}

PrimeField::value_type PrimeField::reduce(std::int64_t v) const noexcept {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return static_cast<value_type>(r);
}

PrimeField::value_type PrimeField::pow(value_type a, std::uint64_t k) const noexcept {
  value_type result = 1 % p_;
  value_type base = a;
  while (k > 0) {
    if (k & 1) result = mul(result, base);
    base = mul(base, base);
    k >>= 1;
  }
  return result;
}

PrimeField::value_type PrimeField::inv(value_type a) const {
  if (a % p_ == 0) throw Error(ErrorKind::invalid_argument, "inverse of zero in F_p");
  return pow(a, p_ - 2);
}

// ---------------------------------------------------------------------------
// Ring

Ring::Ring(PrimeField field, std::vector<std::string> variables)
    : field_(field), variables_(std::move(variables)) {
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    const auto& name = variables_[i];
    bool valid = !name.empty() &&
                 (std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_');
    for (char ch : name) {
      valid = valid && (std::isalnum(static_cast<unsigned char>(ch)) || ch == '_');
    }
    if (!valid) throw Error(ErrorKind::invalid_argument, "invalid variable name '" + name + "'");
    for (std::size_t j = 0; j < i; ++j) {
      if (variables_[j] == name) {
        throw Error(ErrorKind::invalid_argument, "duplicate variable name '" + name + "'");
      }
    }
  }
}

std::optional<std::size_t> Ring::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    if (variables_[i] == name) return i;
  }
  return std::nullopt;
}

RingPtr make_ring(std::uint64_t p, std::vector<std::string> variables) {
  return std::make_shared<const Ring>(PrimeField(p), std::move(variables));
}

bool same_ring(const RingPtr& a, const RingPtr& b) noexcept {
  return a == b || (a && b && *a == *b);
}

void require_same_ring(const RingPtr& a, const RingPtr& b) {
  if (!same_ring(a, b)) throw Error(ErrorKind::ring_mismatch, "operands live in different rings");
}

// ---------------------------------------------------------------------------
// Monomial

Monomial::Monomial(std::vector<std::uint32_t> exponents) : exps_(std::move(exponents)) {
  for (auto e : exps_) {
    if (e > max_exponent) throw Error(ErrorKind::overflow, "exponent exceeds 2^31-1");
    degree_ += e;
  }
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r;
  r.exps_.resize(exps_.size());
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    std::uint64_t s = std::uint64_t{exps_[i]} + other.exps_[i];
    if (s > max_exponent) throw Error(ErrorKind::overflow, "exponent overflow in monomial product");
    r.exps_[i] = static_cast<std::uint32_t>(s);
  }
  r.degree_ = degree_ + other.degree_;
  return r;
}

Monomial Monomial::operator/(const Monomial& other) const {
  Monomial r;
  r.exps_.resize(exps_.size());
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] = exps_[i] - other.exps_[i];
  r.degree_ = degree_ - other.degree_;
  return r;
}

bool Monomial::divides(const Monomial& other) const noexcept {
  if (degree_ > other.degree_) return false;
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] > other.exps_[i]) return false;
  }
  return true;
}

bool Monomial::coprime(const Monomial& other) const noexcept {
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] != 0 && other.exps_[i] != 0) return false;
  }
  return true;
}

Monomial Monomial::lcm(const Monomial& other) const {
  Monomial r;
  r.exps_.resize(exps_.size());
  for (std::size_t i = 0; i < exps_.size(); ++i) {
    r.exps_[i] = std::max(exps_[i], other.exps_[i]);
    r.degree_ += r.exps_[i];
  }
  return r;
}

std::size_t Monomial::hash() const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ull;
  for (auto e : exps_) h = (h ^ e) * 0x100000001b3ull + (h >> 7);
  return h;
}

std::strong_ordering grevlex_compare(const Monomial& a, const Monomial& b) noexcept {
  if (a.degree() != b.degree()) return a.degree() <=> b.degree();
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return b[i] <=> a[i];
  }
  return std::strong_ordering::equal;
}

// ---------------------------------------------------------------------------
// Polynomial

namespace {

bool grevlex_greater(const Term& a, const Term& b) {
  return grevlex_compare(a.monomial, b.monomial) == std::strong_ordering::greater;
}

// Merge two canonical term vectors, b scaled by `scale`.
std::vector<Term> merge_terms(const PrimeField& F, const std::vector<Term>& a,
                              const std::vector<Term>& b, PrimeField::value_type scale) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    auto c = grevlex_compare(a[i].monomial, b[j].monomial);
    if (c == std::strong_ordering::greater) {
      out.push_back(a[i++]);
    } else if (c == std::strong_ordering::less) {
      auto v = F.mul(b[j].coeff, scale);
      if (v != 0) out.push_back({b[j].monomial, v});
      ++j;
    } else {
      auto v = F.add(a[i].coeff, F.mul(b[j].coeff, scale));
      if (v != 0) out.push_back({a[i].monomial, v});
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  for (; j < b.size(); ++j) {
    auto v = F.mul(b[j].coeff, scale);
    if (v != 0) out.push_back({b[j].monomial, v});
  }
  return out;
}

}  // namespace

Polynomial::Polynomial(RingPtr ring) : ring_(std::move(ring)) {
  if (!ring_) throw Error(ErrorKind::invalid_argument, "null ring descriptor");
}

Polynomial::Polynomial(RingPtr ring, std::vector<Term> canonical_terms)
    : ring_(std::move(ring)), terms_(std::move(canonical_terms)) {}

Polynomial Polynomial::constant(RingPtr ring, std::int64_t value) {
  Polynomial p(std::move(ring));
  auto c = p.field().reduce(value);
  if (c != 0) p.terms_.push_back({Monomial(p.ring_->num_vars()), c});
  return p;
}

Polynomial Polynomial::variable(RingPtr ring, std::size_t index) {
  if (index >= ring->num_vars()) throw Error(ErrorKind::unknown_variable, "variable index out of range");
  std::vector<std::uint32_t> e(ring->num_vars(), 0);
  e[index] = 1;
  return monomial(std::move(ring), Monomial(std::move(e)), 1);
}

Polynomial Polynomial::variable(RingPtr ring, std::string_view name) {
  auto idx = ring->index_of(name);
  if (!idx) throw Error(ErrorKind::unknown_variable, "unknown variable '" + std::string(name) + "'");
  return variable(std::move(ring), *idx);
}

Polynomial Polynomial::monomial(RingPtr ring, Monomial m, PrimeField::value_type coeff) {
  if (m.size() != ring->num_vars()) {
    throw Error(ErrorKind::ring_mismatch, "monomial length does not match the ring");
  }
  Polynomial p(std::move(ring));
  coeff %= p.field().characteristic();
  if (coeff != 0) p.terms_.push_back({std::move(m), coeff});
  return p;
}

Polynomial Polynomial::from_terms(RingPtr ring, std::vector<Term> terms) {
  const auto& F = ring->field();
  for (auto& t : terms) {
    if (t.monomial.size() != ring->num_vars()) {
      throw Error(ErrorKind::ring_mismatch, "monomial length does not match the ring");
    }
    t.coeff %= F.characteristic();
  }
  std::sort(terms.begin(), terms.end(), grevlex_greater);
  std::vector<Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().monomial == t.monomial) {
      out.back().coeff = F.add(out.back().coeff, t.coeff);
    } else {
      if (!out.empty() && out.back().coeff == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().coeff == 0) out.pop_back();
  return Polynomial(std::move(ring), std::move(out));
}

bool Polynomial::is_constant() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.is_one());
}

bool Polynomial::is_unit() const noexcept { return !terms_.empty() && is_constant(); }

std::uint64_t Polynomial::total_degree() const noexcept {
  return terms_.empty() ? 0 : terms_.front().monomial.degree();
}

PrimeField::value_type Polynomial::constant_term() const noexcept {
  if (terms_.empty() || !terms_.back().monomial.is_one()) return 0;
  return terms_.back().coeff;
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& t : r.terms_) t.coeff = field().neg(t.coeff);
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  require_same_ring(ring_, other.ring_);
  terms_ = merge_terms(field(), terms_, other.terms_, 1);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  require_same_ring(ring_, other.ring_);
  terms_ = merge_terms(field(), terms_, other.terms_, field().neg(1));
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  require_same_ring(a.ring_, b.ring_);
  if (a.is_zero() || b.is_zero()) return Polynomial(a.ring_);
  const Polynomial& small = a.size() <= b.size() ? a : b;
  const Polynomial& large = a.size() <= b.size() ? b : a;
  // Each shifted copy of `large` stays sorted; merge them pairwise.
  std::vector<std::vector<Term>> rows;
  rows.reserve(small.size());
  for (const auto& t : small.terms_) rows.push_back(large.times_term(t.monomial, t.coeff).terms_);
  while (rows.size() > 1) {
    std::vector<std::vector<Term>> next;
    next.reserve((rows.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < rows.size(); i += 2) {
      next.push_back(merge_terms(a.field(), rows[i], rows[i + 1], 1));
    }
    if (rows.size() % 2 == 1) next.push_back(std::move(rows.back()));
    rows = std::move(next);
  }
  return Polynomial(a.ring_, std::move(rows.front()));
}

Polynomial& Polynomial::operator*=(const Polynomial& other) { return *this = *this * other; }

Polynomial Polynomial::scaled(PrimeField::value_type c) const {
  c %= field().characteristic();
  if (c == 0) return Polynomial(ring_);
  Polynomial r = *this;
  for (auto& t : r.terms_) t.coeff = field().mul(t.coeff, c);
  return r;
}

Polynomial Polynomial::times_term(const Monomial& m, PrimeField::value_type c) const {
  c %= field().characteristic();
  if (c == 0) return Polynomial(ring_);
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) out.push_back({t.monomial * m, field().mul(t.coeff, c)});
  return Polynomial(ring_, std::move(out));
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  return scaled(field().inv(terms_.front().coeff));
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  return same_ring(a.ring_, b.ring_) && a.terms_ == b.terms_;
}

std::string Polynomial::to_string() const { return emit(*this); }

Polynomial power(const Polynomial& a, std::uint64_t k, std::size_t max_terms) {
  Polynomial result = Polynomial::constant(a.ring(), 1);
  if (k == 0) return result;
  if (a.is_zero()) return a;
  if (a.size() == 1) {
    const auto& t = a.leading_term();
    std::vector<std::uint32_t> e(t.monomial.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
      std::uint64_t v = std::uint64_t{t.monomial[i]} * k;
      if (t.monomial[i] != 0 && (v / t.monomial[i] != k || v > Monomial::max_exponent)) {
        throw Error(ErrorKind::overflow, "exponent overflow in power");
      }
      e[i] = static_cast<std::uint32_t>(v);
    }
    return Polynomial::monomial(a.ring(), Monomial(std::move(e)), a.field().pow(t.coeff, k));
  }
  Polynomial base = a;
  for (;;) {
    if (k & 1) {
      result *= base;
      if (result.size() > max_terms) throw Error(ErrorKind::resource_cap, "power exceeds the term cap");
    }
    k >>= 1;
    if (k == 0) break;
    base *= base;
    if (base.size() > max_terms) throw Error(ErrorKind::resource_cap, "power exceeds the term cap");
  }
  return result;
}

Polynomial derivative(const Polynomial& a, std::size_t var) {
  std::vector<Term> out;
  for (const auto& t : a.terms()) {
    auto e = t.monomial[var];
    if (e == 0) continue;
    std::vector<std::uint32_t> exps(t.monomial.exponents().begin(), t.monomial.exponents().end());
    exps[var] -= 1;
    out.push_back({Monomial(std::move(exps)), a.field().mul(t.coeff, a.field().reduce(e))});
  }
  return Polynomial::from_terms(a.ring(), std::move(out));
}

Polynomial map_monomials(const Polynomial& a, const RingPtr& target,
                         const std::function<Monomial(const Monomial&)>& map) {
  if (a.ring()->characteristic() != target->characteristic()) {
    throw Error(ErrorKind::ring_mismatch, "cannot move a polynomial across characteristics");
  }
  std::vector<Term> out;
  out.reserve(a.size());
  for (const auto& t : a.terms()) out.push_back({map(t.monomial), t.coeff});
  return Polynomial::from_terms(target, std::move(out));
}

Polynomial change_ring(const Polynomial& a, const RingPtr& target,
                       std::span<const std::size_t> var_map) {
  if (var_map.size() != a.ring()->num_vars()) {
    throw Error(ErrorKind::invalid_argument, "variable map has the wrong length");
  }
  return map_monomials(a, target, [&](const Monomial& m) {
    std::vector<std::uint32_t> e(target->num_vars(), 0);
    for (std::size_t i = 0; i < m.size(); ++i) {
      std::uint64_t s = std::uint64_t{e[var_map[i]]} + m[i];
      if (s > Monomial::max_exponent) throw Error(ErrorKind::overflow, "exponent overflow");
      e[var_map[i]] = static_cast<std::uint32_t>(s);
    }
    return Monomial(std::move(e));
  });
}

std::optional<Polynomial> divide_exact(const Polynomial& a, const Polynomial& b) {
  require_same_ring(a.ring(), b.ring());
  if (b.is_zero()) throw Error(ErrorKind::invalid_argument, "division by zero polynomial");
  const auto& F = a.field();
  const auto& lb = b.leading_term();
  auto inv_lc = F.inv(lb.coeff);
  Polynomial rem = a;
  std::vector<Term> quotient;
  while (!rem.is_zero()) {
    const auto& lt = rem.leading_term();
    if (!lb.monomial.divides(lt.monomial)) return std::nullopt;
    Monomial m = lt.monomial / lb.monomial;
    auto c = F.mul(lt.coeff, inv_lc);
    quotient.push_back({m, c});
    rem -= b.times_term(m, c);
  }
  return Polynomial::from_terms(a.ring(), std::move(quotient));
}

// ---------------------------------------------------------------------------
// Parsing and emission

namespace {

class Parser {
 public:
  Parser(std::string_view text, const RingPtr& ring) : text_(text), ring_(ring) {}

  Polynomial parse() {
    Polynomial result(ring_);
    skip_ws();
    bool negate = false;
    if (peek() == '-') {
      negate = true;
      ++pos_;
    }
    Polynomial t = parse_term();
    result = negate ? -t : t;
    for (;;) {
      skip_ws();
      char c = peek();
      if (c == '\0') break;
      if (c != '+' && c != '-') fail("expected '+' or '-'");
      ++pos_;
      Polynomial next = parse_term();
      if (c == '+') result += next;
      else result -= next;
    }
    return result;
  }

 private:
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  std::uint64_t parse_uint() {
    skip_ws();
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected an unsigned integer");
    std::uint64_t v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      auto d = static_cast<std::uint64_t>(peek() - '0');
      if (v > (std::numeric_limits<std::uint64_t>::max() - d) / 10) fail("integer literal too large");
      v = v * 10 + d;
      ++pos_;
    }
    return v;
  }

  Polynomial parse_factor() {
    skip_ws();
    std::size_t start = pos_;
    char c = peek();
    if (!(std::isalpha(static_cast<unsigned char>(c)) || c == '_')) fail("expected a variable");
    while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') ++pos_;
    std::string_view name = text_.substr(start, pos_ - start);
    auto idx = ring_->index_of(name);
    if (!idx) {
      throw Error(ErrorKind::unknown_variable, "unknown variable '" + std::string(name) +
                                                   "' at position " + std::to_string(start));
    }
    std::uint64_t exp = 1;
    skip_ws();
    if (peek() == '^') {
      ++pos_;
      exp = parse_uint();
      if (exp > Monomial::max_exponent) fail("exponent too large");
    }
    std::vector<std::uint32_t> e(ring_->num_vars(), 0);
    e[*idx] = static_cast<std::uint32_t>(exp);
    return Polynomial::monomial(ring_, Monomial(std::move(e)), 1);
  }

  Polynomial parse_term() {
    skip_ws();
    Polynomial term(ring_);
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      std::uint64_t v = parse_uint();
      term = Polynomial::constant(ring_, static_cast<std::int64_t>(v % ring_->characteristic()));
    } else {
      term = parse_factor();
    }
    for (;;) {
      skip_ws();
      if (peek() != '*') break;
      ++pos_;
      term *= parse_factor();
    }
    return term;
  }

  std::string_view text_;
  const RingPtr& ring_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, const RingPtr& ring) {
  return Parser(text, ring).parse();
}

std::string emit(const Polynomial& p) {
  if (p.is_zero()) return "0";
  const auto& vars = p.ring()->variables();
  std::string out;
  bool first = true;
  for (const auto& t : p.terms()) {
    if (!first) out += " + ";
    first = false;
    std::string factors;
    for (std::size_t i = 0; i < t.monomial.size(); ++i) {
      auto e = t.monomial[i];
      if (e == 0) continue;
      if (!factors.empty()) factors += '*';
      factors += vars[i];
      if (e != 1) factors += '^' + std::to_string(e);
    }
    if (factors.empty()) {
      out += std::to_string(t.coeff);
    } else if (t.coeff == 1) {
      out += factors;
    } else {
      out += std::to_string(t.coeff) + '*' + factors;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// RationalExponent

RationalExponent::RationalExponent(std::int64_t numerator, std::int64_t denominator) {
  if (denominator <= 0) throw Error(ErrorKind::invalid_argument, "denominator must be positive");
  if (numerator < 0) throw Error(ErrorKind::invalid_argument, "exponent must be nonnegative");
  auto g = std::gcd(numerator, denominator);
  num_ = numerator / g;
  den_ = denominator / g;
}

RationalExponent RationalExponent::parse(std::string_view text) {
  auto parse_int = [&](std::string_view s, std::size_t offset) -> std::int64_t {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    if (b == e) throw ParseError("expected an integer", offset + b);
    std::int64_t v = 0;
    for (std::size_t i = b; i < e; ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) {
        throw ParseError("expected a nonnegative integer", offset + i);
      }
      if (v > (std::numeric_limits<std::int64_t>::max() - 9) / 10) {
        throw ParseError("integer too large", offset + i);
      }
      v = v * 10 + (s[i] - '0');
    }
    return v;
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return RationalExponent(parse_int(text, 0), 1);
  auto num = parse_int(text.substr(0, slash), 0);
  auto den = parse_int(text.substr(slash + 1), slash + 1);
  if (den == 0) throw ParseError("zero denominator", slash + 1);
  return RationalExponent(num, den);
}

namespace {

RationalExponent reduced(__int128 n, __int128 d) {
  if (n < 0) throw Error(ErrorKind::invalid_argument, "negative exponent");
  __int128 a = n, b = d;
  while (b != 0) {
    __int128 r = a % b;
    a = b;
    b = r;
  }
  if (a == 0) a = 1;
  n /= a;
  d /= a;
  if (n > std::numeric_limits<std::int64_t>::max() || d > std::numeric_limits<std::int64_t>::max()) {
    throw Error(ErrorKind::overflow, "rational arithmetic overflow");
  }
  return RationalExponent(static_cast<std::int64_t>(n), static_cast<std::int64_t>(d));
}

}  // namespace

RationalExponent RationalExponent::operator+(const RationalExponent& o) const {
  return reduced(static_cast<__int128>(num_) * o.den_ + static_cast<__int128>(o.num_) * den_,
                 static_cast<__int128>(den_) * o.den_);
}

RationalExponent RationalExponent::operator-(const RationalExponent& o) const {
  return reduced(static_cast<__int128>(num_) * o.den_ - static_cast<__int128>(o.num_) * den_,
                 static_cast<__int128>(den_) * o.den_);
}

RationalExponent RationalExponent::operator*(const RationalExponent& o) const {
  return reduced(static_cast<__int128>(num_) * o.num_, static_cast<__int128>(den_) * o.den_);
}

std::strong_ordering operator<=>(const RationalExponent& a, const RationalExponent& b) noexcept {
  __int128 l = static_cast<__int128>(a.num_) * b.den_;
  __int128 r = static_cast<__int128>(b.num_) * a.den_;
  if (l < r) return std::strong_ordering::less;
  if (l > r) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string RationalExponent::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::uint64_t ceil_scale(const RationalExponent& t, std::uint64_t m) {
  unsigned __int128 prod = static_cast<unsigned __int128>(t.numerator()) * m;
  unsigned __int128 r = (prod + static_cast<unsigned __int128>(t.denominator()) - 1) /
                        static_cast<unsigned __int128>(t.denominator());
  if (r > std::numeric_limits<std::uint64_t>::max()) throw Error(ErrorKind::overflow, "ceil_scale overflow");
  return static_cast<std::uint64_t>(r);
}

std::uint64_t floor_scale(const RationalExponent& t, std::uint64_t m) {
  unsigned __int128 prod = static_cast<unsigned __int128>(t.numerator()) * m;
  unsigned __int128 r = prod / static_cast<unsigned __int128>(t.denominator());
  if (r > std::numeric_limits<std::uint64_t>::max()) throw Error(ErrorKind::overflow, "floor_scale overflow");
  return static_cast<std::uint64_t>(r);
}

std::uint64_t checked_pow(std::uint64_t p, unsigned e) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (r > (std::uint64_t{1} << 62) / p) throw Error(ErrorKind::overflow, "p^e overflows");
    r *= p;
  }
  return r;
}

}  // namespace cartierlab
