#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cartierlab/frobenius.hpp"
#include "cartierlab/groebner.hpp"
#include "cartierlab/polyring.hpp"

namespace cartierlab {

/// Either a polynomial ring A or a hypersurface quotient A/(w). Ideals of the
/// quotient are carried as their preimages in A, so they always contain w.
class AmbientRing {
 public:
  static AmbientRing polynomial(RingPtr ring);
  /// Throws invalid_argument if w is zero or a unit.
  static AmbientRing quotient(Polynomial relation);

  const RingPtr& ring() const noexcept { return ring_; }
  bool is_quotient() const noexcept { return relation_.has_value(); }
  const std::optional<Polynomial>& relation() const noexcept { return relation_; }

  /// (w), or the zero ideal for a polynomial ring.
  Ideal relation_ideal() const;
  /// I + (w).
  Ideal lift(const Ideal& ideal) const;
  /// Reduction modulo w (identity on a polynomial ring).
  Polynomial reduce(const Polynomial& f, const GroebnerOptions& options = {}) const;

 private:
  AmbientRing(RingPtr ring, std::optional<Polynomial> relation)
      : ring_(std::move(ring)), relation_(std::move(relation)) {}

  RingPtr ring_;
  std::optional<Polynomial> relation_;
};

/// The pair (X, t * div(g)).
struct PrincipalPair {
  /// Throws invalid_argument when g is zero in the ambient ring.
  PrincipalPair(AmbientRing ambient, Polynomial g, RationalExponent t);

  AmbientRing ambient;
  Polynomial g;
  RationalExponent t;
};

enum class ExponentScheme {
  /// e-th term (g^ceil(t p^e))^{[1/p^e]}, no premultiplier.
  classical,
  /// e-th term Phi^e(F^e_* c^N g^ceil(t (p^e - 1)) R).
  premultiplied,
};

struct TauOptions {
  ExponentScheme scheme = ExponentScheme::classical;
  /// Premultiplier base c. Default: g on a polynomial ring, g times a
  /// nonvanishing partial derivative of w on a quotient.
  std::optional<Polynomial> c;
  /// Power of c. Default: max(1, ceil(t)).
  std::optional<unsigned> N;
  /// Number of consecutive equal partial sums that declare stability.
  unsigned window = 2;
  unsigned e_max = 10;
  GroebnerOptions groebner;
};

struct TauResult {
  Ideal ideal;
  unsigned stabilized_at_e = 0;
  /// Contribution of each e = 0, 1, ... that was computed.
  std::vector<Ideal> terms;
  /// Partial sums S_0 ⊆ S_1 ⊆ ...
  std::vector<Ideal> partial_sums;
};

class NotStabilizedError : public Error {
 public:
  NotStabilizedError(const std::string& message, std::vector<Ideal> chain)
      : Error(ErrorKind::not_stabilized, message), chain_(std::move(chain)) {}

  const std::vector<Ideal>& chain() const noexcept { return chain_; }

 private:
  std::vector<Ideal> chain_;
};

/// Test ideal of a principal pair on a polynomial ring as the stationary
/// value of the ascending chain of partial sums.
TauResult tau_polynomial(const PrincipalPair& pair, const TauOptions& options = {});

/// Test ideal of a principal pair on A/(w). Every e-term carries the extra
/// premultiplier w^(p^e - 1); the premultiplied scheme is always used.
TauResult tau_quotient(const PrincipalPair& pair, const TauOptions& options = {});

/// Dispatches on the ambient kind.
TauResult tau(const PrincipalPair& pair, const TauOptions& options = {});

/// Largest r with g^r outside (x_1^(p^e), ..., x_n^(p^e)). g(0) must be 0.
std::uint64_t nu_value(const Polynomial& g, unsigned e);

struct FptInterval {
  /// tau(g^lo) = (1) and tau(g^hi) != (1).
  RationalExponent lo;
  RationalExponent hi;
  /// nu_value(g, e) for e = 1..e_max.
  std::vector<std::uint64_t> nu;
};

/// Brackets the F-pure threshold of g using nu_value at e_max, then tries
/// every fraction with denominator <= denominator_bound inside the bracket
/// (smallest first) as a tighter upper endpoint.
FptInterval fpt_search(const Polynomial& g, unsigned e_max, std::uint64_t denominator_bound,
                       const TauOptions& options = {});

}  // namespace cartierlab
