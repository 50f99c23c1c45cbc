#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cartierlab/groebner.hpp"
#include "cartierlab/polyring.hpp"
#include "cartierlab/testideal.hpp"

namespace cartierlab {

/// How the cover ring S = R[z]/(z^n - f) is modelled.
enum class CoverModel {
  /// f is a variable x_i of a polynomial base: S = F_p[..., z, ...] with
  /// x_i = z^n, so S is again a polynomial ring.
  coordinate,
  /// S = F_p[base variables, z] / (z^n - f).
  presentation,
};

/// Element sum_i coords[i] * z^i of S with coefficients in the base ring.
struct CoverElement {
  std::vector<Polynomial> coords;
};

struct CoverOptions {
  /// Name of the cover variable; picked automatically when empty.
  std::string variable;
  /// Skip the shape check that guarantees z^n - f is irreducible.
  bool assume_irreducible = false;
};

/// Kummer cover z^n = f of a base R (a polynomial ring or a hypersurface
/// quotient), with gcd(n, p) = 1.
class KummerCover {
 public:
  KummerCover(AmbientRing base, unsigned n, Polynomial f, CoverOptions options = {});

  const AmbientRing& base() const noexcept { return base_; }
  unsigned degree() const noexcept { return n_; }
  const Polynomial& branch() const noexcept { return f_; }
  CoverModel model() const noexcept { return model_; }
  const std::string& variable() const noexcept { return variable_; }
  const RingPtr& cover_ring() const noexcept { return cover_ring_; }

  /// S as an ambient ring. Throws unsupported when S is not a hypersurface
  /// (presentation model over a quotient base).
  const AmbientRing& cover_ambient() const;
  /// z as an element of the cover ring.
  Polynomial generator() const;

  /// R -> S.
  Polynomial embed(const Polynomial& r) const;
  /// Coordinates of a cover-ring polynomial on the basis 1, z, ..., z^(n-1).
  CoverElement to_element(const Polynomial& s) const;
  Polynomial from_element(const CoverElement& s) const;
  CoverElement element(std::vector<Polynomial> coords) const;
  CoverElement multiply(const CoverElement& a, const CoverElement& b) const;

 private:
  AmbientRing base_;
  unsigned n_;
  Polynomial f_;
  CoverModel model_;
  std::string variable_;
  std::size_t coordinate_index_ = 0;
  RingPtr cover_ring_;
  std::optional<AmbientRing> cover_ambient_;
};

/// Trace of multiplication by s on the free basis 1, z, ..., z^(n-1).
Polynomial field_trace(const KummerCover& cover, const CoverElement& s);

struct RamificationDivisor {
  /// z in the cover ring.
  Polynomial element;
  unsigned multiplicity = 0;
};

/// Ram = (n - 1) div(z).
RamificationDivisor ramification_divisor(const KummerCover& cover);

/// Pullback of t*div(g) without subtracting Ram:
///   g == f       -> (S, z, t n)
///   g coprime f  -> (S, g, t)
/// Anything else is unsupported.
PrincipalPair pullback_pair(const KummerCover& cover, const PrincipalPair& pair,
                            const GroebnerOptions& options = {});

/// d^(-k) * I for an ideal I of an ambient ring and an element d.
class FractionalIdeal {
 public:
  /// Divides d out of I while possible.
  FractionalIdeal(AmbientRing ambient, Ideal numerator, Polynomial denominator, unsigned k,
                  const GroebnerOptions& options = {});
  /// The ordinary ideal I (k = 0).
  FractionalIdeal(AmbientRing ambient, Ideal numerator);

  const AmbientRing& ambient() const noexcept { return ambient_; }
  const Ideal& numerator() const noexcept { return numerator_; }
  const Polynomial& denominator() const noexcept { return denominator_; }
  unsigned exponent() const noexcept { return k_; }

  /// "(g1, g2)" or "(g1, g2)/(d)^k", numerator as its reduced basis.
  std::string to_string(const GroebnerOptions& options = {}) const;

 private:
  AmbientRing ambient_;
  Ideal numerator_;
  Polynomial denominator_;
  unsigned k_;
};

bool fractional_contains(const FractionalIdeal& outer, const FractionalIdeal& inner,
                         const GroebnerOptions& options = {});
bool fractional_equal(const FractionalIdeal& a, const FractionalIdeal& b,
                      const GroebnerOptions& options = {});

/// Phi(F_* M) ⊆ M for M = d^(-k) I, via Phi(F_* d^(k(p-1)) I) ⊆ I.
bool is_phi_stable(const FractionalIdeal& module, const GroebnerOptions& options = {});

/// Image under the field trace of a fractional ideal z^(-k) I of S. The
/// result lives in the base with denominator f.
FractionalIdeal trace(const KummerCover& cover, const FractionalIdeal& on_cover,
                      const GroebnerOptions& options = {});

struct TransformReport {
  FractionalIdeal lhs;
  FractionalIdeal rhs;
  bool equal = false;
};

/// Compares Tr(tau(omega_S; pi^* Gamma)) with tau(omega_R; Gamma), where
/// omega_S = z^(-(n-1)) S and omega_R = R. Polynomial base only.
TransformReport verify_tau_transform(const KummerCover& cover, const PrincipalPair& pair,
                                     const TauOptions& options = {});

struct TraceImage {
  FractionalIdeal ideal;
  bool phi_stable = false;
};

/// J = Tr(z^(-(n-1)) S) inside omega_R, with its Phi-stability check.
TraceImage trace_image(const KummerCover& cover, const GroebnerOptions& options = {});

/// tau(omega_R) ⊆ Tr(z^(-(n-1)) S).
bool verify_containment_tau_in_image(const KummerCover& cover, const TauOptions& options = {});

/// Compares Tr(J(S; pi^* Delta - Ram)) with J(R; Delta) for Delta = t div(g), g
/// a monomial, using the monomial multiplier oracle on both sides. Coordinate
/// covers only.
TransformReport verify_multiplier_transform(const KummerCover& cover, const PrincipalPair& pair,
                                            const GroebnerOptions& options = {});

struct TwistedRootPresentation {
  RingPtr ring;
  Polynomial alpha;
  /// alpha^n + f alpha + f.
  Polynomial relation;
  /// alpha + 1.
  Polynomial unit_witness;
  /// alpha^n + f (alpha + 1) lies in (relation), so n div(alpha) = div(f) + div(alpha + 1).
  bool relation_identity = false;
  /// 1 ∈ (relation, alpha + 1), so alpha + 1 is a unit of R[alpha]/(relation).
  bool witness_is_unit = false;
};

/// Adjoins a root alpha of x^n + f x + f to the ring of f.
TwistedRootPresentation twisted_root_presentation(const Polynomial& f, unsigned n,
                                                  const GroebnerOptions& options = {});

}  // namespace cartierlab
