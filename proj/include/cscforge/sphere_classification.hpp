#pragma once

#include "cscforge/metric_field.hpp"
#include "cscforge/oneform.hpp"

#include <span>
#include <vector>

namespace cscforge {

/// The three normal forms of third-kind differentials on the sphere with the
/// divisor patterns
///   simple:        (omega) = -0 - inf                      omega = lambda/z dz
///   unit_residues: (omega) = (alpha-1) 0 - inf - sum P_i     omega = alpha z^{alpha-1} / (z^alpha + 1) dz
///   plus_minus:    (omega) = (alpha-1)(0 + inf) - sum P_i - sum Q_j
///                  omega = alpha (a-1) z^{alpha-1} / ((z^alpha + a)(z^alpha + 1)) dz
/// each up to the coordinate change z = p w.
enum class StandardCase { Simple, UnitResidues, PlusMinus };

struct StandardFormCase {
  StandardCase kind = StandardCase::Simple;
  int alpha = 1;             ///< >= 2 for UnitResidues and PlusMinus
  double residue_lambda = 0; ///< Simple only: Res_0 omega
  Complex a{};               ///< PlusMinus only, a not in {0, 1}
  Complex p{1.0, 0.0};       ///< coordinate change z = p w
};

/// Form in the z coordinate whose pull-back under z = p w is the normal form.
/// Throws InvalidCaseData.
MeromorphicOneForm standard_form(const StandardFormCase& data);

/// Wronskian t' s - t s' of two polynomials.
template <typename T>
Polynomial<T> wronskian(const Polynomial<T>& t, const Polynomial<T>& s) {
  return t.derivative() * s - t * s.derivative();
}

template <typename T>
struct WronskianResult {
  int alpha = 0;
  T mu{};      ///< sigma_0 - omega_0
  T omega0{};  ///< constant term of t
  T sigma0{};  ///< constant term of s
};

/// Decides whether t' s - t s' = alpha mu z^{alpha-1} for monic t, s of equal
/// degree alpha >= 2 with nonzero constant terms.  On success t and s are
/// forced to be z^alpha + omega0 and z^alpha + sigma0; the exact overload
/// re-checks that every middle coefficient is exactly zero.  Throws
/// NotMonomialIdentity, ZeroMu, or InvalidArgument for inputs outside the
/// precondition.
WronskianResult<GaussianRational> wronskian_identity_check(const ExactPolynomial& t, const ExactPolynomial& s);
/// Floating version: coefficients within `tol` (relative to the largest
/// coefficient of the Wronskian) count as zero.
WronskianResult<Complex> wronskian_identity_check(const ComplexPolynomial& t, const ComplexPolynomial& s,
                                                 double tol = 1e-9);

/// Exact normal-form data: the form is determined by (alpha, a, c) with
/// c = p^alpha, so the pole polynomials are t = z^alpha + c and
/// s = z^alpha + a c.
struct ExactStandardForm {
  StandardCase kind = StandardCase::UnitResidues;
  int alpha = 2;
  GaussianRational a{0};
  GaussianRational scale_power{1};  ///< c = p^alpha
};

/// Pole polynomials (t, s) of the exact normal form; s = 1 for UnitResidues.
std::pair<ExactPolynomial, ExactPolynomial> exact_pole_polynomials(const ExactStandardForm& data);

/// Recovers (alpha, a, c) exactly from pole polynomials.  For UnitResidues
/// pass s = 1.
ExactStandardForm normalize_exact(const ExactPolynomial& t, const ExactPolynomial& s);

/// Recovers the case data of a form matching one of the three patterns: the
/// pole polynomials are rebuilt by Vieta (near-zero coefficients cleaned at
/// 1e-9), checked against the Wronskian identity, and p is the canonical
/// alpha-th root of the constant term of t (argument in [0, 2 pi / alpha)).
/// Throws PatternMismatch or ResidueMismatch.
StandardFormCase normalize_form(const MeromorphicOneForm& omega);

enum class FootballVariant { Generic, Integer };

/// Spherical football: the K = 1 metric with two cone points (0 and infinity)
/// of angle 2 pi alpha.
///   Generic: rho(w) = 4 alpha^2 |w|^{2(alpha-1)} / (1 + |w|^{2 alpha})^2
///   Integer: rho(w) = 4 alpha^2 |w|^{2(alpha-1)} / (1 + |w^alpha + b|^2)^2
class FootballMetric {
 public:
  double alpha() const { return alpha_; }
  FootballVariant variant() const { return variant_; }
  double b() const { return b_; }

  double log_density(Complex w) const;
  double density(Complex w) const { return std::exp(log_density(w)); }

  friend FootballMetric football_metric(double alpha, FootballVariant variant, double b);

 private:
  FootballMetric(double alpha, FootballVariant variant, double b) : alpha_(alpha), variant_(variant), b_(b) {}
  double alpha_;
  FootballVariant variant_;
  double b_;
};

/// Throws InvalidAlpha.  b is ignored for the generic variant.
FootballMetric football_metric(double alpha, FootballVariant variant, double b = 0.0);

struct FootballReduction {
  Complex p;               ///< z = p w
  FootballMetric metric;
  double scale_lambda = 0; ///< e^{A0/2}
  double b_imag = 0;       ///< imaginary part of b before taking the real part
};

/// Coordinate change taking the K = 1 metric of a normal form (p = 1) with
/// constant A0 to a football.  Throws DegenerateA or InvalidCaseData.
FootballReduction reduce_to_football(const StandardFormCase& data, double a0);

/// max over the samples of |rho_pipeline(p w) |p|^2 - rho_football(w)| /
/// max(1, rho_football(w)); samples at poles of the pulled-back form are
/// skipped.
double reduction_discrepancy(const StandardFormCase& data, double a0, std::span<const Complex> w_samples);

}  // namespace cscforge
