#pragma once

#include "cscforge/oneform.hpp"

#include <span>
#include <vector>

namespace cscforge {

/// Solution of
///     4 dPhi / (Phi (4 - Phi)) = omega + conj(omega),   Phi(p0) = Phi0 in (0, 4),
/// in closed form: ln(Phi / (4 - Phi)) = f + A0, so Phi = 4 / (1 + e^{-(f + A0)}).
class PhiField {
 public:
  const MeromorphicOneForm& form() const { return form_; }
  Complex base_point() const { return p0_; }
  double initial_value() const { return phi0_; }
  double offset() const { return a0_; }

  /// s = f + A0 = ln(Phi / (4 - Phi)), the logit of Phi / 4.
  double logit(Complex z) const { return potential_f(form_, z) + a0_; }

  double value(Complex z) const;
  double operator()(Complex z) const { return value(z); }

  /// Same field with A0 shifted by c.
  PhiField shifted(double c) const;

  friend PhiField solve_phi_closed(const MeromorphicOneForm&, Complex, double);
  friend PhiField phi_from_offset(const MeromorphicOneForm&, double);

 private:
  PhiField(MeromorphicOneForm form, Complex p0, double phi0, double a0)
      : form_(std::move(form)), p0_(p0), phi0_(phi0), a0_(a0) {}

  MeromorphicOneForm form_;
  Complex p0_;
  double phi0_;
  double a0_;
};

/// 4 / (1 + e^{-s}) evaluated without overflow for either sign of s.
double logistic4(double s);

/// ln(1 + e^x) without overflow.
double softplus(double x);

/// First point of {1, 2, 1+i} that is not a pole of omega.
Complex default_base_point(const MeromorphicOneForm& omega);

/// Closed-form solution.  Throws BadInitialValue, BasePointIsPole or
/// HypothesesFailed.
PhiField solve_phi_closed(const MeromorphicOneForm& omega, Complex p0, double phi0);
PhiField solve_phi_closed(const MeromorphicOneForm& omega);

/// Field with a prescribed constant A0 (base point chosen by
/// default_base_point, Phi0 derived from A0).
PhiField phi_from_offset(const MeromorphicOneForm& omega, double a0);

/// Continuous extension value of Phi at a pole: 0 for positive residue, 4 for
/// negative.  `pole_index` indexes omega.poles(); the overload taking a
/// SpherePoint also accepts infinity.
double phi_limit_at_pole(const PhiField& field, std::size_t pole_index);
double phi_limit_at_pole(const PhiField& field, const SpherePoint& pole);

struct PathIntegrationOptions {
  double step = 1e-4;             ///< RK4 step in arc length
  double richardson_tol = 1e-6;   ///< max |Phi_h - Phi_{h/2}|
  double min_clearance = 1e-3;    ///< minimum distance from the path to any pole
};

/// Independent oracle for the closed form: integrates
///     dPhi/dt = Phi (4 - Phi) / 4 * 2 Re(eta(gamma(t)) gamma'(t))
/// along the polyline with classical RK4 and a half-step Richardson check.
/// Throws PathTooCloseToPole or StepUnderflow (half-step disagreement).
double integrate_phi_along_path(const MeromorphicOneForm& omega, std::span<const Complex> path, double phi_start,
                                const PathIntegrationOptions& options = {});

/// Closed polygon approximating the circle |z - center| = radius.
std::vector<Complex> circle_path(Complex center, double radius, int segments);

}  // namespace cscforge
