#pragma once

#include "cscforge/divisor.hpp"
#include "cscforge/rational_function.hpp"
#include "cscforge/roots.hpp"

#include <string>
#include <vector>

namespace cscforge {

struct Pole {
  Complex location;
  Complex residue;
};

struct ExactnessReport {
  bool is_third_kind = false;             ///< every pole, infinity included, is simple
  bool residues_all_real_nonzero = false;  ///< residues at all poles are real (and nonzero)
  bool real_part_exact = false;            ///< Re(omega) has a single-valued primitive off the poles
  bool has_poles = false;
  std::vector<std::string> diagnostics;

  /// All hypotheses needed to build Phi and the metric.
  bool passes() const { return is_third_kind && residues_all_real_nonzero && real_part_exact && has_poles; }
};

class MeromorphicOneForm;

/// Validate pole data and build the form.  Throws DuplicatePole or ZeroResidue.
/// An empty pole list with a nonconstant H is a valid object (it just fails
/// the third-kind hypothesis); the zero form throws ZeroForm.
MeromorphicOneForm build_third_kind(std::vector<Pole> poles, ComplexPolynomial exact_part = {});

/// Meromorphic 1-form on the sphere
///     omega = sum_i lambda_i / (z - a_i) dz + dH,
/// stored by its pole/residue data and the polynomial exact part H.  The
/// reduced rational function eta with omega = eta dz is cached at build time,
/// with its numerator cleaned of rounding noise so that cancellations that are
/// exact in theory (residue sums, moments) are exact in the stored data.
class MeromorphicOneForm {
 public:
  const std::vector<Pole>& poles() const { return poles_; }
  const ComplexPolynomial& exact_part() const { return exact_part_; }
  const ComplexRationalFunction& eta() const { return eta_; }
  const ExactnessReport& hypotheses() const { return report_; }

  /// eta(z).  Partial fractions near the poles, the reversed reduced form far
  /// away.  Throws EvalAtPole at a pole.
  Complex eta_at(Complex z) const;

  /// Residue at infinity, derived from eta (never stored).
  InfinityResidue residue_at_infinity() const;

  /// ord_inf(omega): negative for a pole, positive for a zero.
  int order_at_infinity() const { return order_at_infinity_; }

  /// Finite zeros with multiplicities.
  const std::vector<RootCluster>& zeros() const { return zeros_; }

  /// Finite zeros and poles, plus infinity when it is a zero or pole.
  std::vector<SpherePoint> critical_points() const;

  /// Distance from z to the nearest pole (infinity if there are none).
  double distance_to_poles(Complex z) const;

  MeromorphicOneForm negated() const;

  friend MeromorphicOneForm build_third_kind(std::vector<Pole> poles, ComplexPolynomial exact_part);

 private:
  MeromorphicOneForm() = default;

  std::vector<Pole> poles_;
  ComplexPolynomial exact_part_;
  ComplexPolynomial exact_derivative_;
  ComplexRationalFunction eta_;
  ComplexPolynomial reversed_num_;
  ComplexPolynomial reversed_den_;
  double far_radius_ = 1.0;
  int order_at_infinity_ = 0;
  std::vector<RootCluster> zeros_;
  ExactnessReport report_;
};

ExactnessReport check_hypotheses(const MeromorphicOneForm& omega);

/// Zero/pole divisor of omega on the sphere, infinity included.
Divisor divisor_of_form(const MeromorphicOneForm& omega);

/// Real potential with df = omega + conj(omega):
///     f(z) = sum_i lambda_i ln|z - a_i|^2 + 2 Re H(z),
/// normalized with zero additive constant.  Requires real residues.
double potential_f(const MeromorphicOneForm& omega, Complex z);

/// Relative tolerance for treating a residue as real.
inline constexpr double kRealResidueTol = 1e-12;

}  // namespace cscforge
