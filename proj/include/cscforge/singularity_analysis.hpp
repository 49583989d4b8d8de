#pragma once

#include "cscforge/divisor.hpp"
#include "cscforge/metric_field.hpp"

#include <optional>
#include <span>
#include <vector>

namespace cscforge {

enum class CriticalKind { Zero, Pole };

/// A zero or pole of omega together with the singular behaviour of the
/// metric predicted there.
struct CriticalPoint {
  SpherePoint where;
  CriticalKind kind = CriticalKind::Zero;
  int order = 0;     ///< multiplicity of a zero; 1 for a pole
  double residue = 0.0;  ///< poles only
  double predicted_angle = 0.0;  ///< radians; NaN when no angle is asserted
  bool conical = true;           ///< false for K = 0 poles with negative residue
  bool smooth = false;           ///< angle exactly 2 pi (|Res| = 1)
  bool degenerate = false;       ///< K = -1 zero with Phi = 2
};

struct PredictedDivisor {
  Divisor divisor;                    ///< conical points with weight angle/2pi - 1, weight 0 omitted
  std::vector<CriticalPoint> points;  ///< every zero and pole, smooth ones included
  std::vector<SpherePoint> non_conical;
};

/// Singular angles predicted for the metric built from omega with curvature K:
/// 2 pi (ord + 1) at zeros, 2 pi |Res| at poles; for K = 0 a pole of negative
/// residue is a non-conical singularity.  Throws HypothesesFailed.
PredictedDivisor predicted_divisor(const MeromorphicOneForm& omega, int K);

/// Same, additionally flagging K = -1 zeros at which Phi = 2 as degenerate
/// (no angle asserted).
PredictedDivisor predicted_divisor(const MetricField& field);

struct ConeAngleReport {
  SpherePoint point;
  double predicted_angle = 0.0;
  double fitted_angle = 0.0;
  double slope = 0.0;  ///< d(u)/d(ln r) with u = (1/2) ln rho averaged over the circle
  std::vector<double> fit_radii;
  std::vector<double> profile;  ///< u(r) per radius
  double regression_r2 = 0.0;
  bool conical = false;
};

/// 8 radii log-spaced over two decades, [1e-5, 1e-3], scaled down when
/// another critical point is closer than 4e-3 (in the chart of the point).
std::vector<double> default_radii(const MeromorphicOneForm& omega, const SpherePoint& point);

/// Least-squares fit of u(r) = (1/2) ln rho against ln r, where u is averaged
/// over 64 angular samples per radius, in the coordinate `chart_log_rho` that
/// is centred at the point.  fitted angle = 2 pi (slope + 1).  r^2 is computed
/// against max(spread, n kProfileNoise^2) so a flat profile counts as a
/// slope-0 power law.
ConeAngleReport fit_cone_angle(const LogDensityFn& chart_log_rho, std::span<const double> radii);

/// Measured cone angle of the metric at a finite point or at infinity (read
/// in the chart w = 1/z with conformal factor 1/|w|^4).  Throws
/// AnnulusContainsSingularity if the largest radius reaches another zero or
/// pole.
ConeAngleReport estimate_cone_angle(const MetricField& field, const SpherePoint& point, std::span<const double> radii);
/// Default radii, halved while rho r^2 on the outer circle exceeds
/// kMaxIntrinsicArea (K != 0 only), so the curvature correction
/// u(r) - u_cone(r) ~ -K rho r^2 / 4 stays below the fit noise.
ConeAngleReport estimate_cone_angle(const MetricField& field, const SpherePoint& point);

/// Minimum r^2 for a fit to count as a power law.
inline constexpr double kConicalR2 = 0.999;
/// Floor on the profile spread used in r^2 (u is in units of ln rho / 2).
inline constexpr double kProfileNoise = 1e-3;
/// Bound on rho r^2 at the outer fit radius.
inline constexpr double kMaxIntrinsicArea = 1e-5;

struct AreaEstimate {
  double area = 0.0;
  double error_estimate = 0.0;  ///< difference against a half-resolution rule
};

/// Integral of rho over the whole sphere.  The plane is split at |z| = 1 with
/// the outside integrated in the chart w = 1/z; both halves use log-polar
/// coordinates.  Every finite singular point other than the origin is cut
/// out with a smooth partition of unity and integrated in its own log-polar
/// coordinates, so all integrands are smooth and decay geometrically.
AreaEstimate sphere_area(const LogDensityFn& log_rho, std::span<const Complex> singular_points);

struct GaussBonnetReport {
  int chi = 2;
  double deg_d = 0.0;
  double total_area = 0.0;
  double area_error_estimate = 0.0;
  int K = 1;
  double expected = 0.0;  ///< 2 pi (chi + deg D)
  double residual = 0.0;  ///< |K area - 2 pi (chi + deg D)|
  bool passed() const { return residual < 0.01 * std::abs(expected); }
};

/// Total curvature check for a K = 1 metric.  K = 0 and K = -1 metrics on
/// the sphere always carry non-conical singularities: NonConicalSingularityPresent.
GaussBonnetReport gauss_bonnet_check(const MetricField& field);

}  // namespace cscforge
