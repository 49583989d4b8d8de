#pragma once

#include "cscforge/grid.hpp"
#include "cscforge/phi_solver.hpp"

#include <functional>
#include <span>
#include <vector>

namespace cscforge {

/// ln(rho) of a conformal density rho |dz|^2.
using LogDensityFn = std::function<double(Complex)>;

/// The metric g = 4 Phi (4 - Phi) / [4 + (K - 1) Phi]^2 |eta|^2 |dz|^2 for
/// K in {-1, 0, 1}.  The log-density is assembled from stable pieces:
///   ln Phi      = ln 4 - softplus(-s)
///   ln(4 - Phi) = ln 4 - softplus(s)
///   |4 - 2 Phi| = 4 |tanh(s / 2)|      (K = -1)
/// where s = f + A0.
class MetricField {
 public:
  MetricField(PhiField phi, int K);

  const PhiField& phi() const { return phi_; }
  const MeromorphicOneForm& form() const { return phi_.form(); }
  int curvature() const { return K_; }

  /// ln rho(z); -inf at zeros of omega.  Throws EvalAtPole at a pole and
  /// DegenerateHyperbolicPoint where K = -1 and |Phi - 2| <= 1e-9.
  double log_density(Complex z) const;
  double density(Complex z) const;

  /// Copy whose density is multiplied by `factor`.  Diagnostic hook used as a
  /// negative control for the verification checks.
  MetricField with_density_scale(double factor) const;

 private:
  PhiField phi_;
  int K_;
  double log_scale_ = 0.0;
};

/// rho(z) for the metric field.
double metric_density(const MetricField& field, Complex z);

/// K_est = -(1 / (2 rho)) * Laplacian(ln rho) with the 5-point stencil of
/// spacing h.
double curvature_estimate(const LogDensityFn& log_rho, Complex z, double h);

enum class ExclusionPolicy {
  Skip,    ///< excluded points are recorded but carry no residual
  Reject,  ///< any excluded grid point raises GridTouchesSingularity
};

struct CurvatureOptions {
  double exclusion_radius = 0.05;  ///< around zeros and poles of omega
  double phi_band = 0.05;          ///< K = -1 only: exclude |Phi - 2| < phi_band
  ExclusionPolicy policy = ExclusionPolicy::Skip;
  /// Points whose a-priori stencil error bound
  ///     h^2 sum_c |e_c| / (|z - c|^4 rho(z))
  /// exceeds this are marked unresolved and left out of max_residual.  e_c is
  /// the exponent of rho ~ |z - c|^{2 e_c} at the singular point c.
  double resolution_tol = 1e-4;
};

struct CurvatureSample {
  Complex z;
  double rho = 0.0;
  double phi = 0.0;
  double k_est = 0.0;
  double residual = 0.0;
  bool excluded = false;    ///< inside an exclusion zone; not evaluated
  bool unresolved = false;  ///< evaluated, but the stencil error bound is too large
};

struct CurvatureReport {
  GridSpec grid;
  double h = 0.0;
  double K = 0.0;
  double exclusion_radius = 0.0;
  double max_residual = 0.0;  ///< max |K_est - K| over evaluated points
  std::size_t evaluated = 0;  ///< points that enter max_residual
  std::size_t excluded = 0;
  std::size_t unresolved = 0;
  std::vector<CurvatureSample> samples;  ///< row-major, matches grid.points()
};

/// Curvature residuals of the pipeline metric on a grid.  Throws
/// GridTouchesSingularity when a stencil would reach a zero or pole (or, with
/// ExclusionPolicy::Reject, when any grid point is excluded).
CurvatureReport gauss_curvature_fd(const MetricField& field, const GridSpec& grid, double h,
                                   const CurvatureOptions& options = {});

/// Same machinery for an arbitrary log-density with expected curvature K and
/// the listed singular points with their density exponents e_c.
CurvatureReport curvature_on_grid(const LogDensityFn& log_rho, double K, const GridSpec& grid, double h,
                                  std::span<const Complex> singular_points, std::span<const double> exponents,
                                  const CurvatureOptions& options = {});

/// Points where the K = -1 metric degenerates (Phi = 2, i.e. f + A0 = 0),
/// located by bisection along grid rows and columns that change sign.
std::vector<Complex> hyperbolic_degeneracy_locus(const PhiField& phi, const GridSpec& grid);

/// max |rho_1 - rho_2| / max(1, rho_1) over the samples, where rho_1 is the
/// K = 1 density of (omega, p0, Phi0) and rho_2 that of (-omega, p0, 4 - Phi0).
/// Samples at poles are skipped.
double negation_invariance_check(const MeromorphicOneForm& omega, Complex p0, double phi0,
                                 std::span<const Complex> samples);

/// Default sample set: an 11 x 11 grid over the square of half-width
/// 1.5 max(1, |a_i|) centred at 0.
double negation_invariance_check(const MeromorphicOneForm& omega, Complex p0, double phi0);

}  // namespace cscforge
