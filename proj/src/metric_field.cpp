#include "cscforge/metric_field.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace cscforge {

namespace {

const double kLn4 = std::log(4.0);

using ExclusionTest = std::function<bool(Complex)>;

struct SingularSet {
  std::vector<Complex> points;
  std::vector<double> exponents;
};

CurvatureReport sweep(const LogDensityFn& log_rho, const std::function<double(Complex)>& phi_at, double K,
                      const GridSpec& grid, double h, const SingularSet& singular, const CurvatureOptions& options,
                      const ExclusionTest& extra_exclusion, const std::function<double(Complex)>& extra_bound) {
  const double exclusion_radius = options.exclusion_radius;
  CurvatureReport report;
  report.grid = grid;
  report.h = h;
  report.K = K;
  report.exclusion_radius = exclusion_radius;

  const std::vector<Complex> pts = grid.points();
  report.samples.resize(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    CurvatureSample& s = report.samples[i];
    s.z = pts[i];
    double d = std::numeric_limits<double>::infinity();
    for (const Complex& c : singular.points) d = std::min(d, std::abs(pts[i] - c));
    s.excluded = d <= exclusion_radius;
    if (!s.excluded && d <= 2.0 * h) {
      std::ostringstream os;
      os << "stencil at (" << s.z.real() << "," << s.z.imag() << ") reaches a singular point";
      throw Error(ErrorCode::GridTouchesSingularity, os.str());
    }
    if (!s.excluded && extra_exclusion) s.excluded = extra_exclusion(s.z);
  }
  if (options.policy == ExclusionPolicy::Reject) {
    for (const auto& s : report.samples) {
      if (!s.excluded) continue;
      std::ostringstream os;
      os << "grid point (" << s.z.real() << "," << s.z.imag() << ") lies inside the exclusion zone";
      throw Error(ErrorCode::GridTouchesSingularity, os.str());
    }
  }

  parallel_for(report.samples.size(), [&](std::size_t i) {
    CurvatureSample& s = report.samples[i];
    if (s.excluded) return;
    s.rho = std::exp(log_rho(s.z));
    s.phi = phi_at ? phi_at(s.z) : std::numeric_limits<double>::quiet_NaN();
    s.k_est = curvature_estimate(log_rho, s.z, h);
    s.residual = std::abs(s.k_est - K);
    double bound = 0.0;
    for (std::size_t c = 0; c < singular.points.size(); ++c) {
      const double r2 = std::norm(s.z - singular.points[c]);
      bound += std::abs(singular.exponents[c]) / (r2 * r2);
    }
    if (extra_bound) bound += extra_bound(s.z);
    s.unresolved = h * h * bound / s.rho > options.resolution_tol;
  });
  for (const auto& s : report.samples) {
    if (s.excluded) {
      ++report.excluded;
      continue;
    }
    if (s.unresolved) {
      ++report.unresolved;
      continue;
    }
    ++report.evaluated;
    // NaN residuals must surface as failures.
    if (!(s.residual <= report.max_residual)) report.max_residual = std::isnan(s.residual) ? INFINITY : s.residual;
  }
  return report;
}

SingularSet finite_critical_points(const MeromorphicOneForm& omega, int K) {
  SingularSet out;
  for (const auto& z : omega.zeros()) {
    out.points.push_back(z.center);
    out.exponents.push_back(z.multiplicity);
  }
  for (const auto& p : omega.poles()) {
    const double lambda = p.residue.real();
    out.points.push_back(p.location);
    out.exponents.push_back(K == 0 ? lambda - 1.0 : std::abs(lambda) - 1.0);
  }
  return out;
}

}  // namespace

MetricField::MetricField(PhiField phi, int K) : phi_(std::move(phi)), K_(K) {
  if (K < -1 || K > 1) throw Error(ErrorCode::InvalidArgument, "K must be -1, 0 or 1");
}

double MetricField::log_density(Complex z) const {
  const Complex eta = phi_.form().eta_at(z);
  const double s = phi_.logit(z);
  if (K_ == -1 && 2.0 * std::abs(std::tanh(s / 2)) <= 1e-9)
    throw Error(ErrorCode::DegenerateHyperbolicPoint, "Phi = 2 on the K = -1 metric");
  if (eta == Complex{}) return -std::numeric_limits<double>::infinity();
  const double ln_phi = kLn4 - softplus(-s);
  const double ln_rest = kLn4 - softplus(s);
  double ln_den = kLn4;
  if (K_ == 0) ln_den = ln_rest;
  if (K_ == -1) ln_den = kLn4 + std::log(std::abs(std::tanh(s / 2)));
  return log_scale_ + kLn4 + ln_phi + ln_rest - 2.0 * ln_den + 2.0 * std::log(std::abs(eta));
}

double MetricField::density(Complex z) const { return std::exp(log_density(z)); }

MetricField MetricField::with_density_scale(double factor) const {
  MetricField copy = *this;
  copy.log_scale_ += std::log(factor);
  return copy;
}

double metric_density(const MetricField& field, Complex z) { return field.density(z); }

double curvature_estimate(const LogDensityFn& log_rho, Complex z, double h) {
  const double c = log_rho(z);
  const double lap = (log_rho(z + h) + log_rho(z - h) + log_rho(z + Complex(0, h)) + log_rho(z - Complex(0, h)) -
                      4.0 * c) /
                     (h * h);
  return -lap / (2.0 * std::exp(c));
}

CurvatureReport gauss_curvature_fd(const MetricField& field, const GridSpec& grid, double h,
                                   const CurvatureOptions& options) {
  const SingularSet singular = finite_critical_points(field.form(), field.curvature());
  ExclusionTest extra;
  std::function<double(Complex)> extra_bound;
  if (field.curvature() == -1) {
    extra = [&](Complex z) { return std::abs(field.phi().value(z) - 2.0) < options.phi_band; };
    // ln rho ~ -2 ln d near the curve Phi = 2, with d ~ |s| / (2 |eta|).
    extra_bound = [&](Complex z) {
      const double d = std::abs(field.phi().logit(z)) / (2.0 * std::abs(field.form().eta_at(z)));
      return 1.0 / (d * d * d * d);
    };
  }
  return sweep([&](Complex z) { return field.log_density(z); }, [&](Complex z) { return field.phi().value(z); },
               field.curvature(), grid, h, singular, options, extra, extra_bound);
}

CurvatureReport curvature_on_grid(const LogDensityFn& log_rho, double K, const GridSpec& grid, double h,
                                  std::span<const Complex> singular_points, std::span<const double> exponents,
                                  const CurvatureOptions& options) {
  if (exponents.size() != singular_points.size())
    throw Error(ErrorCode::InvalidArgument, "one exponent per singular point is required");
  SingularSet singular{{singular_points.begin(), singular_points.end()}, {exponents.begin(), exponents.end()}};
  return sweep(log_rho, {}, K, grid, h, singular, options, {}, {});
}

std::vector<Complex> hyperbolic_degeneracy_locus(const PhiField& phi, const GridSpec& grid) {
  std::vector<Complex> locus;
  auto logit = [&](Complex z) {
    try {
      return phi.logit(z);
    } catch (const Error&) {
      return std::numeric_limits<double>::quiet_NaN();
    }
  };
  auto bisect = [&](Complex a, Complex b, double fa) {
    for (int it = 0; it < 60; ++it) {
      const Complex m = 0.5 * (a + b);
      const double fm = logit(m);
      if (std::isnan(fm)) return;
      if ((fm > 0) == (fa > 0)) {
        a = m;
        fa = fm;
      } else {
        b = m;
      }
    }
    locus.push_back(0.5 * (a + b));
  };
  for (int j = 0; j < grid.n; ++j) {
    for (int i = 0; i < grid.n; ++i) {
      const Complex z = grid.point(i, j);
      const double fz = logit(z);
      if (std::isnan(fz)) continue;
      if (fz == 0.0) {
        locus.push_back(z);
        continue;
      }
      auto edge = [&](int i2, int j2) {
        if (i2 >= grid.n || j2 >= grid.n) return;
        const Complex nb = grid.point(i2, j2);
        const double fn = logit(nb);
        if (!std::isnan(fn) && fn != 0.0 && (fn > 0) != (fz > 0)) bisect(z, nb, fz);
      };
      edge(i + 1, j);
      edge(i, j + 1);
    }
  }
  return locus;
}

double negation_invariance_check(const MeromorphicOneForm& omega, Complex p0, double phi0,
                                 std::span<const Complex> samples) {
  const MetricField first(solve_phi_closed(omega, p0, phi0), 1);
  const MetricField second(solve_phi_closed(omega.negated(), p0, 4.0 - phi0), 1);
  double worst = 0.0;
  for (const Complex& z : samples) {
    if (omega.distance_to_poles(z) == 0.0) continue;
    const double rho = first.density(z);
    worst = std::max(worst, std::abs(rho - second.density(z)) / std::max(1.0, rho));
  }
  return worst;
}

double negation_invariance_check(const MeromorphicOneForm& omega, Complex p0, double phi0) {
  double r = 1.0;
  for (const auto& p : omega.poles()) r = std::max(r, std::abs(p.location));
  const GridSpec grid{Complex{}, 1.5 * r, 11};
  const std::vector<Complex> pts = grid.points();
  return negation_invariance_check(omega, p0, phi0, pts);
}

}  // namespace cscforge
