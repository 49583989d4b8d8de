#include "cscforge/singularity_analysis.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <cmath>
#include <limits>
#include <numbers>

namespace cscforge {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double angle_or_nan(bool known, double angle) { return known ? angle : std::numeric_limits<double>::quiet_NaN(); }

/// Log-density of the metric read in a chart centred at `point`.
LogDensityFn chart_log_density(const MetricField& field, const SpherePoint& point) {
  if (point.is_infinity()) {
    return [&field](Complex w) { return field.log_density(1.0 / w) - 4.0 * std::log(std::abs(w)); };
  }
  const Complex c = point.value();
  return [&field, c](Complex zeta) { return field.log_density(c + zeta); };
}

double distance_to_other_critical(const MeromorphicOneForm& omega, const SpherePoint& point) {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& q : omega.critical_points()) {
    const double dq = chart_distance(point, q);
    if (dq > 1e-12) d = std::min(d, dq);
  }
  return d;
}

}  // namespace

PredictedDivisor predicted_divisor(const MeromorphicOneForm& omega, int K) {
  if (!omega.hypotheses().passes())
    throw Error(ErrorCode::HypothesesFailed, "omega is not a third-kind differential with real residues");
  if (K < -1 || K > 1) throw Error(ErrorCode::InvalidArgument, "K must be -1, 0 or 1");

  PredictedDivisor out;
  auto add_zero = [&](SpherePoint where, int order) {
    CriticalPoint cp;
    cp.where = where;
    cp.kind = CriticalKind::Zero;
    cp.order = order;
    cp.predicted_angle = kTwoPi * (order + 1);
    out.points.push_back(cp);
  };
  auto add_pole = [&](SpherePoint where, double residue) {
    CriticalPoint cp;
    cp.where = where;
    cp.kind = CriticalKind::Pole;
    cp.order = 1;
    cp.residue = residue;
    cp.conical = !(K == 0 && residue < 0);
    cp.predicted_angle = angle_or_nan(cp.conical, kTwoPi * std::abs(residue));
    cp.smooth = cp.conical && std::abs(std::abs(residue) - 1.0) <= 1e-12;
    out.points.push_back(cp);
  };

  for (const auto& z : omega.zeros()) add_zero(SpherePoint(z.center), z.multiplicity);
  for (const auto& p : omega.poles()) add_pole(SpherePoint(p.location), p.residue.real());
  if (omega.order_at_infinity() > 0) add_zero(SpherePoint::infinity(), omega.order_at_infinity());
  if (omega.order_at_infinity() == -1) add_pole(SpherePoint::infinity(), omega.residue_at_infinity().residue.real());

  std::vector<DivisorPoint> weights;
  for (const auto& cp : out.points) {
    if (!cp.conical) {
      out.non_conical.push_back(cp.where);
      continue;
    }
    const double w = cp.kind == CriticalKind::Zero ? static_cast<double>(cp.order) : std::abs(cp.residue) - 1.0;
    if (cp.smooth || w == 0.0) continue;
    weights.push_back({cp.where, w});
  }
  out.divisor = Divisor(std::move(weights));
  return out;
}

PredictedDivisor predicted_divisor(const MetricField& field) {
  PredictedDivisor out = predicted_divisor(field.form(), field.curvature());
  if (field.curvature() != -1) return out;
  for (auto& cp : out.points) {
    if (cp.kind != CriticalKind::Zero) continue;
    // Phi extends continuously to infinity; sample it far out.
    const Complex at = cp.where.is_infinity() ? Complex(1e8, 0) : cp.where.value();
    if (std::abs(field.phi().value(at) - 2.0) <= 1e-9) {
      cp.degenerate = true;
      cp.predicted_angle = std::numeric_limits<double>::quiet_NaN();
    }
  }
  std::vector<DivisorPoint> weights;
  for (const auto& d : out.divisor.points()) {
    bool keep = true;
    for (const auto& cp : out.points)
      if (cp.degenerate && cp.where == d.where) keep = false;
    if (keep) weights.push_back(d);
  }
  out.divisor = Divisor(std::move(weights));
  return out;
}

std::vector<double> default_radii(const MeromorphicOneForm& omega, const SpherePoint& point) {
  const double upper = std::min(1e-3, 0.25 * distance_to_other_critical(omega, point));
  const double lower = upper * 1e-2;
  std::vector<double> radii;
  for (int k = 0; k < 8; ++k) radii.push_back(lower * std::pow(upper / lower, k / 7.0));
  return radii;
}

ConeAngleReport fit_cone_angle(const LogDensityFn& chart_log_rho, std::span<const double> radii) {
  ConeAngleReport rep;
  rep.fit_radii.assign(radii.begin(), radii.end());
  constexpr int kAngles = 64;
  std::vector<double> x;
  for (double r : radii) {
    double acc = 0.0;
    for (int k = 0; k < kAngles; ++k) acc += 0.5 * chart_log_rho(std::polar(r, kTwoPi * (k + 0.5) / kAngles));
    rep.profile.push_back(acc / kAngles);
    x.push_back(std::log(r));
  }
  const auto n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += rep.profile[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (rep.profile[i] - my);
    syy += (rep.profile[i] - my) * (rep.profile[i] - my);
  }
  rep.slope = sxx > 0 ? sxy / sxx : std::numeric_limits<double>::quiet_NaN();
  const double ss_res = std::max(0.0, syy - rep.slope * sxy);
  // Flat profiles count as slope-0 power laws.
  rep.regression_r2 = 1.0 - ss_res / std::max(syy, n * kProfileNoise * kProfileNoise);
  rep.fitted_angle = kTwoPi * (rep.slope + 1.0);
  rep.conical = std::isfinite(rep.slope) && rep.regression_r2 >= kConicalR2 && rep.fitted_angle > 0.0;
  return rep;
}

ConeAngleReport estimate_cone_angle(const MetricField& field, const SpherePoint& point, std::span<const double> radii) {
  if (radii.empty()) throw Error(ErrorCode::InvalidArgument, "no radii given");
  const double rmax = *std::max_element(radii.begin(), radii.end());
  if (rmax >= distance_to_other_critical(field.form(), point))
    throw Error(ErrorCode::AnnulusContainsSingularity, "fit annulus reaches another zero or pole");

  ConeAngleReport rep = fit_cone_angle(chart_log_density(field, point), radii);
  rep.point = point;
  rep.predicted_angle = kTwoPi;  // regular point unless it is a zero or pole
  const PredictedDivisor pred = predicted_divisor(field);
  for (const auto& cp : pred.points)
    if (chart_distance(cp.where, point) <= 1e-9) rep.predicted_angle = cp.predicted_angle;
  return rep;
}

ConeAngleReport estimate_cone_angle(const MetricField& field, const SpherePoint& point) {
  std::vector<double> radii = default_radii(field.form(), point);
  if (field.curvature() != 0) {
    const LogDensityFn log_rho = chart_log_density(field, point);
    for (int iter = 0; iter < 40; ++iter) {
      const double r = radii.back();
      double acc = 0.0;
      for (int k = 0; k < 16; ++k) acc += std::exp(log_rho(std::polar(r, kTwoPi * (k + 0.5) / 16)));
      if (acc / 16 * r * r <= kMaxIntrinsicArea) break;
      for (double& x : radii) x *= 0.5;
    }
  }
  return estimate_cone_angle(field, point, radii);
}

namespace {

/// Smooth step: 0 for x <= 0, 1 for x >= 1, C-infinity in between.
double smooth_step(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / x);
  const double b = std::exp(-1.0 / (1.0 - x));
  return a / (a + b);
}

struct Bump {
  Complex center;
  double radius;
  /// 1 inside radius/2, 0 outside radius.
  double weight(Complex z) const { return smooth_step((radius - std::abs(z - center)) / (0.5 * radius)); }
};

struct Rule {
  int angles;
  double panel;
};

// 16-point Gauss-Legendre on [-1, 1].
constexpr std::array<double, 8> kGlNodes = {0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
                                            0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
                                            0.9445750230732326, 0.9894009349916499};
constexpr std::array<double, 8> kGlWeights = {0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
                                              0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
                                              0.0622535239386479, 0.0271524594117541};

/// int_{-inf}^{t_top} int_0^{2pi} g(t, theta) dtheta dt for an integrand that
/// decays geometrically as t -> -inf.
double log_polar_integral(const std::function<double(double, double)>& g, double t_top, const Rule& rule) {
  double total = 0.0;
  int quiet = 0;
  const double dtheta = kTwoPi / rule.angles;
  for (int panel = 0; panel < 4000; ++panel) {
    const double hi = t_top - panel * rule.panel;
    const double mid = hi - 0.5 * rule.panel;
    const double half = 0.5 * rule.panel;
    double panel_sum = 0.0;
    for (std::size_t k = 0; k < kGlNodes.size(); ++k) {
      for (double sign : {-1.0, 1.0}) {
        const double t = mid + sign * half * kGlNodes[k];
        double ring = 0.0;
        for (int j = 0; j < rule.angles; ++j) ring += g(t, dtheta * (j + 0.5));
        panel_sum += kGlWeights[k] * half * ring * dtheta;
      }
    }
    total += panel_sum;
    if (std::abs(panel_sum) <= 1e-16 * std::abs(total) && hi < t_top - 10.0) {
      if (++quiet >= 4) break;
    } else {
      quiet = 0;
    }
  }
  return total;
}

double sphere_area_with(const LogDensityFn& log_rho, const std::vector<Bump>& bumps, const Rule& rule) {
  auto outside_weight = [&](Complex z) {
    double w = 1.0;
    for (const auto& b : bumps) w -= b.weight(z);
    return w;
  };

  // |z| < 1 in log-polar coordinates about the origin.
  double area = log_polar_integral(
      [&](double t, double th) {
        const Complex z = std::polar(std::exp(t), th);
        const double w = outside_weight(z);
        return w <= 0.0 ? 0.0 : w * std::exp(log_rho(z) + 2.0 * t);
      },
      0.0, rule);
  // |z| > 1 in the chart w = 1/z: rho(1/w) / |w|^4 times the log-polar Jacobian |w|^2.
  area += log_polar_integral(
      [&](double t, double th) {
        const Complex z = 1.0 / std::polar(std::exp(t), th);
        const double w = outside_weight(z);
        return w <= 0.0 ? 0.0 : w * std::exp(log_rho(z) - 2.0 * t);
      },
      0.0, rule);
  for (const auto& b : bumps) {
    area += log_polar_integral(
        [&](double t, double th) {
          const Complex z = b.center + std::polar(std::exp(t), th);
          const double w = b.weight(z);
          return w <= 0.0 ? 0.0 : w * std::exp(log_rho(z) + 2.0 * t);
        },
        std::log(b.radius), rule);
  }
  return area;
}

}  // namespace

AreaEstimate sphere_area(const LogDensityFn& log_rho, std::span<const Complex> singular_points) {
  std::vector<Complex> pts(singular_points.begin(), singular_points.end());
  const bool origin_singular = std::any_of(pts.begin(), pts.end(), [](Complex c) { return std::abs(c) < 1e-12; });
  std::vector<Bump> bumps;
  for (const Complex& c : pts) {
    if (std::abs(c) < 1e-12) continue;
    double d = std::numeric_limits<double>::infinity();
    for (const Complex& o : pts)
      if (o != c) d = std::min(d, std::abs(o - c));
    if (origin_singular) d = std::min(d, std::abs(c));
    bumps.push_back({c, std::min(0.4 * d, 0.5 * std::max(1.0, std::abs(c)))});
  }
  const double fine = sphere_area_with(log_rho, bumps, Rule{256, 0.25});
  const double coarse = sphere_area_with(log_rho, bumps, Rule{128, 0.5});
  return {fine, std::abs(fine - coarse)};
}

GaussBonnetReport gauss_bonnet_check(const MetricField& field) {
  if (field.curvature() != 1)
    throw Error(ErrorCode::NonConicalSingularityPresent,
                "a K = 0 or K = -1 metric on the sphere has non-conical singularities");
  const PredictedDivisor pred = predicted_divisor(field);
  std::vector<Complex> singular;
  for (const auto& cp : pred.points)
    if (cp.where.is_finite()) singular.push_back(cp.where.value());
  const AreaEstimate area = sphere_area([&](Complex z) { return field.log_density(z); }, singular);

  GaussBonnetReport rep;
  rep.chi = 2;
  rep.deg_d = pred.divisor.degree();
  rep.total_area = area.area;
  rep.area_error_estimate = area.error_estimate;
  rep.K = 1;
  rep.expected = kTwoPi * (rep.chi + rep.deg_d);
  rep.residual = std::abs(rep.K * rep.total_area - rep.expected);
  return rep;
}

}  // namespace cscforge
