#include "cscforge/phi_solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace cscforge {

double softplus(double x) { return x > 0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

double logistic4(double s) {
  if (s > 0) return 4.0 / (1.0 + std::exp(-s));
  const double e = std::exp(s);
  return 4.0 * e / (1.0 + e);
}

double PhiField::value(Complex z) const { return logistic4(logit(z)); }

PhiField PhiField::shifted(double c) const {
  const double a0 = a0_ + c;
  return PhiField(form_, p0_, logistic4(potential_f(form_, p0_) + a0), a0);
}

Complex default_base_point(const MeromorphicOneForm& omega) {
  for (Complex c : {Complex(1, 0), Complex(2, 0), Complex(1, 1)})
    if (omega.distance_to_poles(c) > 0) return c;
  // All three candidates are poles.
  return Complex(1, 2);
}

PhiField solve_phi_closed(const MeromorphicOneForm& omega, Complex p0, double phi0) {
  if (!(phi0 > 0.0 && phi0 < 4.0)) throw Error(ErrorCode::BadInitialValue, "Phi0 must lie in (0, 4)");
  if (!omega.hypotheses().passes())
    throw Error(ErrorCode::HypothesesFailed, "omega is not a third-kind differential with real residues");
  if (omega.distance_to_poles(p0) == 0.0) throw Error(ErrorCode::BasePointIsPole, "base point is a pole");
  const double a0 = std::log(phi0 / (4.0 - phi0)) - potential_f(omega, p0);
  return PhiField(omega, p0, phi0, a0);
}

PhiField solve_phi_closed(const MeromorphicOneForm& omega) {
  return solve_phi_closed(omega, default_base_point(omega), 2.0);
}

PhiField phi_from_offset(const MeromorphicOneForm& omega, double a0) {
  if (!omega.hypotheses().passes())
    throw Error(ErrorCode::HypothesesFailed, "omega is not a third-kind differential with real residues");
  const Complex p0 = default_base_point(omega);
  return PhiField(omega, p0, logistic4(potential_f(omega, p0) + a0), a0);
}

double phi_limit_at_pole(const PhiField& field, std::size_t pole_index) {
  const auto& poles = field.form().poles();
  if (pole_index >= poles.size()) throw Error(ErrorCode::InvalidArgument, "pole index out of range");
  return poles[pole_index].residue.real() > 0 ? 0.0 : 4.0;
}

double phi_limit_at_pole(const PhiField& field, const SpherePoint& pole) {
  const MeromorphicOneForm& omega = field.form();
  if (pole.is_infinity()) {
    if (omega.order_at_infinity() != -1) throw Error(ErrorCode::InvalidArgument, "infinity is not a simple pole");
    return omega.residue_at_infinity().residue.real() > 0 ? 0.0 : 4.0;
  }
  for (std::size_t i = 0; i < omega.poles().size(); ++i)
    if (std::abs(omega.poles()[i].location - pole.value()) <= kRootIdentityTol * std::max(1.0, std::abs(pole.value())))
      return phi_limit_at_pole(field, i);
  throw Error(ErrorCode::InvalidArgument, "point is not a pole of omega");
}

namespace {

double segment_distance(Complex a, Complex b, Complex p) {
  const Complex d = b - a;
  const double len2 = std::norm(d);
  if (len2 == 0.0) return std::abs(p - a);
  const double t = std::clamp(((p - a) * std::conj(d)).real() / len2, 0.0, 1.0);
  return std::abs(a + t * d - p);
}

double rk4_polyline(const MeromorphicOneForm& omega, std::span<const Complex> path, double phi, double step) {
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    const Complex a = path[k];
    const Complex d = path[k + 1] - a;
    const double len = std::abs(d);
    if (len == 0.0) continue;
    const Complex u = d / len;
    const auto n = static_cast<long>(std::ceil(len / step));
    const double h = len / static_cast<double>(n);
    auto rhs = [&](double t, double y) { return y * (4.0 - y) / 4.0 * 2.0 * (omega.eta_at(a + t * u) * u).real(); };
    for (long i = 0; i < n; ++i) {
      const double t = static_cast<double>(i) * h;
      const double k1 = rhs(t, phi);
      const double k2 = rhs(t + h / 2, phi + h / 2 * k1);
      const double k3 = rhs(t + h / 2, phi + h / 2 * k2);
      const double k4 = rhs(t + h, phi + h * k3);
      phi += h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
    }
  }
  return phi;
}

}  // namespace

double integrate_phi_along_path(const MeromorphicOneForm& omega, std::span<const Complex> path, double phi_start,
                                const PathIntegrationOptions& options) {
  if (!(phi_start > 0.0 && phi_start < 4.0)) throw Error(ErrorCode::BadInitialValue, "Phi_start must lie in (0, 4)");
  for (std::size_t k = 0; k + 1 < path.size(); ++k)
    for (const auto& p : omega.poles())
      if (segment_distance(path[k], path[k + 1], p.location) < options.min_clearance)
        throw Error(ErrorCode::PathTooCloseToPole, "path passes within the clearance radius of a pole");
  if (path.size() == 1)
    for (const auto& p : omega.poles())
      if (std::abs(path[0] - p.location) < options.min_clearance)
        throw Error(ErrorCode::PathTooCloseToPole, "path passes within the clearance radius of a pole");

  const double coarse = rk4_polyline(omega, path, phi_start, options.step);
  const double fine = rk4_polyline(omega, path, phi_start, options.step / 2);
  if (!(std::abs(coarse - fine) <= options.richardson_tol))
    throw Error(ErrorCode::StepUnderflow, "RK4 half-step check failed; the step is too coarse for this path");
  return fine;
}

std::vector<Complex> circle_path(Complex center, double radius, int segments) {
  std::vector<Complex> out;
  out.reserve(static_cast<std::size_t>(segments) + 1);
  for (int k = 0; k < segments; ++k)
    out.push_back(center + std::polar(radius, 2 * std::numbers::pi * k / segments));
  out.push_back(out.front());
  return out;
}

}  // namespace cscforge
