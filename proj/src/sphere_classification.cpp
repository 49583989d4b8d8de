#include "cscforge/sphere_classification.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace cscforge {

namespace {

constexpr double kVietaCleanup = 1e-9;
constexpr double kUnitResidueTol = 1e-9;
constexpr double kPullbackTol = 1e-10;

Complex ipow(Complex w, int n) {
  Complex r{1.0, 0.0};
  for (int k = 0; k < n; ++k) r *= w;
  return r;
}

// Roots of z^alpha = c.
std::vector<Complex> roots_of(Complex c, int alpha) {
  const Complex r0 = canonical_root(c, alpha);
  std::vector<Complex> out;
  for (int k = 0; k < alpha; ++k) out.push_back(r0 * std::polar(1.0, 2.0 * std::numbers::pi * k / alpha));
  return out;
}

// Zero out real or imaginary parts that are rounding noise relative to |c|.
Complex snapped(Complex c) {
  const double m = std::abs(c);
  double re = c.real(), im = c.imag();
  if (std::abs(re) <= kVietaCleanup * m) re = 0.0;
  if (std::abs(im) <= kVietaCleanup * m) im = 0.0;
  return {re, im};
}

bool is_zero_exact(const GaussianRational& c) { return c.is_zero(); }

template <typename T, typename IsZero>
WronskianResult<T> check_identity(const Polynomial<T>& t, const Polynomial<T>& s, IsZero is_zero) {
  const int alpha = t.degree();
  if (alpha < 2 || s.degree() != alpha) throw Error(ErrorCode::InvalidArgument, "t and s must have equal degree >= 2");
  if (!(t.leading() == T(1)) || !(s.leading() == T(1))) throw Error(ErrorCode::InvalidArgument, "t and s must be monic");
  if (is_zero(t.coefficient(0)) || is_zero(s.coefficient(0)))
    throw Error(ErrorCode::InvalidArgument, "t and s must have nonzero constant terms");

  const Polynomial<T> w = wronskian(t, s);
  bool all_zero = true;
  for (int k = 0; k <= w.degree(); ++k) all_zero = all_zero && is_zero(w.coefficient(k));
  if (all_zero) throw Error(ErrorCode::ZeroMu, "t' s - t s' vanishes identically");
  for (int k = 0; k <= w.degree(); ++k) {
    if (k == alpha - 1 || is_zero(w.coefficient(k))) continue;
    std::ostringstream os;
    os << "t' s - t s' has a nonzero coefficient at z^" << k;
    throw Error(ErrorCode::NotMonomialIdentity, os.str());
  }
  if (is_zero(w.coefficient(alpha - 1))) throw Error(ErrorCode::ZeroMu, "mu = 0");

  // Forced shape: t = z^alpha + omega0, s = z^alpha + sigma0.
  for (int k = 1; k < alpha; ++k) {
    if (!is_zero(t.coefficient(k)) || !is_zero(s.coefficient(k)))
      throw std::logic_error("monomial Wronskian with a nonzero middle coefficient");
  }
  WronskianResult<T> out;
  out.alpha = alpha;
  out.omega0 = t.coefficient(0);
  out.sigma0 = s.coefficient(0);
  out.mu = out.sigma0 - out.omega0;
  return out;
}

ComplexPolynomial vieta(const std::vector<Complex>& roots) {
  return cleaned(ComplexPolynomial::from_roots(roots), kVietaCleanup);
}

MeromorphicOneForm unit_standard(int alpha, Complex p) {
  std::vector<Pole> poles;
  for (const Complex& r : roots_of(Complex(-1.0, 0.0), alpha)) poles.push_back({p * r, Complex(1.0, 0.0)});
  return build_third_kind(std::move(poles));
}

}  // namespace

MeromorphicOneForm standard_form(const StandardFormCase& data) {
  const Complex p = data.p;
  if (!(std::isfinite(p.real()) && std::isfinite(p.imag())) || p == Complex{})
    throw Error(ErrorCode::InvalidCaseData, "scale p must be finite and nonzero");
  switch (data.kind) {
    case StandardCase::Simple:
      if (!std::isfinite(data.residue_lambda) || data.residue_lambda == 0.0)
        throw Error(ErrorCode::InvalidCaseData, "residue lambda must be finite and nonzero");
      return build_third_kind({{Complex{}, Complex(data.residue_lambda, 0.0)}});
    case StandardCase::UnitResidues:
      if (data.alpha < 2) throw Error(ErrorCode::InvalidCaseData, "alpha must be >= 2");
      return unit_standard(data.alpha, p);
    case StandardCase::PlusMinus: {
      if (data.alpha < 2) throw Error(ErrorCode::InvalidCaseData, "alpha must be >= 2");
      if (data.a == Complex{} || data.a == Complex(1.0, 0.0) || !std::isfinite(std::abs(data.a)))
        throw Error(ErrorCode::InvalidCaseData, "a must be finite and not in {0, 1}");
      std::vector<Pole> poles;
      for (const Complex& r : roots_of(Complex(-1.0, 0.0), data.alpha)) poles.push_back({p * r, Complex(1.0, 0.0)});
      for (const Complex& r : roots_of(-data.a, data.alpha)) poles.push_back({p * r, Complex(-1.0, 0.0)});
      return build_third_kind(std::move(poles));
    }
  }
  throw Error(ErrorCode::InvalidCaseData, "unknown case");
}

WronskianResult<GaussianRational> wronskian_identity_check(const ExactPolynomial& t, const ExactPolynomial& s) {
  return check_identity(t, s, is_zero_exact);
}

WronskianResult<Complex> wronskian_identity_check(const ComplexPolynomial& t, const ComplexPolynomial& s,
                                                 double tol) {
  const double scale = std::max({1.0, t.max_magnitude(), s.max_magnitude()});
  return check_identity(t, s, [&](const Complex& c) { return std::abs(c) <= tol * scale; });
}

std::pair<ExactPolynomial, ExactPolynomial> exact_pole_polynomials(const ExactStandardForm& data) {
  if (data.alpha < 2) throw Error(ErrorCode::InvalidCaseData, "alpha must be >= 2");
  if (data.scale_power.is_zero()) throw Error(ErrorCode::InvalidCaseData, "p^alpha must be nonzero");
  const ExactPolynomial za = ExactPolynomial::monomial(GaussianRational(1), data.alpha);
  const ExactPolynomial t = za + ExactPolynomial::constant(data.scale_power);
  if (data.kind == StandardCase::UnitResidues) return {t, ExactPolynomial::constant(GaussianRational(1))};
  if (data.kind != StandardCase::PlusMinus) throw Error(ErrorCode::InvalidCaseData, "no pole polynomials for case 1");
  if (data.a.is_zero() || data.a == GaussianRational(1)) throw Error(ErrorCode::InvalidCaseData, "a must not be 0 or 1");
  return {t, za + ExactPolynomial::constant(data.a * data.scale_power)};
}

ExactStandardForm normalize_exact(const ExactPolynomial& t, const ExactPolynomial& s) {
  ExactStandardForm out;
  if (s == ExactPolynomial::constant(GaussianRational(1))) {
    const int alpha = t.degree();
    if (alpha < 2 || !(t.leading() == GaussianRational(1)) || t.coefficient(0).is_zero())
      throw Error(ErrorCode::InvalidArgument, "t must be monic of degree >= 2 with nonzero constant term");
    if (!(t.derivative() == ExactPolynomial::monomial(GaussianRational(alpha), alpha - 1)))
      throw Error(ErrorCode::NotMonomialIdentity, "t' is not alpha z^(alpha-1)");
    out.kind = StandardCase::UnitResidues;
    out.alpha = alpha;
    out.scale_power = t.coefficient(0);
    return out;
  }
  const auto w = wronskian_identity_check(t, s);
  out.kind = StandardCase::PlusMinus;
  out.alpha = w.alpha;
  out.scale_power = w.omega0;
  out.a = w.sigma0 / w.omega0;
  return out;
}

StandardFormCase normalize_form(const MeromorphicOneForm& omega) {
  const auto& poles = omega.poles();
  if (omega.exact_part().degree() > 0) throw Error(ErrorCode::PatternMismatch, "form has a nonzero exact part");
  if (!omega.hypotheses().is_third_kind || poles.empty())
    throw Error(ErrorCode::PatternMismatch, "form is not of the third kind");
  for (const auto& pole : poles)
    if (std::abs(pole.residue.imag()) > kRealResidueTol * std::max(1.0, std::abs(pole.residue)))
      throw Error(ErrorCode::ResidueMismatch, "residues must be real");

  StandardFormCase out;
  if (poles.size() == 1) {
    if (std::abs(poles[0].location) > kRootIdentityTol)
      throw Error(ErrorCode::PatternMismatch, "the single finite pole must sit at 0");
    out.kind = StandardCase::Simple;
    out.residue_lambda = poles[0].residue.real();
    return out;
  }

  std::vector<Complex> plus, minus;
  for (const auto& pole : poles) {
    if (std::abs(pole.residue - 1.0) <= kUnitResidueTol)
      plus.push_back(pole.location);
    else if (std::abs(pole.residue + 1.0) <= kUnitResidueTol)
      minus.push_back(pole.location);
    else
      throw Error(ErrorCode::ResidueMismatch, "residues must all be +1, or split evenly between +1 and -1");
  }

  const ComplexPolynomial t = vieta(plus);
  Complex omega0{};
  if (minus.empty()) {
    out.kind = StandardCase::UnitResidues;
    out.alpha = t.degree();
    if (out.alpha < 2 || t.derivative().order_at_zero() != out.alpha - 1)
      throw Error(ErrorCode::PatternMismatch, "poles are not the roots of z^alpha + c");
    omega0 = t.coefficient(0);
  } else {
    if (plus.size() != minus.size()) throw Error(ErrorCode::ResidueMismatch, "unequal numbers of +1 and -1 poles");
    const ComplexPolynomial s = vieta(minus);
    WronskianResult<Complex> w;
    try {
      w = wronskian_identity_check(t, s);
    } catch (const Error& e) {
      throw Error(ErrorCode::PatternMismatch, e.what());
    }
    out.kind = StandardCase::PlusMinus;
    out.alpha = w.alpha;
    omega0 = w.omega0;
    out.a = snapped(w.sigma0 / w.omega0);
  }
  out.p = canonical_root(snapped(omega0), out.alpha);

  StandardFormCase unit = out;
  unit.p = Complex(1.0, 0.0);
  const MeromorphicOneForm reference = standard_form(unit);
  int checked = 0;
  for (int k = 0; checked < 10 && k < 40; ++k) {
    const Complex w = std::polar(0.35 + 0.17 * k, 0.9 * k + 0.3);
    const Complex z = out.p * w;
    if (reference.distance_to_poles(w) < 1e-3 || omega.distance_to_poles(z) < 1e-3 * std::abs(out.p)) continue;
    const Complex pulled = out.p * omega.eta_at(z);
    const Complex expected = reference.eta_at(w);
    if (std::abs(pulled - expected) > kPullbackTol * std::max(1.0, std::abs(expected)))
      throw Error(ErrorCode::PatternMismatch, "pulled-back form differs from the standard form");
    ++checked;
  }
  return out;
}

double FootballMetric::log_density(Complex w) const {
  const double lr = std::log(std::abs(w));
  const double base = std::log(4.0) + 2.0 * std::log(alpha_) + (alpha_ == 1.0 ? 0.0 : 2.0 * (alpha_ - 1.0) * lr);
  if (variant_ == FootballVariant::Generic) return base - 2.0 * softplus(2.0 * alpha_ * lr);
  const int n = static_cast<int>(alpha_);
  double ln_x = 0.0;
  if (std::abs(w) <= 1.0) {
    ln_x = std::log(std::abs(ipow(w, n) + b_));
  } else {
    ln_x = alpha_ * lr + std::log(std::abs(1.0 + b_ * ipow(1.0 / w, n)));
  }
  return base - 2.0 * softplus(2.0 * ln_x);
}

FootballMetric football_metric(double alpha, FootballVariant variant, double b) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw Error(ErrorCode::InvalidAlpha, "alpha must be positive");
  if (variant == FootballVariant::Integer) {
    if (alpha != std::floor(alpha) || alpha > 64) throw Error(ErrorCode::InvalidAlpha, "integer variant needs alpha in Z+");
    if (!std::isfinite(b)) throw Error(ErrorCode::InvalidArgument, "b must be finite");
  } else {
    b = 0.0;
  }
  return FootballMetric(alpha, variant, b);
}

FootballReduction reduce_to_football(const StandardFormCase& data, double a0) {
  if (!std::isfinite(a0)) throw Error(ErrorCode::InvalidArgument, "A0 must be finite");
  if (data.kind == StandardCase::PlusMinus && (data.a == Complex{} || data.a == Complex(1.0, 0.0)))
    throw Error(ErrorCode::DegenerateA, "a must not be 0 or 1");
  if (data.p != Complex(1.0, 0.0)) throw Error(ErrorCode::InvalidCaseData, "reduction expects a normal form (p = 1)");
  const double lambda = std::exp(a0 / 2.0);
  switch (data.kind) {
    case StandardCase::Simple: {
      const double r = data.residue_lambda;
      if (!std::isfinite(r) || r == 0.0) throw Error(ErrorCode::InvalidCaseData, "residue lambda must be nonzero");
      const double alpha = std::abs(r);
      const double p = std::exp(-(r > 0 ? 1.0 : -1.0) * a0 / (2.0 * alpha));
      return {Complex(p, 0.0), football_metric(alpha, FootballVariant::Generic), lambda, 0.0};
    }
    case StandardCase::UnitResidues: {
      if (data.alpha < 2) throw Error(ErrorCode::InvalidCaseData, "alpha must be >= 2");
      const double p = std::exp(-a0 / (2.0 * data.alpha));
      return {Complex(p, 0.0), football_metric(data.alpha, FootballVariant::Integer, lambda), lambda, 0.0};
    }
    case StandardCase::PlusMinus: {
      if (data.alpha < 2) throw Error(ErrorCode::InvalidCaseData, "alpha must be >= 2");
      const double l2 = lambda * lambda;
      const Complex shifted = data.a + l2;
      const Complex c = shifted / (1.0 + l2);
      const double modulus = lambda * std::abs(data.a - 1.0) / (1.0 + l2);
      const double arg = shifted == Complex{} ? 0.0 : std::arg(shifted);
      const Complex p_alpha = std::polar(modulus, arg);
      const Complex b = c / p_alpha;
      return {canonical_root(p_alpha, data.alpha), football_metric(data.alpha, FootballVariant::Integer, b.real()),
              lambda, b.imag()};
    }
  }
  throw Error(ErrorCode::InvalidCaseData, "unknown case");
}

double reduction_discrepancy(const StandardFormCase& data, double a0, std::span<const Complex> w_samples) {
  const FootballReduction red = reduce_to_football(data, a0);
  const MetricField field(phi_from_offset(standard_form(data), a0), 1);
  const double chart = std::norm(red.p);
  double worst = 0.0;
  for (const Complex& w : w_samples) {
    const Complex z = red.p * w;
    if (field.form().distance_to_poles(z) == 0.0) continue;
    const double expected = red.metric.density(w);
    worst = std::max(worst, std::abs(field.density(z) * chart - expected) / std::max(1.0, expected));
  }
  return worst;
}

}  // namespace cscforge
