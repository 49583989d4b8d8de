#include "cscforge/oneform.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace cscforge {

namespace {

bool is_real(Complex c) { return std::abs(c.imag()) <= kRealResidueTol * std::max(1.0, std::abs(c)); }

/// Coefficientwise magnitudes, as a polynomial with real entries.
ComplexPolynomial magnitudes(const ComplexPolynomial& p) {
  std::vector<Complex> v;
  for (const auto& c : p.coefficients()) v.emplace_back(std::abs(c));
  return ComplexPolynomial(std::move(v));
}

std::vector<double> real_parts(const ComplexPolynomial& p) {
  std::vector<double> v;
  for (const auto& c : p.coefficients()) v.push_back(c.real());
  return v;
}

std::string describe(Complex c) {
  std::ostringstream os;
  os << c.real();
  if (c.imag() != 0) os << (c.imag() > 0 ? "+" : "") << c.imag() << "i";
  return os.str();
}

}  // namespace

MeromorphicOneForm build_third_kind(std::vector<Pole> poles, ComplexPolynomial exact_part) {
  for (std::size_t i = 0; i < poles.size(); ++i) {
    if (poles[i].residue == Complex{})
      throw Error(ErrorCode::ZeroResidue, "pole " + describe(poles[i].location) + " has zero residue");
    for (std::size_t j = i + 1; j < poles.size(); ++j) {
      const double scale = std::max(1.0, std::abs(poles[i].location));
      if (std::abs(poles[i].location - poles[j].location) <= kRootIdentityTol * scale)
        throw Error(ErrorCode::DuplicatePole, "pole " + describe(poles[i].location) + " listed twice");
    }
  }

  MeromorphicOneForm form;
  form.poles_ = std::move(poles);
  form.exact_part_ = std::move(exact_part);
  form.exact_derivative_ = form.exact_part_.derivative();

  const std::size_t n = form.poles_.size();
  std::vector<Complex> locations;
  std::vector<Complex> abs_locations;
  for (const auto& p : form.poles_) {
    locations.push_back(p.location);
    abs_locations.push_back(-std::abs(p.location));
  }
  ComplexPolynomial den = ComplexPolynomial::from_roots(locations);
  ComplexPolynomial den_bound = ComplexPolynomial::from_roots(abs_locations);

  ComplexPolynomial num = form.exact_derivative_ * den;
  ComplexPolynomial num_bound = magnitudes(form.exact_derivative_) * den_bound;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Complex> others;
    std::vector<Complex> abs_others;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      others.push_back(locations[j]);
      abs_others.push_back(abs_locations[j]);
    }
    num = num + form.poles_[i].residue * ComplexPolynomial::from_roots(others);
    num_bound = num_bound + Complex(std::abs(form.poles_[i].residue)) * ComplexPolynomial::from_roots(abs_others);
  }
  const double tol = 32 * std::numeric_limits<double>::epsilon() * static_cast<double>(n + 2);
  num = cleaned(num, real_parts(num_bound), tol);
  den = cleaned(den, real_parts(den_bound), tol);
  if (num.is_zero()) throw Error(ErrorCode::ZeroForm, "the form vanishes identically");

  form.eta_ = ComplexRationalFunction(num, den);
  form.reversed_num_ = form.eta_.numerator().reversed();
  form.reversed_den_ = form.eta_.denominator().reversed();
  double rmax = 1.0;
  for (const auto& p : form.poles_) rmax = std::max(rmax, std::abs(p.location));
  form.far_radius_ = 2.0 * rmax;
  form.order_at_infinity_ = form.eta_.denominator().degree() - form.eta_.numerator().degree() - 2;
  if (form.eta_.numerator().degree() >= 1) form.zeros_ = clustered_roots(form.eta_.numerator());

  // The cached eta must agree with the defining partial-fraction sum.
  for (int k = 0; k < 5; ++k) {
    Complex z = std::polar(0.5 + rmax * (1.0 + 0.37 * k), 0.9 + 1.3 * k);
    if (form.distance_to_poles(z) < 1e-3) continue;
    Complex direct = form.exact_derivative_.evaluate(z);
    double scale = std::abs(direct);
    for (const auto& p : form.poles_) {
      direct += p.residue / (z - p.location);
      scale += std::abs(p.residue / (z - p.location));
    }
    Complex cached = form.eta_.evaluate(z);
    if (std::abs(cached - direct) > 1e-10 * std::max(1.0, scale))
      throw std::logic_error("cached eta disagrees with the partial-fraction form");
  }

  form.report_ = check_hypotheses(form);
  return form;
}

Complex MeromorphicOneForm::eta_at(Complex z) const {
  if (std::abs(z) > far_radius_) {
    const Complex w = 1.0 / z;
    const int shift = eta_.numerator().degree() - eta_.denominator().degree();
    return std::pow(z, shift) * reversed_num_.evaluate(w) / reversed_den_.evaluate(w);
  }
  Complex acc = exact_derivative_.evaluate(z);
  for (const auto& p : poles_) {
    if (z == p.location) throw Error(ErrorCode::EvalAtPole, "eta evaluated at a pole");
    acc += p.residue / (z - p.location);
  }
  return acc;
}

InfinityResidue MeromorphicOneForm::residue_at_infinity() const { return cscforge::residue_at_infinity(eta_); }

std::vector<SpherePoint> MeromorphicOneForm::critical_points() const {
  std::vector<SpherePoint> out;
  for (const auto& z : zeros_) out.emplace_back(z.center);
  for (const auto& p : poles_) out.emplace_back(p.location);
  if (order_at_infinity_ != 0) out.push_back(SpherePoint::infinity());
  return out;
}

double MeromorphicOneForm::distance_to_poles(Complex z) const {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& p : poles_) d = std::min(d, std::abs(z - p.location));
  return d;
}

MeromorphicOneForm MeromorphicOneForm::negated() const {
  std::vector<Pole> poles = poles_;
  for (auto& p : poles) p.residue = -p.residue;
  return build_third_kind(std::move(poles), -exact_part_);
}

ExactnessReport check_hypotheses(const MeromorphicOneForm& omega) {
  ExactnessReport r;
  const int ord_inf = omega.order_at_infinity();
  r.has_poles = !omega.poles().empty() || ord_inf < 0;
  r.is_third_kind = r.has_poles && ord_inf >= -1;
  bool all_real = true;
  for (const auto& p : omega.poles()) {
    if (!is_real(p.residue)) {
      all_real = false;
      r.diagnostics.push_back("pole " + describe(p.location) + ": residue " + describe(p.residue) + " is not real");
    }
  }
  if (ord_inf < 0) {
    InfinityResidue inf = omega.residue_at_infinity();
    if (!is_real(inf.residue)) {
      all_real = false;
      r.diagnostics.push_back("pole inf: residue " + describe(inf.residue) + " is not real");
    }
    if (ord_inf < -1)
      r.diagnostics.push_back("pole inf has order " + std::to_string(-ord_inf) + " (not a simple pole)");
  }
  if (!r.has_poles) r.diagnostics.push_back("the form has no poles");
  r.residues_all_real_nonzero = all_real;
  // On the sphere the loops around the poles generate all cycles.
  r.real_part_exact = all_real;
  return r;
}

Divisor divisor_of_form(const MeromorphicOneForm& omega) {
  std::vector<DivisorPoint> pts;
  for (const auto& z : omega.zeros()) pts.push_back({SpherePoint(z.center), static_cast<double>(z.multiplicity)});
  for (const auto& p : omega.poles()) pts.push_back({SpherePoint(p.location), -1.0});
  if (omega.order_at_infinity() != 0)
    pts.push_back({SpherePoint::infinity(), static_cast<double>(omega.order_at_infinity())});
  return Divisor(std::move(pts));
}

double potential_f(const MeromorphicOneForm& omega, Complex z) {
  if (!omega.hypotheses().real_part_exact)
    throw Error(ErrorCode::HypothesesFailed, "Re(omega) is not exact: a residue is not real");
  double f = 2.0 * omega.exact_part().evaluate(z).real();
  for (const auto& p : omega.poles()) {
    if (z == p.location) throw Error(ErrorCode::EvalAtPole, "potential evaluated at a pole");
    f += 2.0 * p.residue.real() * std::log(std::abs(z - p.location));
  }
  return f;
}

}  // namespace cscforge
