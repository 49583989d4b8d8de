#include "cscforge/polynomial.hpp"

namespace cscforge {

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  Rational n = o.norm();
  if (n == 0) throw std::domain_error("GaussianRational division by zero");
  *this *= o.conj();
  re_ /= n;
  im_ /= n;
  return *this;
}

ExactPolynomial gcd(ExactPolynomial a, ExactPolynomial b) {
  while (!b.is_zero()) {
    ExactPolynomial r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  return a.monic();
}

ComplexPolynomial cleaned(const ComplexPolynomial& p, std::span<const double> bound, double rel_tol) {
  std::vector<Complex> v = p.coefficients();
  for (std::size_t k = 0; k < v.size(); ++k) {
    const double b = k < bound.size() ? bound[k] : 0.0;
    if (std::abs(v[k]) <= rel_tol * b) v[k] = Complex{};
  }
  return ComplexPolynomial(std::move(v));
}

ComplexPolynomial cleaned(const ComplexPolynomial& p, double rel_tol) {
  std::vector<double> bound(static_cast<std::size_t>(p.degree() + 1), p.max_magnitude());
  return cleaned(p, bound, rel_tol);
}

}  // namespace cscforge
