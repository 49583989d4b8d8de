#include "cscforge/roots.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace cscforge {

namespace {

Complex newton_polish(const ComplexPolynomial& p, const ComplexPolynomial& dp, Complex z) {
  for (int it = 0; it < 8; ++it) {
    Complex d = dp.evaluate(z);
    if (d == Complex{}) break;
    Complex step = p.evaluate(z) / d;
    if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
    Complex next = z - step;
    // Only accept steps that do not increase the residual.
    if (std::abs(p.evaluate(next)) > std::abs(p.evaluate(z))) break;
    z = next;
    if (std::abs(step) <= 1e-17 * std::max(1.0, std::abs(z))) break;
  }
  return z;
}

ComplexPolynomial nth_derivative(ComplexPolynomial p, int n) {
  for (int k = 0; k < n; ++k) p = p.derivative();
  return p;
}

}  // namespace

std::vector<Complex> polynomial_roots(const ComplexPolynomial& p) {
  if (p.is_zero()) throw std::domain_error("roots of the zero polynomial");
  const int zeros = p.order_at_zero();
  std::vector<Complex> roots(static_cast<std::size_t>(zeros), Complex{});
  ComplexPolynomial q = p.shifted_down(zeros);
  const int n = q.degree();
  if (n <= 0) return roots;
  if (n == 1) {
    roots.push_back(-q.coefficient(0) / q.coefficient(1));
    return roots;
  }
  ComplexPolynomial monic = q.monic();
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -monic.coefficient(i);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, /*computeEigenvectors=*/false);
  const ComplexPolynomial dq = q.derivative();
  for (int i = 0; i < n; ++i) roots.push_back(newton_polish(q, dq, solver.eigenvalues()(i)));
  return roots;
}

std::vector<RootCluster> clustered_roots(const ComplexPolynomial& p, double cluster_tol) {
  std::vector<Complex> roots = polynomial_roots(p);
  std::vector<RootCluster> clusters;
  std::vector<bool> used(roots.size(), false);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    std::vector<Complex> members{roots[i]};
    // Grow the cluster transitively.
    for (bool grew = true; grew;) {
      grew = false;
      for (std::size_t j = 0; j < roots.size(); ++j) {
        if (used[j]) continue;
        for (const Complex& m : members) {
          if (std::abs(roots[j] - m) <= cluster_tol * std::max(1.0, std::abs(m))) {
            used[j] = true;
            members.push_back(roots[j]);
            grew = true;
            break;
          }
        }
      }
    }
    Complex center{};
    bool has_exact_zero = false;
    for (const Complex& m : members) {
      center += m;
      has_exact_zero = has_exact_zero || m == Complex{};
    }
    center /= static_cast<double>(members.size());
    const int mult = static_cast<int>(members.size());
    if (has_exact_zero) {
      center = Complex{};
    } else if (mult > 1) {
      ComplexPolynomial d = nth_derivative(p, mult - 1);
      center = newton_polish(d, d.derivative(), center);
    }
    clusters.push_back({center, mult});
  }
  std::sort(clusters.begin(), clusters.end(), [](const RootCluster& a, const RootCluster& b) {
    if (a.center.real() != b.center.real()) return a.center.real() < b.center.real();
    return a.center.imag() < b.center.imag();
  });
  return clusters;
}

Complex canonical_root(Complex c, int alpha) {
  if (alpha <= 0) throw std::invalid_argument("canonical_root: alpha must be positive");
  if (c == Complex{}) return {};
  double arg = std::arg(c);
  if (arg < 0) arg += 2 * std::numbers::pi;
  if (arg >= 2 * std::numbers::pi) arg = 0;
  return std::polar(std::pow(std::abs(c), 1.0 / alpha), arg / alpha);
}

}  // namespace cscforge
