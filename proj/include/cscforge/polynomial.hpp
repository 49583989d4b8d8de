#pragma once

#include "cscforge/gaussian_rational.hpp"
#include "cscforge/sphere_point.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <ostream>
#include <span>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

namespace cscforge {

template <typename T>
struct CoefficientTraits;

template <>
struct CoefficientTraits<Complex> {
  static constexpr bool exact = false;
  static double magnitude(const Complex& c) { return std::abs(c); }
  static Complex to_complex(const Complex& c) { return c; }
};

template <>
struct CoefficientTraits<GaussianRational> {
  static constexpr bool exact = true;
  static double magnitude(const GaussianRational& c) { return std::abs(c.to_complex()); }
  static Complex to_complex(const GaussianRational& c) { return c.to_complex(); }
};

/// Dense univariate polynomial with coefficients in ascending degree.  The
/// zero polynomial has no stored coefficients and degree() == -1; otherwise the
/// last stored coefficient is nonzero.
template <typename T>
class Polynomial {
 public:
  using Traits = CoefficientTraits<T>;

  Polynomial() = default;
  explicit Polynomial(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim_exact_zeros(); }
  Polynomial(std::initializer_list<T> coeffs) : c_(coeffs) { trim_exact_zeros(); }

  static Polynomial constant(T c) { return Polynomial(std::vector<T>{std::move(c)}); }

  static Polynomial monomial(T c, int degree) {
    std::vector<T> v(static_cast<std::size_t>(degree) + 1, T{});
    v.back() = std::move(c);
    return Polynomial(std::move(v));
  }

  /// prod (z - r) over the given roots (Vieta expansion).
  static Polynomial from_roots(std::span<const T> roots) {
    std::vector<T> v{T{1}};
    for (const T& r : roots) {
      std::vector<T> next(v.size() + 1, T{});
      for (std::size_t k = 0; k < v.size(); ++k) {
        next[k + 1] += v[k];
        next[k] -= r * v[k];
      }
      v = std::move(next);
    }
    return Polynomial(std::move(v));
  }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<T>& coefficients() const { return c_; }

  /// Coefficient of z^k; zero outside the stored range.
  T coefficient(int k) const {
    if (k < 0 || k > degree()) return T{};
    return c_[static_cast<std::size_t>(k)];
  }
  const T& leading() const { return c_.back(); }

  template <typename X>
  X evaluate(const X& z) const {
    X acc{};
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + convert<X>(*it);
    return acc;
  }

  Polynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<T> v(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) v[k - 1] = c_[k] * T(static_cast<int>(k));
    return Polynomial(std::move(v));
  }

  /// p(s z): coefficient k picks up s^k.  Used for coordinate changes z = s w.
  Polynomial scaled_argument(const T& s) const {
    std::vector<T> v = c_;
    T power{1};
    for (auto& c : v) {
      c *= power;
      power *= s;
    }
    return Polynomial(std::move(v));
  }

  /// z^deg p(1/z), the coefficient reversal.
  Polynomial reversed() const {
    std::vector<T> v(c_.rbegin(), c_.rend());
    return Polynomial(std::move(v));
  }

  Polynomial monic() const {
    if (is_zero()) throw std::domain_error("monic() of the zero polynomial");
    T lead = leading();
    std::vector<T> v = c_;
    for (auto& c : v) c /= lead;
    return Polynomial(std::move(v));
  }

  /// Number of trailing (lowest degree) coefficients that are exactly zero,
  /// i.e. the order of vanishing at z = 0.
  int order_at_zero() const {
    int k = 0;
    while (k <= degree() && c_[static_cast<std::size_t>(k)] == T{}) ++k;
    return k;
  }

  /// Divide by z^k, assuming the k lowest coefficients are zero.
  Polynomial shifted_down(int k) const {
    if (k <= 0) return *this;
    if (k > degree()) return {};
    return Polynomial(std::vector<T>(c_.begin() + k, c_.end()));
  }

  Polynomial operator-() const {
    std::vector<T> v = c_;
    for (auto& c : v) c = -c;
    return Polynomial(std::move(v));
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<T> v(std::max(a.c_.size(), b.c_.size()), T{});
    for (std::size_t k = 0; k < a.c_.size(); ++k) v[k] += a.c_[k];
    for (std::size_t k = 0; k < b.c_.size(); ++k) v[k] += b.c_[k];
    return Polynomial(std::move(v));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> v(a.c_.size() + b.c_.size() - 1, T{});
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(v));
  }
  friend Polynomial operator*(const T& s, const Polynomial& p) {
    std::vector<T> v = p.c_;
    for (auto& c : v) c = s * c;
    return Polynomial(std::move(v));
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

  /// Euclidean division a = q b + r with deg r < deg b.
  friend std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    std::vector<T> rem = a.c_;
    const int db = b.degree();
    if (a.degree() < db) return {Polynomial{}, a};
    std::vector<T> q(static_cast<std::size_t>(a.degree() - db + 1), T{});
    for (int k = a.degree(); k >= db; --k) {
      T factor = rem[static_cast<std::size_t>(k)] / b.leading();
      q[static_cast<std::size_t>(k - db)] = factor;
      for (int j = 0; j <= db; ++j)
        rem[static_cast<std::size_t>(k - db + j)] -= factor * b.c_[static_cast<std::size_t>(j)];
      rem[static_cast<std::size_t>(k)] = T{};
    }
    rem.resize(static_cast<std::size_t>(db));
    return {Polynomial(std::move(q)), Polynomial(std::move(rem))};
  }

  /// Largest coefficient magnitude (0 for the zero polynomial).
  double max_magnitude() const {
    double m = 0.0;
    for (const auto& c : c_) m = std::max(m, Traits::magnitude(c));
    return m;
  }

  Polynomial<Complex> to_complex() const {
    std::vector<Complex> v;
    v.reserve(c_.size());
    for (const auto& c : c_) v.push_back(Traits::to_complex(c));
    return Polynomial<Complex>(std::move(v));
  }

  friend std::ostream& operator<<(std::ostream& os, const Polynomial& p) {
    if (p.is_zero()) return os << "0";
    bool first = true;
    for (int k = p.degree(); k >= 0; --k) {
      const T& c = p.c_[static_cast<std::size_t>(k)];
      if (c == T{}) continue;
      if (!first) os << " + ";
      os << "(" << c << ")";
      if (k >= 1) os << "z";
      if (k >= 2) os << "^" << k;
      first = false;
    }
    return os;
  }

 private:
  template <typename X>
  static X convert(const T& c) {
    if constexpr (std::is_same_v<X, T>) {
      return c;
    } else {
      return X(Traits::to_complex(c));
    }
  }

  void trim_exact_zeros() {
    while (!c_.empty() && c_.back() == T{}) c_.pop_back();
  }

  std::vector<T> c_;
};

using ComplexPolynomial = Polynomial<Complex>;
using ExactPolynomial = Polynomial<GaussianRational>;

/// Monic gcd over an exact field.
ExactPolynomial gcd(ExactPolynomial a, ExactPolynomial b);

/// Zero every coefficient whose magnitude is at most rel_tol times the
/// matching entry of `bound` (an a-priori magnitude bound of the computation
/// that produced p).  Coefficients that are pure rounding noise become exact
/// zeros, which keeps degrees and orders of vanishing structural.
ComplexPolynomial cleaned(const ComplexPolynomial& p, std::span<const double> bound, double rel_tol);

/// Same, with the bound taken as the largest coefficient magnitude of p.
ComplexPolynomial cleaned(const ComplexPolynomial& p, double rel_tol);

}  // namespace cscforge
