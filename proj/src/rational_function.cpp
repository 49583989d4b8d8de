#include "cscforge/rational_function.hpp"

#include "cscforge/roots.hpp"

#include <cmath>
#include <limits>

namespace cscforge {

namespace {

/// sum |c_k| |z|^k, the rounding scale of evaluating p at z.
double evaluation_bound(const ComplexPolynomial& p, Complex z) {
  double acc = 0.0;
  const double r = std::abs(z);
  for (int k = p.degree(); k >= 0; --k) acc = acc * r + std::abs(p.coefficient(k));
  return acc;
}

/// p / (z - r), discarding the remainder.
ComplexPolynomial deflate(const ComplexPolynomial& p, Complex r) {
  const int n = p.degree();
  std::vector<Complex> q(static_cast<std::size_t>(n), Complex{});
  Complex carry{};
  for (int k = n; k >= 1; --k) {
    carry = p.coefficient(k) + carry * r;
    q[static_cast<std::size_t>(k - 1)] = carry;
  }
  return ComplexPolynomial(std::move(q));
}

void reduce_floating(ComplexPolynomial& num, ComplexPolynomial& den) {
  if (num.is_zero()) {
    den = ComplexPolynomial::constant(1.0);
    return;
  }
  bool changed = true;
  while (changed && den.degree() >= 1 && num.degree() >= 1) {
    changed = false;
    for (const Complex& r : polynomial_roots(den)) {
      if (std::abs(num.evaluate(r)) <= kRootIdentityTol * evaluation_bound(num, r)) {
        num = deflate(num, r);
        den = deflate(den, r);
        changed = true;
        break;
      }
    }
  }
}

void reduce_exact(ExactPolynomial& num, ExactPolynomial& den) {
  if (num.is_zero()) {
    den = ExactPolynomial::constant(GaussianRational{1});
    return;
  }
  ExactPolynomial g = gcd(num, den);
  if (g.degree() > 0) {
    num = divmod(num, g).first;
    den = divmod(den, g).first;
  }
  GaussianRational lead = den.leading();
  num = (GaussianRational{1} / lead) * num;
  den = den.monic();
}

}  // namespace

template <typename T>
RationalFunction<T>::RationalFunction(Polynomial<T> num, Polynomial<T> den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw Error(ErrorCode::InvalidArgument, "rational function with zero denominator");
  if constexpr (CoefficientTraits<T>::exact) {
    reduce_exact(num_, den_);
  } else {
    reduce_floating(num_, den_);
  }
}

template class RationalFunction<Complex>;
template class RationalFunction<GaussianRational>;

Complex residue_at_simple_pole(const ComplexRationalFunction& r, Complex a) {
  const ComplexPolynomial& den = r.denominator();
  const ComplexPolynomial dden = den.derivative();
  const double scale = evaluation_bound(den, a);
  const bool root = std::abs(den.evaluate(a)) <= kRootIdentityTol * scale;
  const bool simple = std::abs(dden.evaluate(a)) * std::max(1.0, std::abs(a)) > kRootIdentityTol * scale;
  const Complex n = r.numerator().evaluate(a);
  if (!root || !simple || n == Complex{})
    throw Error(ErrorCode::NotASimplePole, "point is not a simple root of the denominator");
  return n / dden.evaluate(a);
}

GaussianRational residue_at_simple_pole(const ExactRationalFunction& r, const GaussianRational& a) {
  const ExactPolynomial& den = r.denominator();
  const ExactPolynomial dden = den.derivative();
  GaussianRational n = r.numerator().evaluate(a);
  GaussianRational d = dden.evaluate(a);
  if (!den.evaluate(a).is_zero() || d.is_zero() || n.is_zero())
    throw Error(ErrorCode::NotASimplePole, "point is not a simple root of the denominator");
  return n / d;
}

InfinityResidue residue_at_infinity(const ComplexRationalFunction& r) {
  const ComplexPolynomial& num = r.numerator();
  const ComplexPolynomial& den = r.denominator();
  if (num.is_zero()) return {Complex{}, std::numeric_limits<int>::min() / 2};
  const int m = den.degree();
  auto [quot, rem] = divmod(num, den);
  Complex coeff = m >= 1 ? rem.coefficient(m - 1) / den.leading() : Complex{};
  return {-coeff, num.degree() - m + 2};
}

}  // namespace cscforge
