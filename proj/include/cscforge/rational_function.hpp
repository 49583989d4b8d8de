#pragma once

#include "cscforge/errors.hpp"
#include "cscforge/polynomial.hpp"

#include <optional>

namespace cscforge {

/// Relative distance below which two floating roots are treated as the same
/// point when reducing a rational function.
inline constexpr double kRootIdentityTol = 1e-9;

/// num / den kept in reduced form.  Exact coefficients are reduced by the
/// polynomial gcd (denominator made monic); floating coefficients by removing
/// denominator roots at which the numerator vanishes to within
/// kRootIdentityTol.
template <typename T>
class RationalFunction {
 public:
  RationalFunction() : num_(), den_(Polynomial<T>::constant(T{1})) {}
  RationalFunction(Polynomial<T> num, Polynomial<T> den);

  const Polynomial<T>& numerator() const { return num_; }
  const Polynomial<T>& denominator() const { return den_; }

  template <typename X>
  X evaluate(const X& z) const {
    return num_.evaluate(z) / den_.evaluate(z);
  }

 private:
  Polynomial<T> num_;
  Polynomial<T> den_;
};

using ComplexRationalFunction = RationalFunction<Complex>;
using ExactRationalFunction = RationalFunction<GaussianRational>;

/// lim_{z->a} (z-a) r(z) = num(a)/den'(a) at a simple root a of the
/// denominator.  Throws NotASimplePole otherwise.
Complex residue_at_simple_pole(const ComplexRationalFunction& r, Complex a);
GaussianRational residue_at_simple_pole(const ExactRationalFunction& r, const GaussianRational& a);

/// Behaviour of r(z) dz at infinity, read in the chart w = 1/z.
struct InfinityResidue {
  Complex residue;
  /// Pole order of the pulled-back form at w = 0 (<= 0 means no pole; its
  /// negative is the order of vanishing).
  int pole_order = 0;
  bool is_simple_pole() const { return pole_order == 1; }
};

/// Residue of r(1/w) (-1/w^2) dw at w = 0, i.e. minus the z^{-1}
/// coefficient of the Laurent expansion of r at infinity.
InfinityResidue residue_at_infinity(const ComplexRationalFunction& r);

}  // namespace cscforge
