#pragma once

#include <complex>
#include <ostream>

namespace cscforge {

using Complex = std::complex<double>;

/// A point of the Riemann sphere.  Infinity is a distinguished value, never a
/// large coordinate, so that the chart change w = 1/z is exact.
class SpherePoint {
 public:
  SpherePoint() = default;
  SpherePoint(Complex z) : z_(z) {}  // NOLINT(google-explicit-constructor)

  static SpherePoint infinity() {
    SpherePoint p;
    p.infinite_ = true;
    return p;
  }

  bool is_infinity() const { return infinite_; }
  bool is_finite() const { return !infinite_; }

  /// Finite coordinate; meaningless for infinity.
  Complex value() const { return z_; }

  /// Coordinate in the chart at infinity, w = 1/z (w = 0 for infinity).
  Complex chart_w() const { return infinite_ ? Complex{} : 1.0 / z_; }

  friend bool operator==(const SpherePoint& a, const SpherePoint& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.z_ == b.z_;
  }

 private:
  Complex z_{};
  bool infinite_ = false;
};

inline std::ostream& operator<<(std::ostream& os, const SpherePoint& p) {
  if (p.is_infinity()) return os << "inf";
  return os << "(" << p.value().real() << "," << p.value().imag() << ")";
}

/// Distance between two sphere points measured in a local chart: the plain
/// coordinate distance for finite points, and the w-chart distance |1/z| when
/// one of them is infinity.
double chart_distance(const SpherePoint& a, const SpherePoint& b);

}  // namespace cscforge
