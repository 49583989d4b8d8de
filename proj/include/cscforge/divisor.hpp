#pragma once

#include "cscforge/sphere_point.hpp"

#include <optional>
#include <vector>

namespace cscforge {

struct DivisorPoint {
  SpherePoint where;
  double weight = 0.0;
};

/// Formal real-weighted sum of distinct points of the sphere.
class Divisor {
 public:
  Divisor() = default;
  explicit Divisor(std::vector<DivisorPoint> points);

  const std::vector<DivisorPoint>& points() const { return points_; }
  double degree() const { return degree_; }
  bool empty() const { return points_.empty(); }
  std::size_t size() const { return points_.size(); }

  /// Weight at p (matched within `tol` in the local chart), if present.
  std::optional<double> weight_at(const SpherePoint& p, double tol = 1e-9) const;

 private:
  std::vector<DivisorPoint> points_;
  double degree_ = 0.0;
};

}  // namespace cscforge
