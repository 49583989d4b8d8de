#include "cscforge/divisor.hpp"

#include "cscforge/errors.hpp"

#include <cmath>

namespace cscforge {

namespace {

bool same_location(const SpherePoint& a, const SpherePoint& b, double tol) {
  if (a.is_infinity() || b.is_infinity()) return a.is_infinity() && b.is_infinity();
  return std::abs(a.value() - b.value()) <= tol * std::max(1.0, std::abs(a.value()));
}

}  // namespace

Divisor::Divisor(std::vector<DivisorPoint> points) : points_(std::move(points)) {
  for (std::size_t i = 0; i < points_.size(); ++i)
    for (std::size_t j = i + 1; j < points_.size(); ++j)
      if (same_location(points_[i].where, points_[j].where, 1e-9))
        throw Error(ErrorCode::InvalidArgument, "divisor locations must be pairwise distinct");
  // Kahan summation keeps the degree exact for the dyadic weights used in practice.
  double sum = 0.0;
  double comp = 0.0;
  for (const auto& p : points_) {
    double y = p.weight - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  degree_ = sum;
}

std::optional<double> Divisor::weight_at(const SpherePoint& p, double tol) const {
  for (const auto& d : points_)
    if (same_location(d.where, p, tol)) return d.weight;
  return std::nullopt;
}

}  // namespace cscforge
