#pragma once

#include "cscforge/sphere_point.hpp"

#include <cstddef>
#include <functional>
#include <vector>

namespace cscforge {

/// n x n lattice of points covering the square of the given half-width.
struct GridSpec {
  Complex center{};
  double half_width = 1.0;
  int n = 11;

  Complex point(int i, int j) const;
  std::vector<Complex> points() const;  ///< row-major, y outer, x inner
};

/// Worker count: CSC_FORGE_THREADS if set and positive, else the hardware
/// concurrency (at least 1).
unsigned worker_count();

/// Runs body(i) for i in [0, count) split across worker_count() threads.
/// Results must be written to per-index slots; iteration order is unspecified.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace cscforge
