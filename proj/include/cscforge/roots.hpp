#pragma once

#include "cscforge/polynomial.hpp"

#include <vector>

namespace cscforge {

struct RootCluster {
  Complex center;
  int multiplicity = 1;
};

/// All roots of p (with repetition) from the eigenvalues of the companion
/// matrix, each polished by Newton steps.  Exact zero roots are deflated first
/// so that z^k factors come back as exact zeros.  Intended for degree <= ~16.
std::vector<Complex> polynomial_roots(const ComplexPolynomial& p);

/// Roots grouped into clusters of coinciding roots.  Two roots belong to the
/// same cluster when they are within cluster_tol * max(1, |root|) of each
/// other.  Cluster centers are re-polished on the (m-1)-th derivative, where
/// the root is simple.
std::vector<RootCluster> clustered_roots(const ComplexPolynomial& p, double cluster_tol = 1e-5);

/// The alpha-th root of c whose argument lies in [0, 2 pi / alpha).
Complex canonical_root(Complex c, int alpha);

}  // namespace cscforge
