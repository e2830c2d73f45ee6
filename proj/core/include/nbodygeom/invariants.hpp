#pragma once

#include <Eigen/Dense>
#include <vector>

#include "nbodygeom/configuration.hpp"

namespace nbg {

/// The generators I_1,...,I_q of the congruence + democracy invariant ring,
/// q = min{d, m} for a d x m matrix. I_k sums the squared norms of all
/// k-fold exterior products of columns, evaluated as Gram determinants.
struct InvariantVector {
  std::vector<double> values;

  int count() const { return static_cast<int>(values.size()); }

  /// I_k (1-based); k > q returns 0 by the rank bound.
  double at(int k) const {
    return (k >= 1 && k <= count()) ? values[k - 1] : 0.0;
  }
};

/// Invariants of a Jacobi matrix (unit masses implicit):
/// I_k = sum over column subsets of the k x k Gram determinant.
InvariantVector jacobi_invariants(const Eigen::MatrixXd& x);

/// Mass-weighted symmetric form on a centered configuration:
/// I_k = sum_{i_1<..<i_k} m_{i_1}..m_{i_k} |a_{i_1} ^ ... ^ a_{i_k}|^2.
/// Agrees with jacobi_invariants of the standard Jacobi matrix.
InvariantVector mass_weighted_invariants(const CenteredConfiguration& config);

/// Geometric area of the triangle spanned by a centered 3-body
/// configuration; satisfies |x_1 x x_2| = 2 sqrt(m_1 m_2 m_3 / m-bar) A.
double triangle_area(const CenteredConfiguration& config);

/// Geometric volume of the tetrahedron of a centered 4-body configuration;
/// satisfies |(x_1 x x_2) . x_3| = 3! sqrt(m_1 m_2 m_3 m_4 / m-bar) V.
double tetra_volume(const CenteredConfiguration& config);

}  // namespace nbg
