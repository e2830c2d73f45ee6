#include "nbodygeom/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace nbg {
namespace {

// Sum of k x k principal minors det(G[S,S]) of the Gram matrix G = X^t X
// over all column subsets S, |S| = k, in lexicographic order.
double gram_minor_sum(const Eigen::MatrixXd& gram, int k) {
  const int m = static_cast<int>(gram.rows());
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;

  double sum = 0.0;
  Eigen::MatrixXd sub(k, k);
  while (true) {
    for (int r = 0; r < k; ++r)
      for (int c = 0; c < k; ++c) sub(r, c) = gram(idx[r], idx[c]);
    sum += sub.determinant();

    int pos = k - 1;
    while (pos >= 0 && idx[pos] == m - k + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int r = pos + 1; r < k; ++r) idx[r] = idx[r - 1] + 1;
  }
  return sum;
}

InvariantVector invariants_of(const Eigen::MatrixXd& x) {
  const int q = static_cast<int>(std::min(x.rows(), x.cols()));
  Eigen::MatrixXd gram = x.transpose() * x;
  InvariantVector out;
  out.values.reserve(q);
  for (int k = 1; k <= q; ++k) out.values.push_back(gram_minor_sum(gram, k));
  return out;
}

}  // namespace

InvariantVector jacobi_invariants(const Eigen::MatrixXd& x) { return invariants_of(x); }

InvariantVector mass_weighted_invariants(const CenteredConfiguration& config) {
  // Replacing each a_i by sqrt(m_i) a_i turns the mass-weighted exterior
  // norms into plain Gram determinants.
  const int n = config.bodies();
  Eigen::MatrixXd scaled = config.positions();
  for (int i = 0; i < n; ++i) scaled.col(i) *= std::sqrt(config.masses().mass(i));

  InvariantVector out = invariants_of(scaled);
  // A centered configuration spans at most n-1 dimensions, so I_n = 0;
  // report q = min{d, n-1} generators.
  const int q = std::min(config.dim(), n - 1);
  if (out.count() > q) out.values.resize(q);
  return out;
}

double triangle_area(const CenteredConfiguration& config) {
  if (config.bodies() != 3)
    throw std::invalid_argument("triangle_area: exactly three bodies required");
  const auto& a = config.positions();
  Eigen::VectorXd u = a.col(1) - a.col(0);
  Eigen::VectorXd v = a.col(2) - a.col(0);
  // |u x v| via the 2x2 Gram determinant, valid in any dimension.
  const double g = u.squaredNorm() * v.squaredNorm() - std::pow(u.dot(v), 2);
  return 0.5 * std::sqrt(std::max(g, 0.0));
}

double tetra_volume(const CenteredConfiguration& config) {
  if (config.bodies() != 4 || config.dim() != 3)
    throw std::invalid_argument("tetra_volume: four bodies in 3-space required");
  const auto& a = config.positions();
  Eigen::Matrix3d edges;
  for (int i = 0; i < 3; ++i) edges.col(i) = a.col(i + 1) - a.col(0);
  return std::abs(edges.determinant()) / 6.0;
}

}  // namespace nbg
