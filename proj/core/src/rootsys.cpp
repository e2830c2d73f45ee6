#include "nbodygeom/rootsys.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace nbg {

int WeightedRootSystem::pair_index(int i, int j) const {
  const int n = masses_.size();
  // Row-major position of (i, j), i < j, in the strict upper triangle.
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

WeightedRootSystem::WeightedRootSystem(MassDistribution masses)
    : masses_(std::move(masses)) {
  const int n = masses_.size();
  const int m = n - 1;
  stored_.setZero(n * (n - 1) / 2, m);

  // zeta_k and the closed-form components of w_ij for the standard
  // transformation: w_ij has entries zeta_i / m_i at slot i,
  // zeta_k / m^(k-1) for i < k < j, and -1/zeta_j at slot j (absent when
  // j = n). 1-based body indices below, matching the tail sums.
  std::vector<double> zeta(m + 1);
  for (int k = 1; k <= m; ++k)
    zeta[k] = std::sqrt(masses_.mass(k - 1) * masses_.tail(k - 1) / masses_.tail(k));

  for (int i = 1; i < n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      Eigen::VectorXd w = Eigen::VectorXd::Zero(m);
      w[i - 1] = zeta[i] / masses_.mass(i - 1);
      for (int k = i + 1; k < j && k <= m; ++k) w[k - 1] = zeta[k] / masses_.tail(k - 1);
      if (j <= m) w[j - 1] = -1.0 / zeta[j];
      stored_.row(pair_index(i - 1, j - 1)) = w;
    }
  }
}

WeightedRootSystem::WeightedRootSystem(MassDistribution masses, Eigen::MatrixXd stored)
    : masses_(std::move(masses)), stored_(std::move(stored)) {}

Eigen::VectorXd WeightedRootSystem::root(int i, int j) const {
  const int n = masses_.size();
  if (i == j || i < 0 || j < 0 || i >= n || j >= n)
    throw std::invalid_argument("root: indices must be distinct and in range");
  if (i < j) return stored_.row(pair_index(i, j));
  return -stored_.row(pair_index(j, i));
}

Eigen::VectorXd WeightedRootSystem::normalized(int i, int j) const {
  return std::sqrt(masses_.reduced(i, j)) * root(i, j);
}

WeightedRootSystem WeightedRootSystem::transformed(const Eigen::MatrixXd& phi,
                                                   double tol) const {
  const int m = masses_.size() - 1;
  if (phi.rows() != m || phi.cols() != m)
    throw std::invalid_argument("transformed: phi must be (n-1) x (n-1)");
  if ((phi.transpose() * phi - Eigen::MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff() > tol)
    throw std::invalid_argument("transformed: phi is not orthogonal");
  return WeightedRootSystem(masses_, stored_ * phi);
}

WeightedRootSystem standard_roots(const MassDistribution& masses) {
  return WeightedRootSystem(masses);
}

double root_angle(const WeightedRootSystem& system, int i, int j, int k) {
  const int n = system.bodies();
  if (i == j || j == k || i == k || i < 0 || j < 0 || k < 0 || i >= n || j >= n || k >= n)
    throw std::invalid_argument("root_angle: indices must be distinct and in range");
  const auto& m = system.masses();
  const double c = -std::sqrt(m.mass(i) * m.mass(j) /
                              ((m.mass(i) + m.mass(k)) * (m.mass(k) + m.mass(j))));
  return std::acos(c);
}

MassDistribution masses_from_reduced(const Eigen::MatrixXd& mu, int n, double tol) {
  if (n < 3) throw std::invalid_argument("masses_from_reduced: need n >= 3");
  if (mu.rows() < n || mu.cols() < n)
    throw std::invalid_argument("masses_from_reduced: table too small");

  Eigen::MatrixXd inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (!(mu(i, j) > 0.0))
        throw std::invalid_argument("masses_from_reduced: reduced masses must be positive");
      if (std::abs(mu(i, j) - mu(j, i)) > tol * mu(i, j))
        throw std::invalid_argument("masses_from_reduced: table must be symmetric");
      inv(i, j) = 1.0 / mu(i, j);
    }

  // Condition (i): strict triangle-type inequality.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        if (i == j || j == k || i == k) continue;
        if (inv(i, j) + inv(j, k) <= inv(i, k))
          throw std::invalid_argument("masses_from_reduced: triangle inequality violated");
      }
  // Condition (ii): four-index identity.
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        for (int l = k + 1; l < n; ++l) {
          const double d1 = inv(i, j) + inv(k, l);
          const double d2 = inv(i, k) + inv(j, l);
          const double d3 = inv(i, l) + inv(j, k);
          if (std::abs(d1 - d2) > tol || std::abs(d1 - d3) > tol)
            throw std::invalid_argument("masses_from_reduced: four-index identity violated");
        }

  std::vector<double> masses(n);
  for (int i = 0; i < n; ++i) {
    double value = 0.0;
    bool first = true;
    for (int j = 0; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        if (j == i || k == i) continue;
        const double m = 2.0 / (inv(i, j) + inv(i, k) - inv(j, k));
        if (first) {
          value = m;
          first = false;
        } else if (std::abs(m - value) > tol * std::abs(value)) {
          throw std::invalid_argument("masses_from_reduced: inconsistent mass reconstruction");
        }
      }
    masses[i] = value;
  }
  return MassDistribution(std::move(masses));
}

ShapeCircleAngles shape_circle_angles(const MassDistribution& masses) {
  if (masses.size() != 3)
    throw std::invalid_argument("shape_circle_angles: defined for n = 3");
  const double total = masses.total();
  const double m0 = masses.mass(0) / total;
  const double m1 = masses.mass(1) / total;
  const double m2 = masses.mass(2) / total;
  const double product = m0 * m1 * m2;

  ShapeCircleAngles out{};
  const std::array<std::array<int, 3>, 3> ijk = {{{1, 2, 0}, {0, 2, 1}, {0, 1, 2}}};
  const std::array<double, 3> m = {m0, m1, m2};
  for (int t = 0; t < 3; ++t) {
    const double mi = m[ijk[t][0]];
    const double mj = m[ijk[t][1]];
    const double mk = m[ijk[t][2]];
    const double denom = (mk + mi) * (mk + mj);
    // sin from the circle formula, cos from doubling the root angle; atan2
    // then places beta_k in (0, pi).
    const double s = 2.0 * std::sqrt(product) / denom;
    const double c = 2.0 * mi * mj / denom - 1.0;
    out.betas[t] = std::atan2(s, c);
    out.alphas[t] = M_PI - out.betas[t] / 2.0;
  }
  return out;
}

}  // namespace nbg
