#include "nbodygeom/jacobi.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace nbg {

JacobiCoefficients standard_coefficients(const MassDistribution& masses) {
  const int n = masses.size();
  const int m = n - 1;

  Eigen::VectorXd zetas(m);
  for (int k = 1; k <= m; ++k)
    zetas[k - 1] = std::sqrt(masses.mass(k - 1) * masses.tail(k - 1) / masses.tail(k));

  // x_k = zeta_k (a_k + (1/m^(k-1)) sum_{i<k} m_i a_i): lower triangular,
  // with a zero column for a_n.
  Eigen::MatrixXd fwd = Eigen::MatrixXd::Zero(m, n);
  for (int i = 1; i <= m; ++i) {
    fwd(i - 1, i - 1) = zetas[i - 1];
    for (int k = 1; k < i; ++k)
      fwd(i - 1, k - 1) = zetas[i - 1] * masses.mass(k - 1) / masses.tail(i - 1);
  }

  // a_i = x_i / zeta_i - sum_{k<i} (m_k / m^(k)) x_k / zeta_k for i < n,
  // and a_n closes the center of mass.
  Eigen::MatrixXd inv = Eigen::MatrixXd::Zero(n, m);
  for (int i = 1; i <= m; ++i) {
    inv(i - 1, i - 1) = 1.0 / zetas[i - 1];
    for (int k = 1; k < i; ++k)
      inv(i - 1, k - 1) = -masses.mass(k - 1) / masses.tail(k) / zetas[k - 1];
  }
  for (int i = 0; i < m; ++i) {
    double acc = 0.0;
    for (int r = 0; r < m; ++r) acc += masses.mass(r) * inv(r, i);
    inv(n - 1, i) = -acc / masses.mass(n - 1);
  }

  return {masses, std::move(zetas), std::move(fwd), std::move(inv)};
}

JacobiMatrix forward(const JacobiCoefficients& coeffs, const CenteredConfiguration& config) {
  if (config.bodies() != coeffs.n())
    throw std::invalid_argument("forward: body count mismatch");
  return {config.positions() * coeffs.forward_matrix.transpose()};
}

CenteredConfiguration inverse(const JacobiCoefficients& coeffs, const JacobiMatrix& x) {
  if (x.count() != coeffs.n() - 1)
    throw std::invalid_argument("inverse: expected n-1 Jacobi vectors");
  Eigen::MatrixXd positions = x.columns * coeffs.inverse_matrix.transpose();
  return CenteredConfiguration(Configuration(coeffs.masses, std::move(positions)));
}

Configuration basic_rho(int i, int j, const Configuration& config) {
  const int n = config.bodies();
  if (i == j || i < 0 || j < 0 || i >= n || j >= n)
    throw std::invalid_argument("basic_rho: indices must be distinct and in range");

  const double mi = config.masses.mass(i);
  const double mj = config.masses.mass(j);
  std::vector<double> new_masses = config.masses.masses();
  new_masses[i] = mi * mj / (mi + mj);
  new_masses[j] = mi + mj;

  Eigen::MatrixXd pos = config.positions;
  Eigen::VectorXd rel = pos.col(i) - pos.col(j);
  Eigen::VectorXd com = (mi * pos.col(i) + mj * pos.col(j)) / (mi + mj);
  pos.col(i) = rel;
  pos.col(j) = com;
  return Configuration(MassDistribution(std::move(new_masses)), std::move(pos));
}

Configuration mass_normalize(const Configuration& config) {
  const int n = config.bodies();
  Eigen::MatrixXd pos = config.positions;
  for (int i = 0; i < n; ++i) pos.col(i) *= std::sqrt(config.masses.mass(i));
  return Configuration(MassDistribution(std::vector<double>(n, 1.0)), std::move(pos));
}

Configuration permute(const std::vector<int>& sigma, const Configuration& config) {
  const int n = config.bodies();
  if (static_cast<int>(sigma.size()) != n)
    throw std::invalid_argument("permute: permutation length mismatch");
  std::vector<bool> seen(n, false);
  for (int s : sigma) {
    if (s < 0 || s >= n || seen[s]) throw std::invalid_argument("permute: not a permutation");
    seen[s] = true;
  }
  std::vector<double> new_masses(n);
  Eigen::MatrixXd pos(config.dim(), n);
  for (int k = 0; k < n; ++k) {
    new_masses[k] = config.masses.mass(sigma[k]);
    pos.col(k) = config.positions.col(sigma[k]);
  }
  return Configuration(MassDistribution(std::move(new_masses)), std::move(pos));
}

bool is_jacobi_transformation(const Eigen::MatrixXd& phi, double tol) {
  if (phi.rows() != phi.cols())
    throw std::invalid_argument("is_jacobi_transformation: matrix must be square");
  const int m = static_cast<int>(phi.rows());
  return (phi.transpose() * phi - Eigen::MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace nbg
