#pragma once

#include <Eigen/Dense>
#include <random>
#include <vector>

#include "nbodygeom/configuration.hpp"
#include "nbodygeom/masses.hpp"

namespace testutil {

inline std::vector<double> random_masses(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(0.2, 3.0);
  std::vector<double> m(n);
  for (double& v : m) v = u(rng);
  return m;
}

inline Eigen::MatrixXd random_matrix(std::mt19937_64& rng, int rows, int cols) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = gauss(rng);
  return m;
}

inline nbg::Configuration random_configuration(std::mt19937_64& rng,
                                               const nbg::MassDistribution& masses, int d) {
  return nbg::Configuration(masses, random_matrix(rng, d, masses.size()));
}

inline nbg::CenteredConfiguration random_centered(std::mt19937_64& rng,
                                                  const nbg::MassDistribution& masses, int d) {
  return nbg::center(random_configuration(rng, masses, d)).first;
}

// Haar-ish orthogonal matrix from the QR factorization of a Gaussian
// matrix, with the R diagonal signs absorbed to make Q unique.
inline Eigen::MatrixXd random_orthogonal(std::mt19937_64& rng, int m) {
  Eigen::MatrixXd a = random_matrix(rng, m, m);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ();
  Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < m; ++i)
    if (r(i, i) < 0) q.col(i) = -q.col(i);
  return q;
}

}  // namespace testutil
