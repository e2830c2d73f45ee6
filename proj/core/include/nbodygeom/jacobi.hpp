#pragma once

#include <Eigen/Dense>
#include <vector>

#include "nbodygeom/configuration.hpp"
#include "nbodygeom/masses.hpp"

namespace nbg {

/// Coefficients of the standard Jacobi transformation for a mass
/// distribution: the scale factors zeta_k (all taken positive, which pins
/// down one of the 2^{n-1} sign choices) and the two transformation
/// matrices. forward_matrix is (n-1) x n and maps the stacked positions of
/// a centered configuration to the Jacobi vectors; inverse_matrix is
/// n x (n-1) and recovers the positions, its last row being determined by
/// the vanishing center of mass.
struct JacobiCoefficients {
  MassDistribution masses;
  Eigen::VectorXd zetas;          // n-1
  Eigen::MatrixXd forward_matrix; // (n-1) x n, lower triangular
  Eigen::MatrixXd inverse_matrix; // n x (n-1)

  int n() const { return masses.size(); }
};

/// The n-1 Jacobi vectors of a configuration, one per column.
struct JacobiMatrix {
  Eigen::MatrixXd columns;  // d x (n-1)

  int dim() const { return static_cast<int>(columns.rows()); }
  int count() const { return static_cast<int>(columns.cols()); }
};

/// zeta_k^2 = m_k m^(k-1) / m^(k) and the triangular matrices they define.
JacobiCoefficients standard_coefficients(const MassDistribution& masses);

/// Jacobi vectors x_k = zeta_k (a_k - b^(k-1)) of a centered configuration.
JacobiMatrix forward(const JacobiCoefficients& coeffs, const CenteredConfiguration& config);

/// Recovers the centered configuration; the last position is
/// -(1/m_n) sum_{i<n} m_i a_i, so the result is centered by construction.
CenteredConfiguration inverse(const JacobiCoefficients& coeffs, const JacobiMatrix& x);

/// The (i,j)-basic Jacobi transformation: body i becomes the relative
/// position a_i - a_j with the reduced mass, body j the pair's center of
/// mass with the combined mass. Indices are 0-based.
Configuration basic_rho(int i, int j, const Configuration& config);

/// Positions scaled to sqrt(m_i) a_i, all masses set to 1.
Configuration mass_normalize(const Configuration& config);

/// Covariant relabeling: body k of the result is body sigma[k] of the input.
Configuration permute(const std::vector<int>& sigma, const Configuration& config);

/// True iff the matrix, acting on Jacobi matrices from the right, is a
/// symmetry of the kinematic quantities; in the standard model this is
/// membership in O(n-1), i.e. phi^t phi = Id to tolerance.
bool is_jacobi_transformation(const Eigen::MatrixXd& phi, double tol = 1e-10);

}  // namespace nbg
