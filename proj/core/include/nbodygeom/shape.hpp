#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "nbodygeom/configuration.hpp"

namespace nbg {

/// Sorted singular values r_1 >= ... >= r_d >= 0 of a d x m matrix: the
/// point of the Weyl chamber of type B_d representing the full orbit of
/// two-sided orthogonal actions. lambda_i = r_i^2 are the eigenvalues of
/// X^t X.
struct CanonicalForm {
  int d = 0;
  int m = 0;
  Eigen::VectorXd r;       // d, descending
  Eigen::VectorXd lambda;  // r squared, elementwise

  double norm_squared() const { return lambda.sum(); }
};

/// The rank k together with the partition kappa = (k_1,...,k_p) recording
/// maximal strings of equal singular values.
struct SubrankSignature {
  int rank = 0;
  std::vector<int> kappa;
  double tol = 0.0;
};

/// Symbolic isotropy type O(d-k) x Delta O(k_1,...,k_p) x O(m-k) of a
/// subrank stratum, with the total group dimension.
struct IsotropyDescriptor {
  std::string factors;
  int dimension = 0;
};

/// Default tolerances for subrank determination: strings of equal r_i are
/// grouped at relative tolerance, with an absolute floor deciding rank 0.
inline constexpr double kSubrankRelTol = 1e-9;
inline constexpr double kSubrankAbsFloor = 1e-12;

/// Y = X^t X, the Gram matrix of the columns. Rank-preserving and
/// equivariant: gram_map(psi X phi^-1) = phi gram_map(X) phi^-1.
Eigen::MatrixXd gram_map(const Eigen::MatrixXd& x);

/// Descending singular values of X.
CanonicalForm canonical_form(const Eigen::MatrixXd& x);

/// Groups the singular values into equality strings. Rank counts values
/// above tol * r_1 (absolute floor kSubrankAbsFloor decides the zero
/// matrix); consecutive values with |r_i - r_{i+1}| <= tol * r_1 join a
/// string.
SubrankSignature subrank(const CanonicalForm& form, double tol = kSubrankRelTol);

/// Isotropy type of the stratum labelled by the signature inside M(d, m).
IsotropyDescriptor isotropy_descriptor(const SubrankSignature& sig, int d, int m);

/// Number of subrank multistrata of the shape space for d rows:
/// pi(1) + ... + pi(d), pi the integer partition function.
long long stratum_census(int d);

/// Kinematic distance delta_ij = sqrt(mu_ij) |a_i - a_j| from the
/// configuration to the binary collision variety a_i = a_j.
double collision_distance(const CenteredConfiguration& config, int i, int j);

/// Affine embedding of the trace-1 positive cone into the unit disk of
/// traceless symmetric matrices: Y0 = (Y - Id/m) / sqrt(1 - 1/m).
/// |Y0| <= 1 with equality iff rank(Y) = 1.
Eigen::MatrixXd linear_model_embed(const Eigen::MatrixXd& y, double tol = 1e-10);

/// Boundary normalization Y0 / |Y0| for rank-deficient trace-1 Y; rejects
/// full-rank input (smallest eigenvalue above tol).
Eigen::MatrixXd boundary_model_map(const Eigen::MatrixXd& y, double tol = 1e-10);

}  // namespace nbg
