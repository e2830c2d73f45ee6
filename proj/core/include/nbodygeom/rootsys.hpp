#pragma once

#include <Eigen/Dense>
#include <array>

#include "nbodygeom/configuration.hpp"
#include "nbodygeom/masses.hpp"

namespace nbg {

/// The weighted root system of type A_{n-1} attached to a mass
/// distribution: (n choose 2) vectors w_ij = -w_ji in (n-1)-space with
/// sqrt(mu_ij) |w_ij| = 1, encoding the pairwise separations
/// a_i - a_j = X w_ij^t as linear functionals on Jacobi matrices.
/// Roots are stored for i < j; the opposite sign is materialized on access.
class WeightedRootSystem {
public:
  explicit WeightedRootSystem(MassDistribution masses);

  const MassDistribution& masses() const { return masses_; }
  int bodies() const { return masses_.size(); }

  /// w_ij (0-based indices, i != j).
  Eigen::VectorXd root(int i, int j) const;

  /// Normalized root u_ij = sqrt(mu_ij) w_ij, a unit vector.
  Eigen::VectorXd normalized(int i, int j) const;

  /// Replaces every root by w_ij * phi for orthogonal phi; throws if phi is
  /// not orthogonal to tolerance.
  WeightedRootSystem transformed(const Eigen::MatrixXd& phi, double tol = 1e-10) const;

private:
  WeightedRootSystem(MassDistribution masses, Eigen::MatrixXd stored);

  MassDistribution masses_;
  // Row p(i,j) holds w_ij for i < j.
  Eigen::MatrixXd stored_;

  int pair_index(int i, int j) const;
};

/// Standard roots of the distinguished Jacobi transformation.
WeightedRootSystem standard_roots(const MassDistribution& masses);

/// Angle alpha_k^{i,j} between u_ik and u_kj:
/// arccos(-sqrt(m_i m_j / ((m_i+m_k)(m_k+m_j)))), in (pi/2, pi).
double root_angle(const WeightedRootSystem& system, int i, int j, int k);

/// Reconstructs the masses from a reduced-mass table via
/// m_i = 2 / (mu_ij^-1 + mu_ik^-1 - mu_jk^-1). The table must satisfy the
/// strict triangle-type inequality and, for n >= 4, the four-index
/// identity; violations throw std::invalid_argument. Requires n >= 3.
MassDistribution masses_from_reduced(const Eigen::MatrixXd& mu, int n, double tol = 1e-10);

/// For n = 3: the central angles beta_k of the collision-point triangle on
/// the shape circle and the root angles alpha_k = pi - beta_k / 2.
/// Index k holds the angle opposite the pair (i,j), {i,j,k} = {0,1,2}.
struct ShapeCircleAngles {
  std::array<double, 3> betas;
  std::array<double, 3> alphas;
};
ShapeCircleAngles shape_circle_angles(const MassDistribution& masses);

}  // namespace nbg
