#pragma once

#include <Eigen/Dense>
#include <utility>

#include "nbodygeom/masses.hpp"

namespace nbg {

/// Default relative tolerance for the centered-ness check:
/// |sum m_i a_i| <= tol * sum m_i |a_i|.
inline constexpr double kCenteredTol = 1e-12;

/// n position vectors in d-space, one per column, with their masses.
struct Configuration {
  MassDistribution masses;
  Eigen::MatrixXd positions;  // d x n

  Configuration(MassDistribution m, Eigen::MatrixXd pos);

  int dim() const { return static_cast<int>(positions.rows()); }
  int bodies() const { return static_cast<int>(positions.cols()); }
};

/// A configuration whose mass-weighted barycenter vanishes.
class CenteredConfiguration {
public:
  /// Throws std::invalid_argument if sum m_i a_i != 0 to relative tolerance.
  explicit CenteredConfiguration(Configuration config, double tol = kCenteredTol);

  const Configuration& config() const { return config_; }
  const MassDistribution& masses() const { return config_.masses; }
  const Eigen::MatrixXd& positions() const { return config_.positions; }
  int dim() const { return config_.dim(); }
  int bodies() const { return config_.bodies(); }

private:
  Configuration config_;
};

/// Positions plus matching velocities.
struct ConfigurationState {
  Configuration config;
  Eigen::MatrixXd velocities;  // d x n

  ConfigurationState(Configuration c, Eigen::MatrixXd vel);
};

/// The basic kinematic quantities of a state. The angular momentum is kept
/// as the skew matrix sum m_i (a_i da_i^t - da_i a_i^t); for d = 3 its
/// independent entries are the classical vector Omega = sum m_i a_i x da_i,
/// recovered by omega_vector().
struct KinematicSummary {
  double moment_I = 0.0;
  double kinetic_T = 0.0;
  Eigen::MatrixXd angular;  // d x d, skew-symmetric
  Eigen::VectorXd linear_momentum;

  /// d = 3 only: Omega with Omega_1 = angular(1,2), Omega_2 = angular(2,0),
  /// Omega_3 = angular(0,1).
  Eigen::Vector3d omega_vector() const;
};

/// Moment of inertia I, kinetic energy T, angular and linear momentum.
KinematicSummary kinematic_quantities(const ConfigurationState& state);

/// Mass-weighted inner product sum m_i a_i . b_i of two configurations
/// with the same shape and masses.
double kinematic_inner(const Configuration& x, const Configuration& y);

/// Moment of inertia sum m_i |a_i|^2.
double moment_of_inertia(const Configuration& config);

/// Translates the barycenter to the origin; returns the centered
/// configuration and the removed center-of-mass vector.
std::pair<CenteredConfiguration, Eigen::VectorXd> center(const Configuration& config);

}  // namespace nbg
