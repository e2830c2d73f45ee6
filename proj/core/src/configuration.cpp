#include "nbodygeom/configuration.hpp"

#include <stdexcept>

namespace nbg {

Configuration::Configuration(MassDistribution m, Eigen::MatrixXd pos)
    : masses(std::move(m)), positions(std::move(pos)) {
  if (positions.cols() != masses.size())
    throw std::invalid_argument("Configuration: one position per mass required");
  if (positions.rows() < 1)
    throw std::invalid_argument("Configuration: dimension must be positive");
}

CenteredConfiguration::CenteredConfiguration(Configuration config, double tol)
    : config_(std::move(config)) {
  const int n = config_.bodies();
  Eigen::VectorXd weighted = Eigen::VectorXd::Zero(config_.dim());
  double scale = 0.0;
  for (int i = 0; i < n; ++i) {
    weighted += config_.masses.mass(i) * config_.positions.col(i);
    scale += config_.masses.mass(i) * config_.positions.col(i).norm();
  }
  if (weighted.norm() > tol * scale)
    throw std::invalid_argument("CenteredConfiguration: center of mass is not at the origin");
}

ConfigurationState::ConfigurationState(Configuration c, Eigen::MatrixXd vel)
    : config(std::move(c)), velocities(std::move(vel)) {
  if (velocities.rows() != config.dim() || velocities.cols() != config.bodies())
    throw std::invalid_argument("ConfigurationState: velocity shape must match positions");
}

Eigen::Vector3d KinematicSummary::omega_vector() const {
  if (angular.rows() != 3)
    throw std::invalid_argument("omega_vector: defined for d = 3 only");
  return {angular(1, 2), angular(2, 0), angular(0, 1)};
}

KinematicSummary kinematic_quantities(const ConfigurationState& state) {
  const int d = state.config.dim();
  const int n = state.config.bodies();
  const auto& a = state.config.positions;
  const auto& v = state.velocities;

  KinematicSummary out;
  out.angular = Eigen::MatrixXd::Zero(d, d);
  out.linear_momentum = Eigen::VectorXd::Zero(d);
  for (int i = 0; i < n; ++i) {
    const double m = state.config.masses.mass(i);
    out.moment_I += m * a.col(i).squaredNorm();
    out.kinetic_T += 0.5 * m * v.col(i).squaredNorm();
    out.linear_momentum += m * v.col(i);
    for (int r = 0; r < d; ++r)
      for (int c = r + 1; c < d; ++c)
        out.angular(r, c) += m * (a(r, i) * v(c, i) - v(r, i) * a(c, i));
  }
  // Mirror the upper triangle so the matrix is skew-symmetric exactly.
  for (int r = 0; r < d; ++r)
    for (int c = r + 1; c < d; ++c) out.angular(c, r) = -out.angular(r, c);
  return out;
}

double kinematic_inner(const Configuration& x, const Configuration& y) {
  if (x.dim() != y.dim() || x.bodies() != y.bodies())
    throw std::invalid_argument("kinematic_inner: shape mismatch");
  double sum = 0.0;
  for (int i = 0; i < x.bodies(); ++i)
    sum += x.masses.mass(i) * x.positions.col(i).dot(y.positions.col(i));
  return sum;
}

double moment_of_inertia(const Configuration& config) {
  double sum = 0.0;
  for (int i = 0; i < config.bodies(); ++i)
    sum += config.masses.mass(i) * config.positions.col(i).squaredNorm();
  return sum;
}

std::pair<CenteredConfiguration, Eigen::VectorXd> center(const Configuration& config) {
  Eigen::VectorXd com = Eigen::VectorXd::Zero(config.dim());
  for (int i = 0; i < config.bodies(); ++i)
    com += config.masses.mass(i) * config.positions.col(i);
  com /= config.masses.total();
  Eigen::MatrixXd shifted = config.positions.colwise() - com;
  return {CenteredConfiguration(Configuration(config.masses, std::move(shifted))),
          std::move(com)};
}

}  // namespace nbg
