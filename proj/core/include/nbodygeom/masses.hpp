#pragma once

#include <Eigen/Dense>
#include <vector>

namespace nbg {

/// Ordered positive masses (m_1,...,m_n) together with the derived
/// quantities used throughout: the total mass, the tail sums
/// m^(k) = m_{k+1} + ... + m_n and the reduced masses
/// mu_ij = m_i m_j / (m_i + m_j).
class MassDistribution {
public:
  /// Throws std::invalid_argument unless every mass is finite and > 0
  /// and n >= 2.
  explicit MassDistribution(std::vector<double> masses);

  int size() const { return static_cast<int>(masses_.size()); }
  double mass(int i) const { return masses_[i]; }
  const std::vector<double>& masses() const { return masses_; }

  /// Total mass m-bar.
  double total() const { return tails_[0]; }

  /// Tail sum m^(k) = m_{k+1} + ... + m_n, 0 <= k <= n-1 (so tail(0) = total()).
  double tail(int k) const { return tails_[k]; }

  /// Reduced mass mu_ij, i != j.
  double reduced(int i, int j) const { return reduced_(i, j); }

  /// Full symmetric table of reduced masses (diagonal is zero).
  const Eigen::MatrixXd& reduced_table() const { return reduced_; }

  Eigen::VectorXd as_vector() const;

private:
  std::vector<double> masses_;
  std::vector<double> tails_;
  Eigen::MatrixXd reduced_;
};

}  // namespace nbg
