#include "nbodygeom/masses.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace nbg {

MassDistribution::MassDistribution(std::vector<double> masses)
    : masses_(std::move(masses)) {
  const int n = static_cast<int>(masses_.size());
  if (n < 2) throw std::invalid_argument("MassDistribution: need at least two bodies");
  for (double m : masses_) {
    if (!std::isfinite(m) || m <= 0.0)
      throw std::invalid_argument("MassDistribution: mass must be finite and positive");
  }

  // Backward summation keeps the strictly-decreasing tail sums consistent
  // with tail(k) = tail(k+1) + m_{k+1}.
  tails_.assign(n, 0.0);
  tails_[n - 1] = masses_[n - 1];
  for (int k = n - 2; k >= 0; --k) tails_[k] = tails_[k + 1] + masses_[k];

  reduced_.setZero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double mu = masses_[i] * masses_[j] / (masses_[i] + masses_[j]);
      reduced_(i, j) = mu;
      reduced_(j, i) = mu;
    }
}

Eigen::VectorXd MassDistribution::as_vector() const {
  return Eigen::Map<const Eigen::VectorXd>(masses_.data(), masses_.size());
}

}  // namespace nbg
