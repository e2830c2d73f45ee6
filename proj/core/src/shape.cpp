#include "nbodygeom/shape.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace nbg {

Eigen::MatrixXd gram_map(const Eigen::MatrixXd& x) { return x.transpose() * x; }

CanonicalForm canonical_form(const Eigen::MatrixXd& x) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(x);
  CanonicalForm out;
  out.d = static_cast<int>(x.rows());
  out.m = static_cast<int>(x.cols());
  const Eigen::VectorXd sv = svd.singularValues();  // descending
  out.r = Eigen::VectorXd::Zero(out.d);
  out.r.head(sv.size()) = sv;
  out.lambda = out.r.array().square();
  return out;
}

SubrankSignature subrank(const CanonicalForm& form, double tol) {
  if (tol < 0.0) throw std::invalid_argument("subrank: tolerance must be nonnegative");
  SubrankSignature sig;
  sig.tol = tol;
  const double top = form.r.size() > 0 ? form.r[0] : 0.0;
  if (top <= kSubrankAbsFloor) return sig;  // zero matrix: the cone vertex

  int k = 0;
  while (k < form.r.size() && form.r[k] > tol * top) ++k;
  sig.rank = k;

  int string_len = 1;
  for (int i = 1; i < k; ++i) {
    if (std::abs(form.r[i - 1] - form.r[i]) <= tol * top) {
      ++string_len;
    } else {
      sig.kappa.push_back(string_len);
      string_len = 1;
    }
  }
  if (k > 0) sig.kappa.push_back(string_len);
  return sig;
}

IsotropyDescriptor isotropy_descriptor(const SubrankSignature& sig, int d, int m) {
  const int k = sig.rank;
  if (k > d || k > m)
    throw std::invalid_argument("isotropy_descriptor: partition exceeds dimensions");

  auto orth_dim = [](int q) { return q * (q - 1) / 2; };
  IsotropyDescriptor out;
  out.dimension = orth_dim(d - k) + orth_dim(m - k);
  out.factors = "O(" + std::to_string(d - k) + ") x DeltaO(";
  for (std::size_t i = 0; i < sig.kappa.size(); ++i) {
    out.dimension += orth_dim(sig.kappa[i]);
    out.factors += (i ? "," : "") + std::to_string(sig.kappa[i]);
  }
  out.factors += ") x O(" + std::to_string(m - k) + ")";
  return out;
}

long long stratum_census(int d) {
  if (d < 1) throw std::invalid_argument("stratum_census: d >= 1 required");
  // pi(k) via the bounded-part recurrence: table[total][maxpart] counts
  // partitions of total into parts <= maxpart.
  std::vector<std::vector<long long>> table(d + 1, std::vector<long long>(d + 1, 0));
  for (int k = 0; k <= d; ++k) table[0][k] = 1;
  for (int total = 1; total <= d; ++total)
    for (int maxpart = 1; maxpart <= d; ++maxpart) {
      table[total][maxpart] = table[total][maxpart - 1];
      if (total >= maxpart) table[total][maxpart] += table[total - maxpart][maxpart];
    }
  long long census = 0;
  for (int k = 1; k <= d; ++k) census += table[k][d];
  return census;
}

double collision_distance(const CenteredConfiguration& config, int i, int j) {
  const int n = config.bodies();
  if (i == j || i < 0 || j < 0 || i >= n || j >= n)
    throw std::invalid_argument("collision_distance: indices must be distinct and in range");
  const double mu = config.masses().reduced(i, j);
  return std::sqrt(mu) * (config.positions().col(i) - config.positions().col(j)).norm();
}

namespace {

void check_trace_one_psd(const Eigen::MatrixXd& y, double tol) {
  if (y.rows() != y.cols()) throw std::invalid_argument("expected a square matrix");
  if ((y - y.transpose()).cwiseAbs().maxCoeff() > tol)
    throw std::invalid_argument("expected a symmetric matrix");
  if (std::abs(y.trace() - 1.0) > tol)
    throw std::invalid_argument("expected trace 1");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(y, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tol)
    throw std::invalid_argument("expected a positive semidefinite matrix");
}

}  // namespace

Eigen::MatrixXd linear_model_embed(const Eigen::MatrixXd& y, double tol) {
  check_trace_one_psd(y, tol);
  const int m = static_cast<int>(y.rows());
  const double rm = std::sqrt(1.0 - 1.0 / m);
  return (y - Eigen::MatrixXd::Identity(m, m) / m) / rm;
}

Eigen::MatrixXd boundary_model_map(const Eigen::MatrixXd& y, double tol) {
  check_trace_one_psd(y, tol);
  const int m = static_cast<int>(y.rows());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(y, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() > tol)
    throw std::invalid_argument("boundary_model_map: interior point has no boundary image");
  Eigen::MatrixXd y0 = linear_model_embed(y, tol);
  return y0 / y0.norm();
}

}  // namespace nbg
