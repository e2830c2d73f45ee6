#pragma once

#include <Eigen/Dense>
#include <array>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nbodygeom/configuration.hpp"
#include "nbodygeom/masses.hpp"
#include "nbodygeom/rootsys.hpp"

namespace nbg {

/// A chamber of the collinear sphere: the connected component of the
/// complement of the collision walls H_ij selected by the ordering
/// a_{order[0]} > a_{order[1]} > ... > a_{order[n-1]} of the bodies on the
/// line. The fundamental chamber is the identity ordering.
struct ChamberSpec {
  std::vector<int> order;

  bool canonical() const;

  /// eps_ij = +1 when body i lies to the right of body j.
  int sign(int i, int j) const;

  /// Lexicographic rank of the ordering among all n! permutations; used to
  /// report solutions deterministically.
  long long rank() const;

  bool operator==(const ChamberSpec& other) const { return order == other.order; }
};

/// A critical point of the reduced potential on the collinear shape sphere.
struct CollinearSolution {
  Eigen::VectorXd x;  // unit vector in (n-1)-space
  ChamberSpec chamber;
  double potential = 0.0;
  double lambda = 0.0;    // -U(x) by Euler homogeneity
  double residual = 0.0;  // |grad U + U x|
  int iterations = 0;
  Eigen::VectorXd gaps;       // t_i = a_i - a_{i+1} (signed, body order)
  Eigen::VectorXd positions;  // recovered line coordinates a_1..a_n
};

struct DescentOptions {
  int max_iter = 100000;
  double tol = 1e-12;      // on |grad U + U x| / U
  double damping = 1.0;    // initial step scale; halved on rejected steps
};

/// Thrown when the descent cannot reach the requested tolerance; carries
/// the chambers that failed for partial-result reporting.
class NonConvergenceError : public std::runtime_error {
public:
  NonConvergenceError(std::string message, std::vector<ChamberSpec> failed)
      : std::runtime_error(std::move(message)), failed_chambers(std::move(failed)) {}

  std::vector<ChamberSpec> failed_chambers;
};

/// U = sum_{i<j} m_i m_j / |a_i - a_j|; throws on a coincident pair.
double newtonian_potential(const Configuration& config);

/// How far a configuration is from being central: lambda = -U/I and the
/// maximum defect of lambda a_i = sum_j m_j (a_j - a_i)/r_ij^3, relative to
/// |lambda| max|a_i|.
std::pair<double, double> central_residual(const CenteredConfiguration& config);

/// Reduced collinear potential U(x) = sum m_i m_j / |w_ij . x| and its
/// gradient, valid in every chamber; throws when x lies on a wall.
std::pair<double, Eigen::VectorXd> collinear_potential(const Eigen::VectorXd& x,
                                                       const WeightedRootSystem& roots);

/// Analytic Hessian quadratic form H U(x)(t) = sum m_i m_j w_ij(t)^2 /
/// w_ij(x)^3 as a matrix (fundamental-chamber form, sign-corrected).
Eigen::MatrixXd collinear_hessian(const Eigen::VectorXd& x, const WeightedRootSystem& roots);

/// Chamber containing x; throws if x is within 1e-12 |x| of a wall.
ChamberSpec chamber_of(const Eigen::VectorXd& x, const WeightedRootSystem& roots);

/// Deterministic strictly-interior start point of a chamber: the equally
/// spaced configuration in the chamber's order, centered and scaled to the
/// unit shape sphere.
Eigen::VectorXd chamber_start(const ChamberSpec& chamber, const WeightedRootSystem& roots);

/// Fixed-point iteration y <- normalize(y - eta (grad U + U y)) on the unit
/// sphere, with eta halved whenever a step would increase U, cross a wall,
/// or come within 1e-10 of one. Converges to the chamber's unique critical
/// point.
CollinearSolution spherical_descent(const Eigen::VectorXd& start,
                                    const WeightedRootSystem& roots,
                                    const DescentOptions& opts = {});

/// All n!/2 collinear central configurations (one chamber per antipodal
/// pair), ordered by chamber rank. Throws NonConvergenceError listing the
/// chambers that failed, if any.
std::vector<CollinearSolution> moulton_solve_all(const MassDistribution& masses,
                                                 const DescentOptions& opts = {});

/// Lifts a collinear solution to a centered configuration in d-space
/// (line along the first axis).
CenteredConfiguration lift_collinear(const CollinearSolution& solution,
                                     const MassDistribution& masses, int dim = 3);

/// Degree-5 polynomial in omega = t_1 / (t_1 + t_2) obtained by
/// eliminating the multiplier from the n = 3 collinear system with
/// normalized masses, plus its unique root in (0, 1). Coefficients are
/// ascending.
struct EulerQuintic {
  std::array<double, 6> coefficients;
  double omega = 0.0;
};
EulerQuintic euler_quintic(const MassDistribution& masses);

}  // namespace nbg
