#include "nbodygeom/central.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "nbodygeom/jacobi.hpp"

namespace nbg {

bool ChamberSpec::canonical() const {
  for (std::size_t k = 0; k < order.size(); ++k)
    if (order[k] != static_cast<int>(k)) return false;
  return true;
}

int ChamberSpec::sign(int i, int j) const {
  for (int body : order) {
    if (body == i) return +1;
    if (body == j) return -1;
  }
  throw std::invalid_argument("ChamberSpec::sign: index not in ordering");
}

long long ChamberSpec::rank() const {
  const int n = static_cast<int>(order.size());
  long long r = 0;
  long long factorial = 1;
  for (int k = 2; k <= n; ++k) factorial *= k;
  for (int k = 0; k < n; ++k) {
    factorial /= (n - k);
    int smaller = 0;
    for (int l = k + 1; l < n; ++l)
      if (order[l] < order[k]) ++smaller;
    r += smaller * factorial;
  }
  return r;
}

namespace {

// Flattened pair data for fast repeated evaluation of the reduced
// potential: row p of W is the root w_ij of the p-th pair (i < j).
struct PairTable {
  std::vector<std::pair<int, int>> pairs;
  Eigen::VectorXd mass_products;
  Eigen::MatrixXd w;  // npairs x (n-1)

  explicit PairTable(const WeightedRootSystem& roots) {
    const int n = roots.bodies();
    const int npairs = n * (n - 1) / 2;
    pairs.reserve(npairs);
    mass_products.resize(npairs);
    w.resize(npairs, n - 1);
    int p = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j, ++p) {
        pairs.emplace_back(i, j);
        mass_products[p] = roots.masses().mass(i) * roots.masses().mass(j);
        w.row(p) = roots.root(i, j);
      }
  }

  double potential(const Eigen::VectorXd& omegas) const {
    double u = 0.0;
    for (int p = 0; p < omegas.size(); ++p) u += mass_products[p] / std::abs(omegas[p]);
    return u;
  }

  Eigen::VectorXd gradient(const Eigen::VectorXd& omegas) const {
    Eigen::VectorXd coeff(omegas.size());
    for (int p = 0; p < omegas.size(); ++p) {
      const double s = omegas[p] > 0 ? 1.0 : -1.0;
      coeff[p] = -mass_products[p] * s / (omegas[p] * omegas[p]);
    }
    return w.transpose() * coeff;
  }

  Eigen::MatrixXd hessian(const Eigen::VectorXd& omegas) const {
    const int m = static_cast<int>(w.cols());
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(m, m);
    for (int p = 0; p < omegas.size(); ++p) {
      const double s = omegas[p] > 0 ? 1.0 : -1.0;
      const double c = 2.0 * mass_products[p] * s / std::pow(omegas[p], 3);
      h += c * w.row(p).transpose() * w.row(p);
    }
    return h;
  }
};

constexpr double kWallGuard = 1e-10;  // descent step rejection threshold

void check_not_on_wall(const Eigen::VectorXd& omegas, const Eigen::VectorXd& x) {
  const double floor = 1e-14 * x.norm();
  for (int p = 0; p < omegas.size(); ++p)
    if (std::abs(omegas[p]) <= floor)
      throw std::domain_error("collinear point lies on a collision wall");
}

// Line coordinates a_1..a_n with mass-weighted barycenter zero, integrated
// from the simple-root gaps; works for transformed root systems as well.
Eigen::VectorXd recover_positions(const Eigen::VectorXd& x, const WeightedRootSystem& roots) {
  const int n = roots.bodies();
  Eigen::VectorXd a(n);
  a[0] = 0.0;
  for (int k = 0; k + 1 < n; ++k) a[k + 1] = a[k] - roots.root(k, k + 1).dot(x);
  double com = 0.0;
  for (int i = 0; i < n; ++i) com += roots.masses().mass(i) * a[i];
  a.array() -= com / roots.masses().total();
  return a;
}

Eigen::VectorXd gaps_of(const Eigen::VectorXd& x, const WeightedRootSystem& roots) {
  const int n = roots.bodies();
  Eigen::VectorXd t(n - 1);
  for (int k = 0; k + 1 < n; ++k) t[k] = roots.root(k, k + 1).dot(x);
  return t;
}

}  // namespace

double newtonian_potential(const Configuration& config) {
  const int n = config.bodies();
  double u = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double r = (config.positions.col(i) - config.positions.col(j)).norm();
      if (r == 0.0)
        throw std::domain_error("newtonian_potential: collision singularity");
      u += config.masses.mass(i) * config.masses.mass(j) / r;
    }
  return u;
}

std::pair<double, double> central_residual(const CenteredConfiguration& config) {
  const int n = config.bodies();
  const auto& a = config.positions();
  const double u = newtonian_potential(config.config());
  const double inertia = moment_of_inertia(config.config());
  const double lambda = -u / inertia;

  double worst = 0.0;
  double amax = 0.0;
  for (int i = 0; i < n; ++i) amax = std::max(amax, a.col(i).norm());
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd accel = Eigen::VectorXd::Zero(config.dim());
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const Eigen::VectorXd diff = a.col(j) - a.col(i);
      accel += config.masses().mass(j) * diff / std::pow(diff.norm(), 3);
    }
    worst = std::max(worst, (lambda * a.col(i) - accel).norm());
  }
  return {worst / (std::abs(lambda) * amax), lambda};
}

std::pair<double, Eigen::VectorXd> collinear_potential(const Eigen::VectorXd& x,
                                                       const WeightedRootSystem& roots) {
  PairTable table(roots);
  Eigen::VectorXd omegas = table.w * x;
  check_not_on_wall(omegas, x);
  return {table.potential(omegas), table.gradient(omegas)};
}

Eigen::MatrixXd collinear_hessian(const Eigen::VectorXd& x, const WeightedRootSystem& roots) {
  PairTable table(roots);
  Eigen::VectorXd omegas = table.w * x;
  check_not_on_wall(omegas, x);
  const int m = static_cast<int>(x.size());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(m, m);
  for (int p = 0; p < omegas.size(); ++p) {
    const double s = omegas[p] > 0 ? 1.0 : -1.0;
    const double c = table.mass_products[p] * s / std::pow(omegas[p], 3);
    h += c * table.w.row(p).transpose() * table.w.row(p);
  }
  return h;
}

ChamberSpec chamber_of(const Eigen::VectorXd& x, const WeightedRootSystem& roots) {
  PairTable table(roots);
  Eigen::VectorXd omegas = table.w * x;
  const double floor = 1e-12 * x.norm();
  for (int p = 0; p < omegas.size(); ++p)
    if (std::abs(omegas[p]) <= floor)
      throw std::domain_error("chamber_of: point lies on a collision wall");

  Eigen::VectorXd a = recover_positions(x, roots);
  ChamberSpec chamber;
  chamber.order.resize(roots.bodies());
  std::iota(chamber.order.begin(), chamber.order.end(), 0);
  std::sort(chamber.order.begin(), chamber.order.end(),
            [&a](int lhs, int rhs) { return a[lhs] > a[rhs]; });
  return chamber;
}

Eigen::VectorXd chamber_start(const ChamberSpec& chamber, const WeightedRootSystem& roots) {
  const int n = roots.bodies();
  if (static_cast<int>(chamber.order.size()) != n)
    throw std::invalid_argument("chamber_start: ordering length mismatch");

  // Equally spaced bodies in the chamber's order.
  Eigen::VectorXd a(n);
  for (int k = 0; k < n; ++k) a[chamber.order[k]] = static_cast<double>(n - 1 - k);

  // Solve the simple-root system w_{k,k+1} . x = a_k - a_{k+1} for x, then
  // scale onto the unit sphere.
  Eigen::MatrixXd simple(n - 1, n - 1);
  Eigen::VectorXd gaps(n - 1);
  for (int k = 0; k + 1 < n; ++k) {
    simple.row(k) = roots.root(k, k + 1);
    gaps[k] = a[k] - a[k + 1];
  }
  Eigen::VectorXd x = simple.fullPivLu().solve(gaps);
  return x.normalized();
}

CollinearSolution spherical_descent(const Eigen::VectorXd& start,
                                    const WeightedRootSystem& roots,
                                    const DescentOptions& opts) {
  PairTable table(roots);
  Eigen::VectorXd x = start.normalized();

  Eigen::VectorXd omegas = table.w * x;
  const double floor = 1e-12;
  std::vector<int> pattern(omegas.size());
  for (int p = 0; p < omegas.size(); ++p) {
    if (std::abs(omegas[p]) <= floor)
      throw std::domain_error("spherical_descent: start lies on a collision wall");
    pattern[p] = omegas[p] > 0 ? +1 : -1;
  }

  auto in_chamber = [&pattern](const Eigen::VectorXd& om) {
    for (int p = 0; p < om.size(); ++p) {
      if (std::abs(om[p]) < kWallGuard) return false;
      if ((om[p] > 0 ? +1 : -1) != pattern[p]) return false;
    }
    return true;
  };

  auto fail = [&roots](const std::string& what, const Eigen::VectorXd& where) {
    std::ostringstream msg;
    msg << "spherical_descent: " << what;
    std::vector<ChamberSpec> failed;
    try {
      failed.push_back(chamber_of(where, roots));
    } catch (const std::domain_error&) {
    }
    throw NonConvergenceError(msg.str(), std::move(failed));
  };

  double u = table.potential(omegas);
  Eigen::VectorXd grad = table.gradient(omegas);
  int iterations = 0;
  const int m = static_cast<int>(x.size());

  // Phase 1: damped first-order iteration. Monotone decrease of U cannot
  // certify progress much below sqrt(machine eps), since the per-step
  // decrease is quadratic in the distance to the critical point, so this
  // phase only targets a coarse tolerance.
  const double coarse = std::max(opts.tol, 1e-6);
  for (; iterations < opts.max_iter; ++iterations) {
    Eigen::VectorXd residual = grad + u * x;
    if (residual.norm() <= coarse * u) break;

    double eta = opts.damping;
    int rejections = 0;
    while (true) {
      Eigen::VectorXd candidate = (x - eta * residual).normalized();
      Eigen::VectorXd cand_omegas = table.w * candidate;
      bool accept = in_chamber(cand_omegas);
      double cand_u = 0.0;
      if (accept) {
        cand_u = table.potential(cand_omegas);
        accept = cand_u <= u;
      }
      if (accept) {
        x = std::move(candidate);
        omegas = std::move(cand_omegas);
        u = cand_u;
        grad = table.gradient(omegas);
        break;
      }
      eta *= 0.5;
      if (++rejections > 50)
        fail("step rejected 50 times near a chamber wall", x);
    }
  }
  if (iterations >= opts.max_iter) {
    std::ostringstream msg;
    msg << "max_iter exceeded, last residual " << (grad + u * x).norm() / u;
    fail(msg.str(), x);
  }

  // Phase 2: projected Newton on the sphere for the full tolerance. The
  // linearization of grad U + U x on the tangent space at x is
  // P (hess U + U Id) P with P = Id - x x^t; the rank-one x x^t term keeps
  // the system invertible on the normal direction without moving it.
  if (opts.tol < coarse) {
    bool converged = false;
    for (int step = 0; step < 100 && iterations < opts.max_iter; ++step, ++iterations) {
      Eigen::VectorXd residual = grad + u * x;
      if (residual.norm() <= opts.tol * u) {
        converged = true;
        break;
      }
      Eigen::MatrixXd proj = Eigen::MatrixXd::Identity(m, m) - x * x.transpose();
      Eigen::MatrixXd system = proj * (table.hessian(omegas) + u * proj) * proj +
                               x * x.transpose();
      Eigen::VectorXd delta = system.fullPivLu().solve(residual);

      double scale = 1.0;
      bool moved = false;
      for (int halvings = 0; halvings <= 50; ++halvings, scale *= 0.5) {
        Eigen::VectorXd candidate = (x - scale * delta).normalized();
        Eigen::VectorXd cand_omegas = table.w * candidate;
        if (!in_chamber(cand_omegas)) continue;
        Eigen::VectorXd cand_grad = table.gradient(cand_omegas);
        const double cand_u = table.potential(cand_omegas);
        if ((cand_grad + cand_u * candidate).norm() < residual.norm()) {
          x = std::move(candidate);
          omegas = std::move(cand_omegas);
          u = cand_u;
          grad = std::move(cand_grad);
          moved = true;
          break;
        }
      }
      if (!moved) break;  // residual at its floating-point floor
    }
    if (!converged && (grad + u * x).norm() > opts.tol * u) {
      std::ostringstream msg;
      msg << "Newton polish stalled at residual " << (grad + u * x).norm() / u;
      fail(msg.str(), x);
    }
  }

  CollinearSolution out;
  out.x = x;
  out.chamber = chamber_of(x, roots);
  out.potential = u;
  out.lambda = -u;
  out.residual = (grad + u * x).norm();
  out.iterations = iterations;
  out.gaps = gaps_of(x, roots);
  out.positions = recover_positions(x, roots);
  return out;
}

std::vector<CollinearSolution> moulton_solve_all(const MassDistribution& masses,
                                                 const DescentOptions& opts) {
  const int n = masses.size();
  WeightedRootSystem roots = standard_roots(masses);

  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);

  std::vector<CollinearSolution> solutions;
  std::vector<ChamberSpec> failed;
  do {
    // One representative per antipodal pair: the reversed ordering is the
    // same collinear shape.
    std::vector<int> reversed(perm.rbegin(), perm.rend());
    if (!std::lexicographical_compare(perm.begin(), perm.end(), reversed.begin(),
                                      reversed.end()))
      continue;
    ChamberSpec chamber{perm};
    try {
      solutions.push_back(spherical_descent(chamber_start(chamber, roots), roots, opts));
    } catch (const NonConvergenceError&) {
      failed.push_back(chamber);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  if (!failed.empty()) {
    std::ostringstream msg;
    msg << "moulton_solve_all: " << failed.size() << " chamber(s) failed to converge:";
    for (const auto& chamber : failed) {
      msg << " [";
      for (std::size_t k = 0; k < chamber.order.size(); ++k)
        msg << (k ? "," : "") << chamber.order[k];
      msg << "]";
    }
    throw NonConvergenceError(msg.str(), failed);
  }

  std::sort(solutions.begin(), solutions.end(),
            [](const CollinearSolution& lhs, const CollinearSolution& rhs) {
              return lhs.chamber.rank() < rhs.chamber.rank();
            });
  return solutions;
}

CenteredConfiguration lift_collinear(const CollinearSolution& solution,
                                     const MassDistribution& masses, int dim) {
  Eigen::MatrixXd positions = Eigen::MatrixXd::Zero(dim, masses.size());
  positions.row(0) = solution.positions.transpose();
  return CenteredConfiguration(Configuration(masses, std::move(positions)));
}

EulerQuintic euler_quintic(const MassDistribution& masses) {
  if (masses.size() != 3)
    throw std::invalid_argument("euler_quintic: defined for n = 3");
  const double total = masses.total();
  const double m1 = masses.mass(0) / total;
  const double m2 = masses.mass(1) / total;
  const double m3 = masses.mass(2) / total;

  // With t1 = omega, t2 = 1 - omega the two collinear equations are linear
  // in the multiplier; cross-multiplying and clearing omega^2 (1-omega)^2
  // leaves the degree-5 polynomial accumulated below.
  std::array<double, 6> c{};
  auto add = [&c](double scale, std::initializer_list<double> poly, int shift) {
    int k = shift;
    for (double v : poly) c[k++] += scale * v;
  };
  // (1-w)^3 = 1 - 3w + 3w^2 - w^3 ; (1-w)^2 = 1 - 2w + w^2
  add(-(m1 + m2), {1, -3, 3, -1}, 0);       // -(m1+m2)(1-w)^3
  add(m3, {1, -1}, 2);                      // m3 w^2 (1-w)
  add(-m3, {1, -3, 3, -1}, 2);              // -m3 w^2 (1-w)^3
  add(-m1, {1, -2, 1}, 1);                  // -m1 w (1-w)^2
  add(m2 + m3, {1}, 3);                     // (m2+m3) w^3
  add(m1, {1, -2, 1}, 3);                   // m1 w^3 (1-w)^2

  auto eval = [&c](double w) {
    double value = 0.0;
    for (int k = 5; k >= 0; --k) value = value * w + c[k];
    return value;
  };
  auto deriv = [&c](double w) {
    double value = 0.0;
    for (int k = 5; k >= 1; --k) value = value * w + k * c[k];
    return value;
  };

  // P(0) = -(m1+m2) < 0, P(1) = m2+m3 > 0: bisect, then Newton polish.
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (eval(mid) < 0.0 ? lo : hi) = mid;
  }
  double omega = 0.5 * (lo + hi);
  for (int it = 0; it < 8; ++it) {
    const double step = eval(omega) / deriv(omega);
    const double next = omega - step;
    if (next <= 0.0 || next >= 1.0) break;
    omega = next;
    if (std::abs(step) < 1e-16) break;
  }
  return {c, omega};
}

}  // namespace nbg
