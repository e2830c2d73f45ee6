#include <doctest.h>

#include <cmath>
#include <numeric>

#include "helpers.hpp"
#include "nbodygeom/jacobi.hpp"

using namespace nbg;

TEST_CASE("zeta coefficients: closed forms") {
  auto c3 = standard_coefficients(MassDistribution({1.0, 1.0, 1.0}));
  CHECK(c3.zetas[0] == doctest::Approx(std::sqrt(1.5)).epsilon(1e-15));
  CHECK(c3.zetas[1] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));

  auto c2 = standard_coefficients(MassDistribution({2.0, 5.0}));
  CHECK(c2.zetas[0] == doctest::Approx(std::sqrt(2.0 * 7.0 / 5.0)).epsilon(1e-15));

  std::mt19937_64 rng(201);
  for (int trial = 0; trial < 20; ++trial) {
    MassDistribution m(testutil::random_masses(rng, 5));
    auto c = standard_coefficients(m);
    const double mbar = m.total();
    CHECK(c.zetas[0] * c.zetas[0] ==
          doctest::Approx(m.mass(0) * mbar / (mbar - m.mass(0))).epsilon(1e-13));
  }
}

TEST_CASE("forward example and isometry") {
  MassDistribution m({1.0, 1.0, 1.0});
  Eigen::MatrixXd pos(3, 3);
  pos << 1, 0, -1, 0, 1, -1, 0, 0, 0;
  CenteredConfiguration config{Configuration(m, pos)};
  auto x = forward(standard_coefficients(m), config);
  CHECK(x.columns(0, 0) == doctest::Approx(std::sqrt(1.5)).epsilon(1e-14));
  CHECK(x.columns(1, 0) == doctest::Approx(0.0));
  CHECK(x.columns(0, 1) == doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-14));
  CHECK(x.columns(1, 1) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(x.columns.squaredNorm() == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(x.columns.squaredNorm() ==
        doctest::Approx(moment_of_inertia(config.config())).epsilon(1e-14));
}

TEST_CASE("tail collision and zero configuration") {
  MassDistribution m({1.0, 2.0, 3.0});
  Eigen::MatrixXd pos(3, 3);
  pos.col(0) << 5, 0, 0;
  pos.col(1) << -1, 0, 0;
  pos.col(2) << -1, 0, 0;
  auto centered = center(Configuration(m, pos)).first;
  auto x = forward(standard_coefficients(m), centered);
  CHECK(x.columns.col(1).norm() <= 1e-14);

  CenteredConfiguration zero{Configuration(m, Eigen::MatrixXd::Zero(3, 3))};
  CHECK(forward(standard_coefficients(m), zero).columns.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("forward/inverse round trip, equivariance, matrix identities") {
  std::mt19937_64 rng(202);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 4);
    MassDistribution m(testutil::random_masses(rng, n));
    auto coeffs = standard_coefficients(m);
    auto config = testutil::random_centered(rng, m, 3);

    auto x = forward(coeffs, config);
    auto back = inverse(coeffs, x);
    const double scale = config.positions().cwiseAbs().maxCoeff();
    CHECK((back.positions() - config.positions()).cwiseAbs().maxCoeff() <= 1e-12 * scale);

    // isometry
    CHECK(x.columns.squaredNorm() ==
          doctest::Approx(moment_of_inertia(config.config())).epsilon(1e-12));

    // diagonal rotation equivariance
    Eigen::MatrixXd g = testutil::random_orthogonal(rng, 3);
    CenteredConfiguration rotated{Configuration(m, g * config.positions())};
    auto gx = forward(coeffs, rotated);
    CHECK((gx.columns - g * x.columns).cwiseAbs().maxCoeff() <=
          1e-12 * (1.0 + x.columns.cwiseAbs().maxCoeff()));

    // matrix-level inverse: forward o inverse on Jacobi side is the identity
    Eigen::MatrixXd prod = coeffs.forward_matrix * coeffs.inverse_matrix;
    CHECK((prod - Eigen::MatrixXd::Identity(n - 1, n - 1)).cwiseAbs().maxCoeff() <= 1e-12);

    // row square sums of the inverse matrix: sum_j l_ij^2 = (mbar - m_i)/(mbar m_i)
    for (int i = 0; i < n; ++i) {
      const double expected = (m.total() - m.mass(i)) / (m.total() * m.mass(i));
      CHECK(coeffs.inverse_matrix.row(i).squaredNorm() ==
            doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("single nonzero Jacobi column gives the two-cluster pattern") {
  std::mt19937_64 rng(203);
  const int n = 5;
  MassDistribution m(testutil::random_masses(rng, n));
  auto coeffs = standard_coefficients(m);
  for (int k = 0; k < n - 1; ++k) {
    JacobiMatrix x{Eigen::MatrixXd::Zero(3, n - 1)};
    x.columns(0, k) = 1.0;
    auto config = inverse(coeffs, x);
    // bodies before k sit at the origin, bodies after k coincide
    for (int i = 0; i < k; ++i) CHECK(config.positions().col(i).norm() <= 1e-13);
    for (int i = k + 2; i < n; ++i)
      CHECK((config.positions().col(i) - config.positions().col(k + 1)).norm() <= 1e-13);
  }
}

TEST_CASE("basic transformation: two-body example and kinematic invariance") {
  MassDistribution m({1.0, 1.0});
  Eigen::MatrixXd pos(3, 2);
  pos << 1, -1, 0, 0, 0, 0;
  auto out = basic_rho(0, 1, Configuration(m, pos));
  CHECK(out.positions(0, 0) == doctest::Approx(2.0));
  CHECK(out.masses.mass(0) == doctest::Approx(0.5));
  CHECK(out.positions.col(1).norm() <= 1e-15);
  CHECK(out.masses.mass(1) == doctest::Approx(2.0));

  std::mt19937_64 rng(204);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 3);
    MassDistribution mm(testutil::random_masses(rng, n));
    Eigen::MatrixXd p = testutil::random_matrix(rng, 3, n);
    Eigen::MatrixXd v = testutil::random_matrix(rng, 3, n);
    auto before = kinematic_quantities(ConfigurationState(Configuration(mm, p), v));

    const int i = static_cast<int>(rng() % n);
    int j = static_cast<int>(rng() % n);
    if (j == i) j = (j + 1) % n;
    auto tp = basic_rho(i, j, Configuration(mm, p));
    auto tv = basic_rho(i, j, Configuration(mm, v));
    auto after = kinematic_quantities(ConfigurationState(tp, tv.positions));

    CHECK(after.moment_I == doctest::Approx(before.moment_I).epsilon(1e-12));
    CHECK(after.kinetic_T == doctest::Approx(before.kinetic_T).epsilon(1e-12));
    CHECK((after.angular - before.angular).cwiseAbs().maxCoeff() <=
          1e-12 * (1.0 + before.angular.cwiseAbs().maxCoeff()));

    // coincident pair sends the relative body to the origin
    Eigen::MatrixXd q = p;
    q.col(i) = q.col(j);
    CHECK(basic_rho(i, j, Configuration(mm, q)).positions.col(i).norm() == 0.0);
  }
}

TEST_CASE("mass normalization") {
  auto out = mass_normalize(Configuration(MassDistribution({4.0, 4.0}),
                                          (Eigen::MatrixXd(3, 2) << 1, 0, 0, 0, 0, 0).finished()));
  CHECK(out.positions(0, 0) == doctest::Approx(2.0));
  CHECK(out.masses.mass(0) == 1.0);
  CHECK(out.masses.mass(1) == 1.0);

  std::mt19937_64 rng(205);
  MassDistribution m(testutil::random_masses(rng, 4));
  Configuration c = testutil::random_configuration(rng, m, 3);
  Configuration u = mass_normalize(c);
  CHECK(moment_of_inertia(u) == doctest::Approx(moment_of_inertia(c)).epsilon(1e-13));
  // unit masses: identity on positions
  Configuration ones(MassDistribution({1.0, 1.0, 1.0}), testutil::random_matrix(rng, 3, 3));
  CHECK((mass_normalize(ones).positions - ones.positions).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("permutation covariance") {
  std::mt19937_64 rng(206);
  MassDistribution m(testutil::random_masses(rng, 4));
  Eigen::MatrixXd p = testutil::random_matrix(rng, 3, 4);
  Eigen::MatrixXd v = testutil::random_matrix(rng, 3, 4);
  Configuration c(m, p);

  std::vector<int> identity = {0, 1, 2, 3};
  CHECK((permute(identity, c).positions - p).cwiseAbs().maxCoeff() == 0.0);

  std::vector<int> swap = {1, 0, 2, 3};
  auto twice = permute(swap, permute(swap, c));
  CHECK((twice.positions - p).cwiseAbs().maxCoeff() == 0.0);

  std::vector<int> sigma = {2, 0, 3, 1};
  auto before = kinematic_quantities(ConfigurationState(c, v));
  auto after = kinematic_quantities(
      ConfigurationState(permute(sigma, c), permute(sigma, Configuration(m, v)).positions));
  CHECK((after.angular - before.angular).cwiseAbs().maxCoeff() <= 1e-12);

  CHECK_THROWS_AS(permute({0, 0, 1, 2}, c), std::invalid_argument);
}

TEST_CASE("jacobi transformation predicate") {
  CHECK(is_jacobi_transformation(Eigen::MatrixXd::Identity(3, 3)));
  std::mt19937_64 rng(207);
  Eigen::MatrixXd q = testutil::random_orthogonal(rng, 4);
  CHECK(is_jacobi_transformation(q));
  Eigen::MatrixXd d = Eigen::MatrixXd::Identity(3, 3);
  d(0, 0) = 2.0;
  CHECK_FALSE(is_jacobi_transformation(d));

  // right action by an orthogonal matrix preserves the kinematics of the
  // Jacobi side
  MassDistribution m(testutil::random_masses(rng, 5));
  auto coeffs = standard_coefficients(m);
  auto config = testutil::random_centered(rng, m, 3);
  Eigen::MatrixXd vel = testutil::random_matrix(rng, 3, 5);
  vel = center(Configuration(m, vel)).first.positions();
  auto x = forward(coeffs, config);
  auto xv = forward(coeffs, CenteredConfiguration(Configuration(m, vel)));

  auto kin_of = [](const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    std::vector<double> ones(a.cols(), 1.0);
    return kinematic_quantities(
        ConfigurationState(Configuration(MassDistribution(ones), a), b));
  };
  Eigen::MatrixXd phi = testutil::random_orthogonal(rng, 4);
  auto before = kin_of(x.columns, xv.columns);
  auto after = kin_of(x.columns * phi, xv.columns * phi);
  CHECK(after.moment_I == doctest::Approx(before.moment_I).epsilon(1e-12));
  CHECK(after.kinetic_T == doctest::Approx(before.kinetic_T).epsilon(1e-12));
  CHECK((after.angular - before.angular).cwiseAbs().maxCoeff() <=
        1e-12 * (1.0 + before.angular.cwiseAbs().maxCoeff()));
}

TEST_CASE("composition of basic transformations reproduces the standard one") {
  std::mt19937_64 rng(208);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 4);
    MassDistribution m(testutil::random_masses(rng, n));
    Configuration free = testutil::random_configuration(rng, m, 3);
    auto [centered, com] = center(free);
    auto x = forward(standard_coefficients(m), centered);

    Configuration acc = free;
    for (int k = n - 2; k >= 0; --k) acc = basic_rho(k, n - 1, acc);
    acc = mass_normalize(acc);

    const double scale = 1.0 + x.columns.cwiseAbs().maxCoeff();
    for (int k = 0; k < n - 1; ++k)
      CHECK((acc.positions.col(k) - x.columns.col(k)).norm() <= 1e-12 * scale);
    // the last slot carries the center of mass scaled by sqrt(total mass)
    CHECK((acc.positions.col(n - 1) - std::sqrt(m.total()) * com).norm() <=
          1e-12 * (1.0 + com.norm()));

    // linear momentum survives in the same slot: p = sqrt(mbar) * slot-n
    // velocity of the composed transform applied to the velocities
    Eigen::MatrixXd vel = testutil::random_matrix(rng, 3, n);
    Eigen::VectorXd p = Eigen::VectorXd::Zero(3);
    for (int i = 0; i < n; ++i) p += m.mass(i) * vel.col(i);
    Configuration vacc(m, vel);
    for (int k = n - 2; k >= 0; --k) vacc = basic_rho(k, n - 1, vacc);
    vacc = mass_normalize(vacc);
    CHECK((std::sqrt(m.total()) * vacc.positions.col(n - 1) - p).norm() <=
          1e-12 * (1.0 + p.norm()));
  }
}
