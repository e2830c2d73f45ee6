#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "nbodygeom/invariants.hpp"
#include "nbodygeom/jacobi.hpp"

using namespace nbg;

TEST_CASE("axis-aligned example") {
  Eigen::MatrixXd x(3, 3);
  x << 1, 0, 0, 0, 2, 0, 0, 0, 3;
  auto inv = jacobi_invariants(x);
  CHECK(inv.count() == 3);
  CHECK(inv.at(1) == doctest::Approx(14.0).epsilon(1e-15));
  CHECK(inv.at(2) == doctest::Approx(49.0).epsilon(1e-15));
  CHECK(inv.at(3) == doctest::Approx(36.0).epsilon(1e-15));
  CHECK(inv.at(4) == 0.0);
}

TEST_CASE("parallel columns kill I2") {
  Eigen::MatrixXd x(3, 2);
  x.col(0) << 1, 2, 3;
  x.col(1) = 2.0 * x.col(0);
  auto inv = jacobi_invariants(x);
  CHECK(inv.at(2) <= 1e-12 * inv.at(1) * inv.at(1));
}

TEST_CASE("random 3x3 matrix matches cross/triple-product forms") {
  std::mt19937_64 rng(301);
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::MatrixXd x = testutil::random_matrix(rng, 3, 3);
    auto inv = jacobi_invariants(x);
    Eigen::Vector3d a = x.col(0), b = x.col(1), c = x.col(2);
    const double i1 = a.squaredNorm() + b.squaredNorm() + c.squaredNorm();
    const double i2 = a.cross(b).squaredNorm() + a.cross(c).squaredNorm() +
                      b.cross(c).squaredNorm();
    const double triple = a.cross(b).dot(c);
    CHECK(inv.at(1) == doctest::Approx(i1).epsilon(1e-12));
    CHECK(inv.at(2) == doctest::Approx(i2).epsilon(1e-12));
    CHECK(inv.at(3) == doctest::Approx(triple * triple).epsilon(1e-11));
  }
}

TEST_CASE("mass-weighted form agrees with the Jacobi form") {
  std::mt19937_64 rng(302);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 2);
    MassDistribution m(testutil::random_masses(rng, n));
    auto config = testutil::random_centered(rng, m, 3);
    auto jac = jacobi_invariants(forward(standard_coefficients(m), config).columns);
    auto sym = mass_weighted_invariants(config);
    CHECK(sym.count() == std::min(3, n - 1));
    for (int k = 1; k <= sym.count(); ++k)
      CHECK(sym.at(k) == doctest::Approx(jac.at(k)).epsilon(1e-11));
  }
}

TEST_CASE("rank degeneracies") {
  std::mt19937_64 rng(303);
  MassDistribution m3(testutil::random_masses(rng, 3));
  Eigen::MatrixXd line = Eigen::MatrixXd::Zero(3, 3);
  line(0, 0) = 1.0;
  line(0, 1) = -2.0;
  line(0, 2) = 0.5;
  auto collinear = center(Configuration(m3, line)).first;
  auto inv = mass_weighted_invariants(collinear);
  CHECK(inv.at(2) <= 1e-13);
  CHECK(inv.at(3) == 0.0);

  MassDistribution m4(testutil::random_masses(rng, 4));
  Eigen::MatrixXd plane = testutil::random_matrix(rng, 3, 4);
  plane.row(2).setZero();
  auto coplanar = center(Configuration(m4, plane)).first;
  CHECK(mass_weighted_invariants(coplanar).at(3) <= 1e-13);
}

TEST_CASE("triangle area: degenerate, equilateral, right triangle") {
  MassDistribution equal({1.0, 1.0, 1.0});
  Eigen::MatrixXd line = Eigen::MatrixXd::Zero(3, 3);
  line(0, 0) = -1.0;
  line(0, 2) = 1.0;
  CHECK(triangle_area(CenteredConfiguration(Configuration(equal, line))) <= 1e-14);

  const double s = 1.7;
  Eigen::MatrixXd tri(3, 3);
  tri.col(0) << 0, 0, 0;
  tri.col(1) << s, 0, 0;
  tri.col(2) << s / 2, s * std::sqrt(3.0) / 2.0, 0;
  auto eq = center(Configuration(equal, tri)).first;
  const double area = triangle_area(eq);
  CHECK(area == doctest::Approx(std::sqrt(3.0) * s * s / 4.0).epsilon(1e-13));

  // Jacobi identity |x1 x x2| = 2 sqrt(m1 m2 m3 / mbar) A
  auto x = forward(standard_coefficients(equal), eq);
  Eigen::Vector3d x1 = x.columns.col(0), x2 = x.columns.col(1);
  CHECK(x1.cross(x2).norm() ==
        doctest::Approx(2.0 * std::sqrt(1.0 / 3.0) * area).epsilon(1e-12));

  MassDistribution any({0.7, 1.1, 2.9});
  Eigen::MatrixXd right(3, 3);
  right.col(0) << 0, 0, 0;
  right.col(1) << 3, 0, 0;
  right.col(2) << 0, 4, 0;
  CHECK(triangle_area(center(Configuration(any, right)).first) ==
        doctest::Approx(6.0).epsilon(1e-13));
}

TEST_CASE("tetrahedron volume: degenerate, regular, axis-aligned") {
  MassDistribution equal({1.0, 1.0, 1.0, 1.0});
  std::mt19937_64 rng(304);
  Eigen::MatrixXd flat = testutil::random_matrix(rng, 3, 4);
  flat.row(2).setZero();
  CHECK(tetra_volume(center(Configuration(equal, flat)).first) <= 1e-13);

  // unit regular tetrahedron
  Eigen::MatrixXd reg(3, 4);
  reg.col(0) << 0, 0, 0;
  reg.col(1) << 1, 0, 0;
  reg.col(2) << 0.5, std::sqrt(3.0) / 2.0, 0;
  reg.col(3) << 0.5, std::sqrt(3.0) / 6.0, std::sqrt(2.0 / 3.0);
  auto creg = center(Configuration(equal, reg)).first;
  const double vol = tetra_volume(creg);
  CHECK(vol == doctest::Approx(std::sqrt(2.0) / 12.0).epsilon(1e-12));

  // Jacobi identity |(x1 x x2).x3| = 6 sqrt(prod m / mbar) V
  auto x = forward(standard_coefficients(equal), creg);
  Eigen::Vector3d x1 = x.columns.col(0), x2 = x.columns.col(1), x3 = x.columns.col(2);
  CHECK(std::abs(x1.cross(x2).dot(x3)) ==
        doctest::Approx(6.0 * std::sqrt(1.0 / 4.0) * vol).epsilon(1e-12));

  Eigen::MatrixXd axis(3, 4);
  axis.col(0) << 0, 0, 0;
  axis.col(1) << 1, 0, 0;
  axis.col(2) << 0, 1, 0;
  axis.col(3) << 0, 0, 1;
  MassDistribution any({0.4, 1.2, 2.5, 0.9});
  CHECK(tetra_volume(center(Configuration(any, axis)).first) ==
        doctest::Approx(1.0 / 6.0).epsilon(1e-13));
}
