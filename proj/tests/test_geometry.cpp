#include "doctest.h"

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "torus_embed/errors.hpp"
#include "torus_embed/geometry.hpp"
#include "torus_embed/regular_simplex.hpp"

using namespace torus_embed;

namespace {

const double kS3 = std::sqrt(3.0);

PointSet triangle() { return PointSet({{0.0, 0.0}, {1.0, 0.0}, {0.5, kS3 / 2.0}}); }

}  // namespace

TEST_CASE("squared_distances on small inputs") {
  const auto d = squared_distances(PointSet({{0.0}, {3.0}}));
  CHECK(d(0, 1) == 9.0);
  CHECK(d(1, 0) == 9.0);
  CHECK(d(0, 0) == 0.0);

  const auto t = squared_distances(triangle());
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      CHECK(t(i, j) == doctest::Approx(i == j ? 0.0 : 1.0).epsilon(1e-15));
}

TEST_CASE("squared_distances matches a pairwise loop on random points") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const auto pts = oracle::random_points(rng, 4, 3);
    const auto expected = oracle::pairwise_squared(pts);
    CHECK(oracle::max_rel_diff(squared_distances(PointSet(pts)).to_rows(), expected) <= 1e-14);
  }
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(PointSet(std::vector<std::vector<double>>{{0.0, 1.0}, {2.0}}), InputError);
  CHECK_THROWS_AS(squared_distances(PointSet()), InputError);
  CHECK_THROWS_AS(SquaredDistanceMatrix({{0.0, 1.0}, {2.0, 0.0}}), InputError);
  CHECK_THROWS_AS(SquaredDistanceMatrix({{1.0, 1.0}, {1.0, 0.0}}), InputError);
  CHECK_THROWS_AS(SquaredDistanceMatrix({{0.0, -1.0}, {-1.0, 0.0}}), InputError);
  CHECK_THROWS_AS(SquaredDistanceMatrix({{0.0, 1.0}}), InputError);
  CHECK(PointSet({{0.0}, {1.0}}).distinct());
  CHECK_FALSE(PointSet({{0.0}, {1.0}, {0.0}}).distinct());
}

TEST_CASE("centered_gram eigenvalues") {
  SUBCASE("two points") {
    const double d2 = 2.5;
    const auto ev = centered_gram(SquaredDistanceMatrix({{0.0, d2}, {d2, 0.0}})).eigenvalues();
    CHECK(ev(0) == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
    CHECK(ev(1) == doctest::Approx(d2 / 2.0).epsilon(1e-14));
  }
  SUBCASE("all zero") {
    const auto g = centered_gram(SquaredDistanceMatrix(Eigen::MatrixXd::Zero(4, 4)));
    CHECK(g.entries().cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("equilateral triangle") {
    const auto ev = centered_gram(squared_distances(triangle())).eigenvalues();
    CHECK(std::abs(ev(0)) < 1e-15);
    CHECK(ev(1) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(ev(2) == doctest::Approx(0.5).epsilon(1e-14));
  }
}

TEST_CASE("centered_gram agrees with an explicit double-centering and Jacobi") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto pts = oracle::random_points(rng, 6, 4);
    const auto d = oracle::pairwise_squared(pts);
    const auto g = centered_gram(SquaredDistanceMatrix(d));
    const auto expected = oracle::jacobi_eigenvalues(oracle::double_centered(d));
    const auto ev = g.eigenvalues();
    for (std::size_t k = 0; k < expected.size(); ++k) {
      CHECK(std::abs(ev(static_cast<Eigen::Index>(k)) - expected[k]) <= 1e-12 * expected.back());
    }
  }
}

TEST_CASE("centered_gram rows sum to zero") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    const auto n = 2 + trial % 8;
    const auto g = centered_gram(squared_distances(PointSet(oracle::random_points(rng, n, 5, -10, 10))));
    const double lmax = g.eigenvalues().maxCoeff();
    CHECK(g.entries().rowwise().sum().cwiseAbs().maxCoeff() <= 1e-12 * lmax);
  }
}

TEST_CASE("realize reproduces the triangle") {
  const auto x = realize(centered_gram(squared_distances(triangle())));
  CHECK(x.dim() == 2);
  const auto d = squared_distances(x);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j) CHECK(d(i, j) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("realize degenerate and non-Euclidean cases") {
  const auto zero = realize(GramMatrix(Eigen::MatrixXd::Zero(3, 3)));
  CHECK(zero.size() == 3);
  CHECK(zero.dim() == 0);

  Eigen::MatrixXd bad = Eigen::MatrixXd::Zero(2, 2);
  bad(0, 0) = 1.0;
  bad(1, 1) = -1.0;
  CHECK_THROWS_AS(realize(GramMatrix(bad), 1e-9), NotEuclidean);
}

TEST_CASE("realize orders coordinates by decreasing eigenvalue") {
  const PointSet p({{0, 0, 0}, {4, 0, 0}, {0, 1, 0}, {0, 0, 2}});
  const auto x = realize(centered_gram(squared_distances(p)));
  REQUIRE(x.dim() == 3);
  const Eigen::VectorXd var = x.coords().colwise().squaredNorm();
  CHECK(var(0) >= var(1));
  CHECK(var(1) >= var(2));
}

TEST_CASE("property: realize(centered_gram(D)) reproduces D") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 9);
    const std::size_t dim = 1 + static_cast<std::size_t>(trial % 6);
    const PointSet p(oracle::random_points(rng, n, dim, -3, 3));
    const auto d = squared_distances(p);
    const auto back = squared_distances(realize(centered_gram(d), kDefaultRankTol));
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) worst = std::max(worst, oracle::rel_diff(back(i, j), d(i, j)));
    CHECK(worst <= 1e-9);
  }
}

TEST_CASE("property: distances from points satisfy the triangle inequality") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto d = squared_distances(PointSet(oracle::random_points(rng, 6, 3)));
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = 0; j < 6; ++j)
        for (std::size_t k = 0; k < 6; ++k)
          CHECK(std::sqrt(d(i, k)) <= std::sqrt(d(i, j)) + std::sqrt(d(j, k)) + 1e-12);
  }
}

TEST_CASE("triangle-inequality violation is not Euclidean") {
  Eigen::MatrixXd d = Eigen::MatrixXd::Constant(4, 4, 1.0);
  d.diagonal().setZero();
  d(0, 1) = d(1, 0) = 9.0;
  // Independent check that the double-centered matrix really is indefinite.
  oracle::Rows rows(4, std::vector<double>(4));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) rows[i][j] = d(i, j);
  const auto ev = oracle::jacobi_eigenvalues(oracle::double_centered(rows));
  REQUIRE(ev.front() < -1e-9 * ev.back());
  CHECK_THROWS_AS(realize(centered_gram(SquaredDistanceMatrix(d)), 1e-9), NotEuclidean);
}

TEST_CASE("is_simplex") {
  CHECK_FALSE(is_simplex(PointSet({{0.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}})));
  CHECK(is_simplex(triangle()));
  CHECK(is_simplex(regular_simplex(5, 1.0)));
  CHECK(is_simplex(PointSet({{1.0, 2.0}})));
  CHECK_FALSE(is_simplex(PointSet({{1.0}, {1.0}})));
  // Five points in R^3 cannot be affinely independent.
  std::mt19937_64 rng(8);
  CHECK_FALSE(is_simplex(PointSet(oracle::random_points(rng, 5, 3))));
  CHECK_THROWS_AS(is_simplex(PointSet()), InputError);
}

TEST_CASE("is_simplex agrees with a Jacobi rank count") {
  std::mt19937_64 rng(44);
  const auto pts = oracle::random_points(rng, 5, 4);
  const auto ev = oracle::jacobi_eigenvalues(oracle::double_centered(oracle::pairwise_squared(pts)));
  const auto rank = std::count_if(ev.begin(), ev.end(), [&](double v) { return v > 1e-9 * ev.back(); });
  CHECK(rank == 4);
  CHECK(is_simplex(PointSet(pts)));
}

TEST_CASE("centered basis is orthonormal and orthogonal to ones") {
  for (std::size_t n : {1u, 2u, 5u, 9u}) {
    const auto b = centered_basis(n);
    CHECK(b.cols() == static_cast<Eigen::Index>(n - 1));
    if (n > 1) {
      CHECK((b.transpose() * b - Eigen::MatrixXd::Identity(b.cols(), b.cols())).cwiseAbs().maxCoeff() < 1e-14);
      CHECK(b.colwise().sum().cwiseAbs().maxCoeff() < 1e-14);
    }
  }
}

TEST_CASE("realize_above drops eigenpairs at or below the cutoff") {
  const auto g = centered_gram(squared_distances(PointSet({{0.0, 0.0}, {4.0, 0.0}, {0.0, 1e-6}})));
  CHECK(realize_above(g, 1e-14).dim() == 2);
  const auto flat = realize_above(g, 1e-6);
  CHECK(flat.dim() == 1);
  CHECK(std::abs(flat(1, 0) - flat(0, 0)) == doctest::Approx(4.0).epsilon(1e-9));
  CHECK(realize_above(GramMatrix(Eigen::MatrixXd::Zero(2, 2)), 0.0).dim() == 0);
  Eigen::MatrixXd bad = Eigen::MatrixXd::Identity(2, 2);
  bad(1, 1) = -1.0;
  CHECK_THROWS_AS(realize_above(GramMatrix(bad), 0.5), NotEuclidean);
  CHECK_NOTHROW(realize_above(GramMatrix(bad), 2.0));
}
