#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "oracles.hpp"
#include "torus_embed/delta_embed.hpp"
#include "torus_embed/errors.hpp"

using namespace torus_embed;

namespace {

std::vector<double> random_spread(std::mt19937_64& rng, std::size_t count, double min_gap, double lo = 0.0,
                                  double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  for (;;) {
    std::vector<double> xs(count);
    for (auto& x : xs) x = u(rng);
    std::vector<double> sorted = xs;
    std::sort(sorted.begin(), sorted.end());
    bool ok = true;
    for (std::size_t i = 1; i < sorted.size(); ++i) ok = ok && sorted[i] - sorted[i - 1] >= min_gap;
    if (ok) return xs;
  }
}

void check_split(const DeltaEmbedding& e, const PointSet& x) {
  const double budget = e.delta / static_cast<double>(e.used_coordinates.size());
  const BigInt n_sq = e.params.n * e.params.n;
  for (std::size_t k = 0; k < e.used_coordinates.size(); ++k) {
    std::vector<double> translated;
    std::vector<BigInt> idx;
    for (std::size_t i = 0; i < x.size(); ++i) {
      translated.push_back(x(i, e.used_coordinates[k]) - e.offsets[k]);
      idx.push_back(e.embedding.points[i].indices[k]);
      CHECK(idx.back() >= 0);
      CHECK(idx.back() <= n_sq);
      CHECK(idx.back() < e.params.m);
    }
    const auto split = oracle::split_errors(translated, idx, e.params.n0, e.params.n, e.params.m, e.params.r);
    CHECK(split.offset < std::numeric_limits<double>::infinity());
    CHECK(split.snap < budget / 2.0);
    CHECK(split.chord < budget / 2.0);
  }
}

}  // namespace

TEST_CASE("one_dim_params examples") {
  const std::vector<double> unit{0.0, 1.0};
  const auto p = one_dim_params(unit, 0.1);
  CHECK(p.n0 == 1);
  CHECK(p.n == 63);
  CHECK(p.m == 250047);
  CHECK(p.r == doctest::Approx(63.0 / (2.0 * std::numbers::pi)).epsilon(1e-15));

  const auto loose = one_dim_params(unit, 2.0 * std::numbers::pi);
  CHECK(loose.n == 2);
  CHECK(loose.m == 8);

  const std::vector<double> spread{0.0, 0.5, 10.0};
  CHECK(one_dim_params(spread, 1.0).n0 == 10);
  const std::vector<double> tight{3.0, 3.25, 3.5};
  CHECK(one_dim_params(tight, 1.0).n0 == 4);
}

TEST_CASE("one_dim_params errors") {
  const std::vector<double> single{1.0};
  CHECK_THROWS_AS(one_dim_params(single, 0.1), TrivialInput);
  const std::vector<double> dup{0.0, 1.0, 1.0};
  CHECK_THROWS_AS(one_dim_params(dup, 0.1), InputError);
  const std::vector<double> ok{0.0, 1.0};
  CHECK_THROWS_AS(one_dim_params(ok, 0.0), InputError);
  CHECK_THROWS_AS(one_dim_params(ok, -1.0), InputError);
}

TEST_CASE("grid_scale and grid_resolution boundaries") {
  CHECK(grid_scale(0.5, 1.0) == 2);
  CHECK(grid_scale(0.1, 1.0) == 10);  // 0.1 rounds above 1/10, so 10 * 0.1 >= 1 holds
  CHECK(grid_scale(1.0, 3.5) == 4);
  CHECK(grid_scale(2.0, 2.0) == 2);
  // 1e-20 is not exact in binary; the oracle inverts the stored value.
  const oracle::HighPrecision inv = 1 / oracle::HighPrecision(1e-20);
  CHECK(grid_scale(1e-20, 1.0) == BigInt(ceil(inv).convert_to<BigInt>()));
  CHECK(grid_scale(1e-20, 1.0) * BigInt(1) > BigInt("100000000000000000000"));
  CHECK(grid_resolution(1, 0.1) == 63);
  CHECK(grid_resolution(2, 1.0) == 51);  // ceil(16 pi) = 51
  CHECK(grid_resolution(1, 1e6) == 2);
}

TEST_CASE("grid_index follows the half-open rule exactly") {
  CHECK(grid_index(0.0, 1, 5) == 0);
  CHECK(grid_index(1.0, 1, 63) == 3969);
  CHECK(grid_index(0.5, 1, 2) == 2);  // exactly on a boundary
  CHECK(grid_index(std::nextafter(0.5, 0.0), 1, 2) == 1);
  CHECK(grid_index(0.75, 3, 4) == 4);  // 16 * 0.75 / 3 = 4
  // Huge n: j = floor(n^2 x / n0) with no floating point rounding.
  const BigInt n = BigInt(1) << 80;
  CHECK(grid_index(0.1, 1, n) == (n * n * BigInt(3602879701896397LL)) / (BigInt(1) << 55));
}

TEST_CASE("one_dim_embed on {0, 1}") {
  const std::vector<double> xs{0.0, 1.0};
  const auto e = one_dim_embed(xs, 0.1);
  CHECK(e.embedding.points[0].indices[0] == 0);
  CHECK(e.embedding.points[1].indices[0] == 3969);
  // 2 r sin(1 / 2r) with r = 63 / 2 pi, i.e. (sin t / t)^2 for t = pi / 63.
  const long double t = std::numbers::pi_v<long double> / 63.0L;
  const long double chord_sq = (std::sin(t) / t) * (std::sin(t) / t);
  const double err = e.pair_error(0, 1);
  CHECK(err == doctest::Approx(static_cast<double>(1.0L - chord_sq)).epsilon(1e-10));
  CHECK(static_cast<double>(chord_sq) == doctest::Approx(0.99917).epsilon(1e-5));
  CHECK(std::abs(err) < 0.1);
  CHECK(std::abs(err) == doctest::Approx(8.3e-4).epsilon(0.01));
}

TEST_CASE("one_dim_embed puts the minimum at vertex 0") {
  const std::vector<double> xs{5.0, 2.5, 7.25};
  const auto e = one_dim_embed(xs, 0.05);
  CHECK(e.embedding.points[1].indices[0] == 0);
  CHECK(e.offsets[0] == 2.5);
}

TEST_CASE("property: random one-dimensional sets stay within delta") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 50; ++trial) {
    const auto xs = random_spread(rng, 6, 0.05);
    const auto e = one_dim_embed(xs, 1e-2);
    CHECK(e.max_abs_error() < 1e-2);
    std::set<BigInt> distinct;
    for (const auto& p : e.embedding.points) distinct.insert(p.indices[0]);
    CHECK(distinct.size() == xs.size());
    PointSet column(Eigen::Map<const Eigen::MatrixXd>(xs.data(), static_cast<Eigen::Index>(xs.size()), 1));
    check_split(e, column);
  }
}

TEST_CASE("product_embed with k = 1 reduces to one_dim_embed") {
  const std::vector<double> xs{0.3, -1.2, 2.0, 0.9};
  const auto one = one_dim_embed(xs, 0.01);
  const auto prod = product_embed(PointSet({{0.3}, {-1.2}, {2.0}, {0.9}}), 0.01);
  CHECK(prod.params.n == one.params.n);
  CHECK(prod.params.m == one.params.m);
  CHECK(prod.params.r == one.params.r);
  for (std::size_t i = 0; i < xs.size(); ++i) CHECK(prod.embedding.points[i] == one.embedding.points[i]);
  CHECK((prod.pair_error - one.pair_error).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("product_embed of the unit square") {
  const PointSet sq({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
  const auto e = product_embed(sq, 1e-2);
  CHECK(e.embedding.torus.factors.size() == 2);
  CHECK(e.delta == 1e-2);
  int pairs = 0;
  for (Eigen::Index i = 0; i < 4; ++i)
    for (Eigen::Index j = i + 1; j < 4; ++j, ++pairs) CHECK(std::abs(e.pair_error(i, j)) < 1e-2);
  CHECK(pairs == 6);
  check_split(e, sq);
}

TEST_CASE("product_embed drops constant coordinates") {
  const PointSet x({{0.0, 4.0, 1.0}, {1.0, 4.0, 0.0}, {0.5, 4.0, 2.0}});
  const auto e = product_embed(x, 1e-2);
  CHECK(e.embedding.torus.factors.size() == 2);
  CHECK(e.dropped_coordinates == std::vector<std::size_t>{1});
  CHECK(e.used_coordinates == std::vector<std::size_t>{0, 2});
  CHECK(e.max_abs_error() < 1e-2);
}

TEST_CASE("product_embed shrinks delta to certify injectivity") {
  const PointSet x({{0.0, 0.0}, {0.1, 0.0}, {0.0, 1.0}});
  const auto e = product_embed(x, 0.5);  // min squared distance is 0.01
  CHECK(e.requested_delta == 0.5);
  CHECK(e.delta == doctest::Approx(0.005).epsilon(1e-12));
  CHECK(e.max_abs_error() < e.delta);
  std::set<std::vector<BigInt>> images;
  for (const auto& p : e.embedding.points) images.insert(p.indices);
  CHECK(images.size() == 3);
}

TEST_CASE("product_embed errors") {
  CHECK_THROWS_AS(product_embed(PointSet({{0.0}, {1.0}}), 0.0), InputError);
  CHECK_THROWS_AS(product_embed(PointSet({{0.0}, {1.0}}), NAN), InputError);
  CHECK_THROWS_AS(product_embed(PointSet({{0.0}, {0.0}}), 0.1), InputError);
  CHECK_THROWS_AS(product_embed(PointSet(), 0.1), InputError);
}

TEST_CASE("property: product embeddings meet the split bounds and the error matrix is symmetric") {
  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t k = 1 + static_cast<std::size_t>(trial % 4);
    const std::size_t count = 2 + static_cast<std::size_t>(trial % 5);
    Eigen::MatrixXd pts(static_cast<Eigen::Index>(count), static_cast<Eigen::Index>(k));
    for (std::size_t c = 0; c < k; ++c) {
      const auto col = random_spread(rng, count, 0.05);
      for (std::size_t i = 0; i < count; ++i) pts(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = col[i];
    }
    const PointSet x(pts);
    const auto e = product_embed(x, 1e-2);
    CHECK(e.max_abs_error() < 1e-2);
    CHECK(e.pair_error.isApprox(e.pair_error.transpose(), 0.0));
    CHECK(e.pair_error.diagonal().cwiseAbs().maxCoeff() == 0.0);
    check_split(e, x);
  }
}

TEST_CASE("property: halving delta never increases the realized error") {
  // Gaps of at least 0.2 keep both budgets below the minimum squared
  // distance, so no injectivity shrink interferes and n0 is shared.
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t k = 1 + static_cast<std::size_t>(trial % 3);
    Eigen::MatrixXd pts(4, static_cast<Eigen::Index>(k));
    for (std::size_t c = 0; c < k; ++c) {
      const auto col = random_spread(rng, 4, 0.2);
      for (Eigen::Index i = 0; i < 4; ++i) pts(i, static_cast<Eigen::Index>(c)) = col[static_cast<std::size_t>(i)];
    }
    const PointSet x(pts);
    const auto loose = product_embed(x, 2e-2);
    const auto tight = product_embed(x, 1e-2);
    REQUIRE(loose.delta == 2e-2);
    REQUIRE(tight.delta == 1e-2);
    CHECK(tight.params.n0 == loose.params.n0);
    CHECK(tight.params.n >= 2 * loose.params.n - 1);
    CHECK(tight.max_abs_error() < 1e-2);
    CHECK(tight.max_abs_error() <= loose.max_abs_error());
  }
}
