#include "torus_embed/delta_embed.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "torus_embed/errors.hpp"

namespace torus_embed {

namespace {

struct SortedValues {
  std::vector<double> values;  // translated so the minimum is 0
  double offset = 0.0;
  double min_gap = 0.0;
  double max_gap = 0.0;
};

SortedValues distinct_sorted(std::span<const double> xs) {
  SortedValues out;
  out.values.assign(xs.begin(), xs.end());
  std::sort(out.values.begin(), out.values.end());
  out.values.erase(std::unique(out.values.begin(), out.values.end()), out.values.end());
  out.offset = out.values.front();
  for (auto& v : out.values) v -= out.offset;
  out.max_gap = out.values.back();
  out.min_gap = out.max_gap;
  for (std::size_t i = 1; i < out.values.size(); ++i) {
    out.min_gap = std::min(out.min_gap, out.values[i] - out.values[i - 1]);
  }
  return out;
}

void require_delta(double delta) {
  if (!std::isfinite(delta) || !(delta > 0.0)) {
    throw InputError("delta must be positive and finite");
  }
}

long double to_long_double(const BigInt& v) { return v.convert_to<long double>(); }

OneDimParams params_for(const BigInt& n0, double budget) {
  OneDimParams p;
  p.n0 = n0;
  p.n = grid_resolution(n0, budget);
  p.m = p.n * p.n * p.n;
  p.r = static_cast<double>(to_long_double(p.n0) * to_long_double(p.n) /
                            (2.0L * std::numbers::pi_v<long double>));
  return p;
}

double squared_chord_between(const OneDimParams& p, const BigInt& a, const BigInt& b) {
  const BigInt diff = a > b ? BigInt(a - b) : BigInt(b - a);
  const double c = chord(p.m, p.r, diff);
  return c * c;
}

}  // namespace

BigInt grid_scale(double min_gap, double max_gap) {
  if (!(min_gap > 0.0) || !std::isfinite(min_gap) || !std::isfinite(max_gap)) {
    throw InputError("grid_scale: gaps must be positive and finite");
  }
  const BigInt from_max = ceil_to_bigint(static_cast<long double>(max_gap));
  // Smallest c with c * min_gap >= 1, exactly: min_gap = mantissa * 2^shift.
  int exponent = 0;
  const double frac = std::frexp(min_gap, &exponent);
  const BigInt mantissa(static_cast<long long>(std::ldexp(frac, 53)));
  const int shift = exponent - 53;
  BigInt from_min = 1;
  if (shift < 0) {
    const BigInt unit = BigInt(1) << -shift;
    from_min = (unit + mantissa - 1) / mantissa;
  }
  return std::max({BigInt(1), from_max, from_min});
}

BigInt grid_resolution(const BigInt& n0, double delta) {
  require_delta(delta);
  const long double n0_cubed = to_long_double(n0 * n0 * n0);
  const long double target = 2.0L * std::numbers::pi_v<long double> * n0_cubed / delta;
  BigInt n = ceil_to_bigint(target);
  if (to_long_double(n) * delta < 2.0L * std::numbers::pi_v<long double> * n0_cubed) n += 1;
  return std::max(n, BigInt(2));
}

OneDimParams one_dim_params(std::span<const double> xs, double delta) {
  require_delta(delta);
  if (xs.size() < 2) throw TrivialInput("one_dim_params: need at least two values");
  const SortedValues sorted = distinct_sorted(xs);
  if (sorted.values.size() != xs.size()) throw InputError("one_dim_params: duplicate values");
  return params_for(grid_scale(sorted.min_gap, sorted.max_gap), delta);
}

BigInt grid_index(double x, const BigInt& n0, const BigInt& n) {
  if (!(x >= 0.0) || !std::isfinite(x)) throw InputError("grid_index: x must be >= 0");
  if (x == 0.0) return BigInt(0);
  int exponent = 0;
  const double frac = std::frexp(x, &exponent);
  // x = mantissa * 2^(exponent - 53) exactly.
  const BigInt mantissa(static_cast<long long>(std::ldexp(frac, 53)));
  const int shift = exponent - 53;
  BigInt num = n * n * mantissa;
  BigInt den = n0;
  if (shift >= 0) {
    num <<= shift;
  } else {
    den <<= -shift;
  }
  return num / den;
}

DeltaEmbedding one_dim_embed(std::span<const double> xs, double delta) {
  const OneDimParams params = one_dim_params(xs, delta);
  const double offset = *std::min_element(xs.begin(), xs.end());

  DeltaEmbedding out;
  out.delta = delta;
  out.requested_delta = delta;
  out.params = params;
  out.used_coordinates = {0};
  out.offsets = {offset};
  out.embedding.torus.factors.push_back(PolygonSpec{params.m, params.r});
  for (double x : xs) {
    out.embedding.points.push_back(TorusPoint{{grid_index(x - offset, params.n0, params.n)}});
  }
  const auto count = static_cast<Eigen::Index>(xs.size());
  out.pair_error = Eigen::MatrixXd::Zero(count, count);
  for (Eigen::Index i = 0; i < count; ++i) {
    for (Eigen::Index j = i + 1; j < count; ++j) {
      const double gap = xs[static_cast<std::size_t>(i)] - xs[static_cast<std::size_t>(j)];
      const double e = gap * gap - squared_chord_between(
                                       params, out.embedding.points[static_cast<std::size_t>(i)].indices[0],
                                       out.embedding.points[static_cast<std::size_t>(j)].indices[0]);
      out.pair_error(i, j) = out.pair_error(j, i) = e;
    }
  }
  return out;
}

DeltaEmbedding product_embed(const PointSet& x, double delta) {
  require_delta(delta);
  if (x.empty()) throw InputError("product_embed: empty point set");
  if (!x.distinct()) throw InputError("product_embed: points are not distinct");

  const SquaredDistanceMatrix sq = squared_distances(x);
  DeltaEmbedding out;
  out.requested_delta = delta;
  out.delta = delta;
  const double min_sq = sq.min_off_diagonal();
  if (x.size() >= 2 && delta >= min_sq) out.delta = 0.5 * min_sq;

  const auto count = x.size();
  std::vector<SortedValues> columns;
  BigInt n0 = 1;
  for (std::size_t c = 0; c < x.dim(); ++c) {
    std::vector<double> column(count);
    for (std::size_t i = 0; i < count; ++i) column[i] = x(i, c);
    SortedValues sorted = distinct_sorted(column);
    if (sorted.values.size() < 2) {
      out.dropped_coordinates.push_back(c);
      continue;
    }
    n0 = std::max(n0, grid_scale(sorted.min_gap, sorted.max_gap));
    out.used_coordinates.push_back(c);
    out.offsets.push_back(sorted.offset);
    columns.push_back(std::move(sorted));
  }

  out.embedding.points.resize(count);
  out.pair_error = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(count),
                                         static_cast<Eigen::Index>(count));
  if (out.used_coordinates.empty()) return out;

  const double budget = out.delta / static_cast<double>(out.used_coordinates.size());
  out.params = params_for(n0, budget);
  out.embedding.torus.factors.assign(out.used_coordinates.size(),
                                     PolygonSpec{out.params.m, out.params.r});
  for (std::size_t i = 0; i < count; ++i) {
    auto& idx = out.embedding.points[i].indices;
    idx.reserve(out.used_coordinates.size());
    for (std::size_t k = 0; k < out.used_coordinates.size(); ++k) {
      const double t = x(i, out.used_coordinates[k]) - out.offsets[k];
      idx.push_back(grid_index(t, out.params.n0, out.params.n));
    }
  }
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = i + 1; j < count; ++j) {
      const double e = sq(i, j) - torus_distance_squared(out.embedding.torus,
                                                         out.embedding.points[i],
                                                         out.embedding.points[j]);
      const auto a = static_cast<Eigen::Index>(i);
      const auto b = static_cast<Eigen::Index>(j);
      out.pair_error(a, b) = out.pair_error(b, a) = e;
    }
  }
  if (out.max_abs_error() >= out.delta) {
    throw Error("product_embed: realized error " + std::to_string(out.max_abs_error()) +
                " exceeds delta " + std::to_string(out.delta));
  }
  return out;
}

}  // namespace torus_embed
