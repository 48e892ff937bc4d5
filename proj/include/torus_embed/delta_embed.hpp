#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "torus_embed/bigint.hpp"
#include "torus_embed/geometry.hpp"
#include "torus_embed/polygon_torus.hpp"

namespace torus_embed {

// Parameters of the one-dimensional approximation of a finite set of reals
// by vertices of a single large polygon:
//   n0 >= max gap and 1/n0 <= min gap,
//   n  = max(2, ceil(2 pi n0^3 / delta)),
//   m  = n^3,  r = n0 n / (2 pi).
struct OneDimParams {
  BigInt n0;
  BigInt n;
  BigInt m;
  double r = 0.0;
};

// Smallest positive integer n0 with n0 >= max_gap and n0 * min_gap >= 1.
BigInt grid_scale(double min_gap, double max_gap);

// n = max(2, ceil(2 pi n0^3 / delta)), bumped if rounding left n below the bound.
BigInt grid_resolution(const BigInt& n0, double delta);

// Throws TrivialInput for fewer than two values and InputError for
// duplicates or a non-positive delta.
OneDimParams one_dim_params(std::span<const double> xs, double delta);

// Vertex index j with j / n^2 <= x / n0 < (j + 1) / n^2, evaluated exactly
// on the binary value of x (x >= 0).
BigInt grid_index(double x, const BigInt& n0, const BigInt& n);

// An injection X -> torus whose squared distances are off by less than delta.
struct DeltaEmbedding {
  TorusEmbedding embedding;
  // Budget actually used (after the injectivity shrink) and as requested.
  double delta = 0.0;
  double requested_delta = 0.0;
  OneDimParams params;
  // Input coordinates carried by the factors, in factor order.
  std::vector<std::size_t> used_coordinates;
  // Coordinates on which all points agree; they carry no distance.
  std::vector<std::size_t> dropped_coordinates;
  // Per-coordinate translation applied before indexing (the coordinate minimum).
  std::vector<double> offsets;
  // pair_error(i, j) = |x_i - x_j|^2 - |f(x_i) - f(x_j)|^2.
  Eigen::MatrixXd pair_error;

  double max_abs_error() const { return pair_error.cwiseAbs().maxCoeff(); }
};

// Single-factor embedding of distinct reals; point i is xs[i].
DeltaEmbedding one_dim_embed(std::span<const double> xs, double delta);

// Coordinate-wise product embedding with a common (m, r). Constant
// coordinates are dropped; when delta >= min |x_i - x_j|^2 it is replaced
// by half that minimum so the map stays injective. Throws InputError for a
// non-positive delta or repeated points.
DeltaEmbedding product_embed(const PointSet& x, double delta);

}  // namespace torus_embed
