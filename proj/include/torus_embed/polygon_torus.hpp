#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "torus_embed/bigint.hpp"

namespace torus_embed {

// Vertex set of a regular m-gon of circumradius r centred at the origin.
struct PolygonSpec {
  BigInt m;
  double r = 1.0;

  friend bool operator==(const PolygonSpec&, const PolygonSpec&) = default;
};

// Cartesian product of polygons; lives in R^(2 * factors.size()).
struct TorusSpec {
  std::vector<PolygonSpec> factors;

  std::size_t ambient_dim() const { return 2 * factors.size(); }
  friend bool operator==(const TorusSpec&, const TorusSpec&) = default;
};

// Combinatorial vertex coordinates: one polygon vertex index per factor.
struct TorusPoint {
  std::vector<BigInt> indices;

  friend bool operator==(const TorusPoint&, const TorusPoint&) = default;
};

// Throws InputError when m < 2, r is not a positive finite number, or the
// torus has no factors.
void validate(const PolygonSpec& polygon);
void validate(const TorusSpec& torus);
// Also checks 0 <= indices[i] < m_i and matching length.
void validate(const TorusSpec& torus, const TorusPoint& point);

// Distance between two vertices dj steps apart: 2 r sin(pi k / m) with
// k = min(dj mod m, m - dj mod m). k / m is converted to double before the
// multiplication by pi, so huge m loses no precision.
double chord(const BigInt& m, double r, const BigInt& dj);

// Sum over factors of chord(m_i, r_i, p_i - q_i)^2.
double torus_distance_squared(const TorusSpec& torus, const TorusPoint& p, const TorusPoint& q);
double torus_distance(const TorusSpec& torus, const TorusPoint& p, const TorusPoint& q);

// Rotates factor i by offsets[i] steps; an isometry of the torus.
TorusPoint shift(const TorusSpec& torus, const TorusPoint& p, std::span<const BigInt> offsets);

// Cartesian coordinates (r cos t, r sin t) per factor with t = 2 pi (j / m).
// Exact only while m stays moderate (about 1e6); use the chord formula for
// distances.
Eigen::RowVectorXd materialize(const TorusSpec& torus, const TorusPoint& p);

}  // namespace torus_embed

namespace torus_embed {

// A finite point list placed on a torus: points[s] is the image of input s.
struct TorusEmbedding {
  TorusSpec torus;
  std::vector<TorusPoint> points;
};

// Concatenates factor lists and, point by point, index lists. Both sides
// must hold the same number of points.
TorusEmbedding concatenate(const TorusEmbedding& left, const TorusEmbedding& right);

}  // namespace torus_embed
