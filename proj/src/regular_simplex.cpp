#include "torus_embed/regular_simplex.hpp"

#include <cmath>
#include <numbers>

#include "torus_embed/errors.hpp"

namespace torus_embed {

PointSet regular_simplex(std::size_t n, double side) {
  if (n == 0) throw InputError("regular_simplex: need at least one vertex");
  if (!(side > 0.0) || !std::isfinite(side)) {
    throw InputError("regular_simplex: side must be positive and finite");
  }
  const auto size = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(size, size - 1);
  Eigen::RowVectorXd centroid = Eigen::RowVectorXd::Zero(size - 1);
  for (Eigen::Index k = 1; k < size; ++k) {
    // Circumradius of the k-vertex regular simplex with this side.
    const double kd = static_cast<double>(k);
    const double rho_sq = side * side * (kd - 1.0) / (2.0 * kd);
    v.row(k) = centroid;
    v(k, k - 1) = std::sqrt(side * side - rho_sq);
    centroid = (centroid * kd + v.row(k)) / (kd + 1.0);
  }
  return PointSet(std::move(v));
}

double circumradius_for_side(const BigInt& m, double side) {
  if (m < 2) throw InputError("circumradius_for_side: m must be at least 2");
  return side / (2.0 * std::sin(std::numbers::pi * ratio_to_double(BigInt(1), m)));
}

TorusEmbedding embed_regular_simplex(std::size_t n, double alpha, const BigInt& m) {
  if (n == 0) throw InputError("embed_regular_simplex: need at least one vertex");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw InputError("embed_regular_simplex: alpha must be positive and finite");
  }
  if (m < 2) throw InputError("embed_regular_simplex: m must be at least 2");

  const double r = circumradius_for_side(m, alpha / std::numbers::sqrt2);
  TorusEmbedding out;
  out.torus.factors.assign(n, PolygonSpec{m, r});
  out.points.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.points[i].indices.assign(n, BigInt(0));
    out.points[i].indices[i] = 1;
  }
  return out;
}

}  // namespace torus_embed
