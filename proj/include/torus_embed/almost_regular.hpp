#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "torus_embed/bigint.hpp"
#include "torus_embed/geometry.hpp"
#include "torus_embed/polygon_torus.hpp"

namespace torus_embed {

struct AlmostRegularCheck {
  bool valid = false;
  // amax^2 - sum_{i<j} (amax^2 - a_ij^2); the matrix is almost regular iff > 0.
  double margin = 0.0;
};

// a holds distances (not squared). Throws InputError unless a is square,
// symmetric, zero on the diagonal and strictly positive off it.
AlmostRegularCheck check_almost_regular(const Eigen::MatrixXd& a);

// Same check on squared entries a_ij^2; avoids a sqrt/square round trip.
AlmostRegularCheck check_almost_regular_squared(const Eigen::MatrixXd& a_sq);

// Distance matrix with sum_{i<j} (amax^2 - a_ij^2) < amax^2. The 1x1 zero
// matrix is accepted as the vacuous case.
class AlmostRegularMatrix {
 public:
  // Throws InputError on structural problems and NotAlmostRegular when the
  // condition fails.
  static AlmostRegularMatrix from_distances(const Eigen::MatrixXd& a);
  static AlmostRegularMatrix from_squared(const Eigen::MatrixXd& a_sq);

  std::size_t size() const { return static_cast<std::size_t>(squared_.rows()); }
  const Eigen::MatrixXd& squared() const { return squared_; }
  Eigen::MatrixXd distances() const { return squared_.cwiseSqrt(); }
  double amax() const { return amax_; }
  double margin() const { return margin_; }

 private:
  AlmostRegularMatrix(Eigen::MatrixXd squared, double amax, double margin)
      : squared_(std::move(squared)), amax_(amax), margin_(margin) {}

  Eigen::MatrixXd squared_;
  double amax_ = 0.0;
  double margin_ = 0.0;
};

// One regular-simplex factor Delta_ij (n - 1 vertices, side b_ij) of the
// product realization. Point s uses vertex phi[s]; phi collapses i and j
// onto the same vertex and is injective otherwise.
struct PairFactor {
  std::size_t i = 0;
  std::size_t j = 0;
  double side = 0.0;
  std::vector<std::size_t> phi;
};

struct RealizationPlan {
  std::size_t n = 0;
  // Side b of the base regular simplex Delta with n vertices.
  double base_side = 0.0;
  // Factors in lexicographic (i, j) order; pairs with b_ij ~ 0 are absent.
  std::vector<PairFactor> factors;
};

struct AlmostRegularRealization {
  PointSet points;
  RealizationPlan plan;
};

// Vertex of Delta_ij used by point s: s below j, i at j, s - 1 above j.
std::size_t collapse_index(std::size_t i, std::size_t j, std::size_t s);

// Realizes a as an affinely independent subset of Delta x prod Delta_ij.
AlmostRegularRealization realize_almost_regular(const AlmostRegularMatrix& a);

// Puts every factor of the realization plan on an m-regular torus via
// embed_regular_simplex and concatenates the coordinates point by point.
TorusEmbedding embed_almost_regular(const AlmostRegularMatrix& a, const BigInt& m);
TorusEmbedding embed_almost_regular(const RealizationPlan& plan, const BigInt& m);

}  // namespace torus_embed
