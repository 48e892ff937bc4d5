#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include <Eigen/Dense>

namespace torus_embed {

inline constexpr double kDefaultRankTol = 1e-9;

// Ordered points in R^dim, stored one point per row. dim may be zero.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(Eigen::MatrixXd coords) : coords_(std::move(coords)) {}
  // Throws InputError when the rows have different lengths.
  explicit PointSet(const std::vector<std::vector<double>>& rows);
  PointSet(std::initializer_list<std::initializer_list<double>> rows)
      : PointSet(std::vector<std::vector<double>>(rows.begin(), rows.end())) {}

  std::size_t size() const { return static_cast<std::size_t>(coords_.rows()); }
  std::size_t dim() const { return static_cast<std::size_t>(coords_.cols()); }
  bool empty() const { return coords_.rows() == 0; }

  Eigen::RowVectorXd point(std::size_t i) const { return coords_.row(static_cast<Eigen::Index>(i)); }
  double operator()(std::size_t i, std::size_t c) const {
    return coords_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c));
  }
  const Eigen::MatrixXd& coords() const { return coords_; }

  std::vector<std::vector<double>> to_rows() const;

  // True when no two points coincide exactly.
  bool distinct() const;

 private:
  Eigen::MatrixXd coords_;
};

// Pairwise squared distances. Zero diagonal, symmetric, non-negative.
class SquaredDistanceMatrix {
 public:
  SquaredDistanceMatrix() = default;
  // Validates the invariants; throws InputError on violation. Asymmetry is
  // tolerated up to a relative 1e-12 and then symmetrized.
  explicit SquaredDistanceMatrix(Eigen::MatrixXd entries);
  explicit SquaredDistanceMatrix(const std::vector<std::vector<double>>& rows);
  SquaredDistanceMatrix(std::initializer_list<std::initializer_list<double>> rows)
      : SquaredDistanceMatrix(std::vector<std::vector<double>>(rows.begin(), rows.end())) {}

  std::size_t size() const { return static_cast<std::size_t>(entries_.rows()); }
  double operator()(std::size_t i, std::size_t j) const {
    return entries_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  const Eigen::MatrixXd& entries() const { return entries_; }
  std::vector<std::vector<double>> to_rows() const;

  // Smallest off-diagonal entry; +inf for fewer than two points.
  double min_off_diagonal() const;
  double max_off_diagonal() const;

 private:
  Eigen::MatrixXd entries_;
};

// Doubly centered Gram matrix -1/2 J D J.
class GramMatrix {
 public:
  GramMatrix() = default;
  // Throws InputError if not square or not symmetric.
  explicit GramMatrix(Eigen::MatrixXd entries);

  std::size_t size() const { return static_cast<std::size_t>(entries_.rows()); }
  const Eigen::MatrixXd& entries() const { return entries_; }

  // Eigenvalues in ascending order.
  Eigen::VectorXd eigenvalues() const;

 private:
  Eigen::MatrixXd entries_;
};

SquaredDistanceMatrix squared_distances(const PointSet& points);

GramMatrix centered_gram(const SquaredDistanceMatrix& d);

// Classical scaling. Coordinates are ordered by decreasing eigenvalue and
// eigenvalues at or below tol * lambda_max are dropped. Throws NotEuclidean
// when some eigenvalue is below -tol * lambda_max.
PointSet realize(const GramMatrix& g, double tol = kDefaultRankTol);

// Same, with an absolute cutoff in place of tol * lambda_max.
PointSet realize_above(const GramMatrix& g, double cutoff);

// Number of eigenvalues strictly above tol * lambda_max.
std::size_t numerical_rank(const GramMatrix& g, double tol = kDefaultRankTol);

// Affine independence: rank of the centered Gram equals n - 1.
bool is_simplex(const PointSet& points, double tol = kDefaultRankTol);

// Orthonormal basis (n x (n-1)) of the complement of the all-ones vector.
Eigen::MatrixXd centered_basis(std::size_t n);

// The centering projector I - 11^T / n.
Eigen::MatrixXd centering_projector(std::size_t n);

}  // namespace torus_embed
