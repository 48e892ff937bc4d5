#include "torus_embed/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>

#include "torus_embed/errors.hpp"

namespace torus_embed {

namespace {

Eigen::MatrixXd from_rows(const std::vector<std::vector<double>>& rows,
                          const char* what) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  const auto cols = rows.empty() ? Eigen::Index{0}
                                 : static_cast<Eigen::Index>(rows.front().size());
  Eigen::MatrixXd out(n, cols);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    if (static_cast<Eigen::Index>(row.size()) != cols) {
      throw InputError(std::string(what) + ": row " + std::to_string(i) +
                       " has length " + std::to_string(row.size()) +
                       ", expected " + std::to_string(cols));
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      const double v = row[static_cast<std::size_t>(c)];
      if (!std::isfinite(v)) {
        throw InputError(std::string(what) + ": non-finite value at row " +
                         std::to_string(i));
      }
      out(i, c) = v;
    }
  }
  return out;
}

std::vector<std::vector<double>> to_rows_impl(const Eigen::MatrixXd& m) {
  std::vector<std::vector<double>> rows(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    auto& row = rows[static_cast<std::size_t>(i)];
    row.resize(static_cast<std::size_t>(m.cols()));
    for (Eigen::Index c = 0; c < m.cols(); ++c) row[static_cast<std::size_t>(c)] = m(i, c);
  }
  return rows;
}

void require_symmetric(const Eigen::MatrixXd& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw InputError(std::string(what) + ": matrix is not square");
  }
  const double scale = m.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < m.cols(); ++j) {
      if (std::abs(m(i, j) - m(j, i)) > 1e-12 * scale) {
        throw InputError(std::string(what) + ": matrix is not symmetric at (" +
                         std::to_string(i) + ", " + std::to_string(j) + ")");
      }
    }
  }
}

Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> decompose(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw NotEuclidean("symmetric eigendecomposition did not converge");
  }
  return solver;
}

}  // namespace

PointSet::PointSet(const std::vector<std::vector<double>>& rows)
    : coords_(from_rows(rows, "point set")) {}

std::vector<std::vector<double>> PointSet::to_rows() const { return to_rows_impl(coords_); }

bool PointSet::distinct() const {
  std::set<std::vector<double>> seen;
  for (const auto& row : to_rows()) {
    if (!seen.insert(row).second) return false;
  }
  return true;
}

SquaredDistanceMatrix::SquaredDistanceMatrix(Eigen::MatrixXd entries)
    : entries_(std::move(entries)) {
  require_symmetric(entries_, "squared distance matrix");
  const auto n = entries_.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!std::isfinite(entries_(i, i)) || entries_(i, i) != 0.0) {
      throw InputError("squared distance matrix: nonzero diagonal at " + std::to_string(i));
    }
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double v = 0.5 * (entries_(i, j) + entries_(j, i));
      if (!std::isfinite(v) || v < 0.0) {
        throw InputError("squared distance matrix: negative or non-finite entry at (" +
                         std::to_string(i) + ", " + std::to_string(j) + ")");
      }
      entries_(i, j) = entries_(j, i) = v;
    }
  }
}

SquaredDistanceMatrix::SquaredDistanceMatrix(const std::vector<std::vector<double>>& rows)
    : SquaredDistanceMatrix(from_rows(rows, "squared distance matrix")) {}

std::vector<std::vector<double>> SquaredDistanceMatrix::to_rows() const {
  return to_rows_impl(entries_);
}

double SquaredDistanceMatrix::min_off_diagonal() const {
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < entries_.rows(); ++i)
    for (Eigen::Index j = i + 1; j < entries_.cols(); ++j) best = std::min(best, entries_(i, j));
  return best;
}

double SquaredDistanceMatrix::max_off_diagonal() const {
  double best = 0.0;
  for (Eigen::Index i = 0; i < entries_.rows(); ++i)
    for (Eigen::Index j = i + 1; j < entries_.cols(); ++j) best = std::max(best, entries_(i, j));
  return best;
}

GramMatrix::GramMatrix(Eigen::MatrixXd entries) : entries_(std::move(entries)) {
  require_symmetric(entries_, "Gram matrix");
  entries_ = 0.5 * (entries_ + entries_.transpose()).eval();
}

Eigen::VectorXd GramMatrix::eigenvalues() const {
  if (entries_.rows() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(entries_, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NotEuclidean("symmetric eigendecomposition did not converge");
  }
  return solver.eigenvalues();
}

SquaredDistanceMatrix squared_distances(const PointSet& points) {
  if (points.empty()) throw InputError("squared_distances: empty point set");
  const auto& x = points.coords();
  const auto n = x.rows();
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double v = (x.row(i) - x.row(j)).squaredNorm();
      d(i, j) = d(j, i) = v;
    }
  }
  return SquaredDistanceMatrix(std::move(d));
}

GramMatrix centered_gram(const SquaredDistanceMatrix& d) {
  const auto& m = d.entries();
  const auto n = m.rows();
  if (n == 0) return GramMatrix(Eigen::MatrixXd(0, 0));
  const Eigen::VectorXd row_mean = m.rowwise().mean();
  const double grand_mean = row_mean.mean();
  Eigen::MatrixXd g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      g(i, j) = -0.5 * (m(i, j) - row_mean(i) - row_mean(j) + grand_mean);
  // Re-center to clean up rounding in the row sums.
  const Eigen::MatrixXd p = centering_projector(static_cast<std::size_t>(n));
  g = p * g * p;
  return GramMatrix(0.5 * (g + g.transpose()));
}

namespace {

PointSet realize_with(const GramMatrix& g, const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>& solver,
                      double cutoff) {
  const auto n = static_cast<Eigen::Index>(g.size());
  const Eigen::VectorXd& values = solver.eigenvalues();  // ascending
  if (values(0) < -cutoff) {
    throw NotEuclidean("Gram matrix has eigenvalue " + std::to_string(values(0)) + " below -" +
                       std::to_string(cutoff));
  }
  std::vector<Eigen::Index> kept;
  for (Eigen::Index k = n - 1; k >= 0; --k) {
    if (values(k) > cutoff) kept.push_back(k);
  }
  Eigen::MatrixXd coords(n, static_cast<Eigen::Index>(kept.size()));
  for (std::size_t c = 0; c < kept.size(); ++c) {
    Eigen::VectorXd v = solver.eigenvectors().col(kept[c]);
    Eigen::Index pivot = 0;
    v.cwiseAbs().maxCoeff(&pivot);
    if (v(pivot) < 0) v = -v;
    coords.col(static_cast<Eigen::Index>(c)) = std::sqrt(values(kept[c])) * v;
  }
  return PointSet(std::move(coords));
}

}  // namespace

PointSet realize(const GramMatrix& g, double tol) {
  const auto n = static_cast<Eigen::Index>(g.size());
  if (n == 0) return PointSet(Eigen::MatrixXd(0, 0));
  const auto solver = decompose(g.entries());
  const Eigen::VectorXd& values = solver.eigenvalues();
  const double lmax = values(n - 1);
  const double lmin = values(0);
  if (std::max(std::abs(lmax), std::abs(lmin)) == 0.0) return PointSet(Eigen::MatrixXd(n, 0));
  if (lmax <= 0.0) {
    throw NotEuclidean("Gram matrix has no positive eigenvalue (lambda_max = " + std::to_string(lmax) + ")");
  }
  return realize_with(g, solver, tol * lmax);
}

PointSet realize_above(const GramMatrix& g, double cutoff) {
  if (!(cutoff >= 0.0)) throw InputError("realize_above: cutoff must be non-negative");
  const auto n = static_cast<Eigen::Index>(g.size());
  if (n == 0) return PointSet(Eigen::MatrixXd(0, 0));
  return realize_with(g, decompose(g.entries()), cutoff);
}

std::size_t numerical_rank(const GramMatrix& g, double tol) {
  if (g.size() == 0) return 0;
  const Eigen::VectorXd values = g.eigenvalues();
  const double lmax = values(values.size() - 1);
  if (lmax <= 0.0) return 0;
  return static_cast<std::size_t>((values.array() > tol * lmax).count());
}

bool is_simplex(const PointSet& points, double tol) {
  if (points.empty()) throw InputError("is_simplex: empty point set");
  return numerical_rank(centered_gram(squared_distances(points)), tol) == points.size() - 1;
}

Eigen::MatrixXd centered_basis(std::size_t n) {
  const auto size = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(size, std::max<Eigen::Index>(size - 1, 0));
  for (Eigen::Index k = 1; k < size; ++k) {
    const double norm = std::sqrt(static_cast<double>(k * (k + 1)));
    for (Eigen::Index i = 0; i < k; ++i) basis(i, k - 1) = 1.0 / norm;
    basis(k, k - 1) = -static_cast<double>(k) / norm;
  }
  return basis;
}

Eigen::MatrixXd centering_projector(std::size_t n) {
  const auto size = static_cast<Eigen::Index>(n);
  return Eigen::MatrixXd::Identity(size, size) -
         Eigen::MatrixXd::Constant(size, size, 1.0 / static_cast<double>(n));
}

}  // namespace torus_embed
