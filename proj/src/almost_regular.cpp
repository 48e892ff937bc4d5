#include "torus_embed/almost_regular.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "torus_embed/errors.hpp"
#include "torus_embed/regular_simplex.hpp"

namespace torus_embed {

namespace {

// Pairs with b_ij below this fraction of amax are treated as b_ij = 0.
constexpr double kZeroFactorTol = 1e-13;

void require_structure(const Eigen::MatrixXd& m, const char* what) {
  if (m.rows() != m.cols()) throw InputError(std::string(what) + ": matrix is not square");
  const double scale = m.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (m(i, i) != 0.0) {
      throw InputError(std::string(what) + ": nonzero diagonal at " + std::to_string(i));
    }
    for (Eigen::Index j = i + 1; j < m.cols(); ++j) {
      if (!std::isfinite(m(i, j)) || !(m(i, j) > 0.0)) {
        throw InputError(std::string(what) + ": off-diagonal entry (" + std::to_string(i) +
                         ", " + std::to_string(j) + ") is not positive");
      }
      if (std::abs(m(i, j) - m(j, i)) > 1e-12 * scale) {
        throw InputError(std::string(what) + ": matrix is not symmetric at (" +
                         std::to_string(i) + ", " + std::to_string(j) + ")");
      }
    }
  }
}

AlmostRegularCheck check_squared_unchecked(const Eigen::MatrixXd& sq) {
  const auto n = sq.rows();
  double amax_sq = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) amax_sq = std::max(amax_sq, sq(i, j));
  double deficit = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) deficit += amax_sq - sq(i, j);
  const double margin = amax_sq - deficit;
  return {margin > 0.0, margin};
}

}  // namespace

AlmostRegularCheck check_almost_regular(const Eigen::MatrixXd& a) {
  require_structure(a, "almost-regular check");
  return check_squared_unchecked(a.cwiseProduct(a));
}

AlmostRegularCheck check_almost_regular_squared(const Eigen::MatrixXd& a_sq) {
  require_structure(a_sq, "almost-regular check");
  return check_squared_unchecked(a_sq);
}

AlmostRegularMatrix AlmostRegularMatrix::from_distances(const Eigen::MatrixXd& a) {
  require_structure(a, "almost-regular matrix");
  return from_squared(a.cwiseProduct(a));
}

AlmostRegularMatrix AlmostRegularMatrix::from_squared(const Eigen::MatrixXd& a_sq) {
  require_structure(a_sq, "almost-regular matrix");
  if (a_sq.rows() == 0) throw InputError("almost-regular matrix: empty");
  Eigen::MatrixXd sym = 0.5 * (a_sq + a_sq.transpose());
  if (sym.rows() == 1) return AlmostRegularMatrix(std::move(sym), 0.0, 0.0);
  const auto check = check_squared_unchecked(sym);
  if (!check.valid) {
    throw NotAlmostRegular("matrix is not almost regular (margin " +
                           std::to_string(check.margin) + ")");
  }
  const double amax = std::sqrt(sym.maxCoeff());
  return AlmostRegularMatrix(std::move(sym), amax, check.margin);
}

std::size_t collapse_index(std::size_t i, std::size_t j, std::size_t s) {
  if (s < j) return s;
  if (s == j) return i;
  return s - 1;
}

AlmostRegularRealization realize_almost_regular(const AlmostRegularMatrix& a) {
  const std::size_t n = a.size();
  AlmostRegularRealization out;
  out.plan.n = n;
  if (n == 1) {
    out.points = PointSet(Eigen::MatrixXd(1, 0));
    return out;
  }

  const auto& sq = a.squared();
  const double amax_sq = a.amax() * a.amax();
  out.plan.base_side = std::sqrt(a.margin());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double deficit =
          std::max(0.0, amax_sq - sq(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
      const double side = std::sqrt(deficit);
      if (side <= kZeroFactorTol * a.amax()) continue;
      PairFactor f{i, j, side, {}};
      f.phi.reserve(n);
      for (std::size_t s = 0; s < n; ++s) f.phi.push_back(collapse_index(i, j, s));
      out.plan.factors.push_back(std::move(f));
    }
  }

  const PointSet base = regular_simplex(n, out.plan.base_side);
  Eigen::Index dim = static_cast<Eigen::Index>(base.dim());
  for (std::size_t l = 0; l < out.plan.factors.size(); ++l) dim += static_cast<Eigen::Index>(n - 2);

  Eigen::MatrixXd z(static_cast<Eigen::Index>(n), dim);
  z.leftCols(base.coords().cols()) = base.coords();
  Eigen::Index col = base.coords().cols();
  for (const auto& f : out.plan.factors) {
    const PointSet delta = regular_simplex(n - 1, f.side);
    const auto width = delta.coords().cols();
    for (std::size_t s = 0; s < n; ++s) {
      z.block(static_cast<Eigen::Index>(s), col, 1, width) =
          delta.coords().row(static_cast<Eigen::Index>(f.phi[s]));
    }
    col += width;
  }
  out.points = PointSet(std::move(z));
  return out;
}

TorusEmbedding embed_almost_regular(const RealizationPlan& plan, const BigInt& m) {
  if (m < 2) throw InputError("embed_almost_regular: m must be at least 2");
  const std::size_t n = plan.n;
  if (n == 0) throw InputError("embed_almost_regular: empty plan");
  if (n == 1) {
    // No distances to reproduce; a single vertex on one polygon.
    TorusEmbedding single;
    single.torus.factors.push_back(PolygonSpec{m, 1.0});
    single.points.push_back(TorusPoint{{BigInt(0)}});
    return single;
  }

  TorusEmbedding out = embed_regular_simplex(n, plan.base_side, m);
  for (const auto& f : plan.factors) {
    const TorusEmbedding part = embed_regular_simplex(n - 1, f.side, m);
    TorusEmbedding lifted;
    lifted.torus = part.torus;
    lifted.points.reserve(n);
    for (std::size_t s = 0; s < n; ++s) lifted.points.push_back(part.points[f.phi[s]]);
    out = concatenate(out, lifted);
  }
  return out;
}

TorusEmbedding embed_almost_regular(const AlmostRegularMatrix& a, const BigInt& m) {
  return embed_almost_regular(realize_almost_regular(a).plan, m);
}

}  // namespace torus_embed
