#include "torus_embed/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "torus_embed/delta_embed.hpp"
#include "torus_embed/errors.hpp"

namespace torus_embed {

namespace {

void require_alpha_fraction(double f) {
  if (!std::isfinite(f) || !(f > 0.0) || !(f < 2.0)) {
    throw InputError("alpha fraction must lie in (0, 2)");
  }
}

EmbeddingCertificate single_point_certificate(const SquaredDistanceMatrix& d,
                                              const PipelineConfig& cfg) {
  EmbeddingCertificate c;
  c.input = d;
  c.torus.factors.push_back(PolygonSpec{cfg.correction_m, 1.0});
  c.assignment.push_back(TorusPoint{{BigInt(0)}});
  CertificateParameters p;
  p.alpha_fraction = cfg.alpha_fraction;
  p.mode = cfg.uniform_m ? "uniform-m" : "mixed";
  p.correction_m = cfg.correction_m;
  c.parameters = p;
  c.meta = CertificateMeta{kVersion, cfg.accept_tol, cfg.rank_tol};
  c.errors = ErrorReport{};
  return c;
}

// Merges coordinate values closer than eps within each column, moving each
// by at most eps. Rounding leaves near-ties such as 0.5 and 0.49999999999999994
// that would otherwise dictate an enormous grid.
PointSet snap_coordinates(const PointSet& x, double eps) {
  Eigen::MatrixXd coords = x.coords();
  for (Eigen::Index c = 0; c < coords.cols(); ++c) {
    std::vector<Eigen::Index> order(static_cast<std::size_t>(coords.rows()));
    for (Eigen::Index i = 0; i < coords.rows(); ++i) order[static_cast<std::size_t>(i)] = i;
    std::sort(order.begin(), order.end(),
              [&](Eigen::Index a, Eigen::Index b) { return coords(a, c) < coords(b, c); });
    double anchor = 0.0;
    for (std::size_t k = 0; k < order.size(); ++k) {
      double& v = coords(order[k], c);
      if (k == 0 || v - anchor > eps) {
        anchor = v;
      } else {
        v = anchor;
      }
    }
  }
  return PointSet(std::move(coords));
}

struct BaseClasses {
  PointSet representatives;
  std::vector<std::size_t> of;
};

// Groups exactly equal rows; the delta-embedding needs distinct points.
BaseClasses coincident_classes(const PointSet& x) {
  std::vector<std::size_t> reps;
  BaseClasses out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::size_t k = 0;
    while (k < reps.size() && x.point(reps[k]) != x.point(i)) ++k;
    if (k == reps.size()) reps.push_back(i);
    out.of.push_back(k);
  }
  Eigen::MatrixXd rows(static_cast<Eigen::Index>(reps.size()), static_cast<Eigen::Index>(x.dim()));
  for (std::size_t k = 0; k < reps.size(); ++k) rows.row(static_cast<Eigen::Index>(k)) = x.point(reps[k]);
  out.representatives = PointSet(std::move(rows));
  return out;
}

}  // namespace

ExpansionDecomposition schoenberg_decompose(const SquaredDistanceMatrix& d, double tol,
                                            double alpha_fraction) {
  require_alpha_fraction(alpha_fraction);
  const std::size_t n = d.size();
  if (n == 0) throw InputError("schoenberg_decompose: empty input");
  if (n == 1) throw TrivialInput("schoenberg_decompose: a single point has no expansion");

  const GramMatrix g = centered_gram(d);
  const Eigen::VectorXd all = g.eigenvalues();
  const double lmax = all(all.size() - 1);
  if (!(lmax > 0.0) || all(0) < -tol * lmax) {
    throw NotSimplex("input is not a simplex: squared distances are not Euclidean");
  }
  if (numerical_rank(g, tol) != n - 1) {
    throw NotSimplex("input is not a simplex: points are affinely dependent");
  }

  const Eigen::MatrixXd basis = centered_basis(n);
  const Eigen::MatrixXd restricted = basis.transpose() * g.entries() * basis;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(restricted, Eigen::EigenvaluesOnly);
  const double lambda_min = solver.eigenvalues()(0);
  if (!(lambda_min > tol * lmax)) {
    throw NotSimplex("input is not a simplex: centered Gram is singular");
  }

  ExpansionDecomposition out;
  out.lambda_min = lambda_min;
  out.alpha_squared = alpha_fraction * lambda_min;
  out.alpha = std::sqrt(out.alpha_squared);
  // Lowering every off-diagonal squared distance by alpha^2 lowers each
  // centered-subspace eigenvalue by alpha^2 / 2.
  const Eigen::MatrixXd shifted = g.entries() - 0.5 * out.alpha_squared * centering_projector(n);
  // Directions the shift flattens are dropped against the input's scale,
  // so a regular input collapses to a single point instead of noise.
  out.base = realize_above(GramMatrix(0.5 * (shifted + shifted.transpose())), tol * lmax);
  return out;
}

ExpansionDecomposition schoenberg_decompose(const PointSet& y, double tol, double alpha_fraction) {
  if (y.size() == 1) throw TrivialInput("schoenberg_decompose: a single point has no expansion");
  if (!is_simplex(y, tol)) throw NotSimplex("input is not a simplex");
  return schoenberg_decompose(squared_distances(y), tol, alpha_fraction);
}

void check_structure(const EmbeddingCertificate& c) {
  const std::size_t n = c.input.size();
  if (n == 0) throw InvalidCertificate("input", "empty squared distance matrix");
  if (c.assignment.size() != n) {
    throw InvalidCertificate("assignment", "has " + std::to_string(c.assignment.size()) +
                                               " points but the input has " + std::to_string(n));
  }
  if (c.torus.factors.empty()) throw InvalidCertificate("torus.factors", "no factors");
  for (std::size_t f = 0; f < c.torus.factors.size(); ++f) {
    const auto& factor = c.torus.factors[f];
    const std::string where = "torus.factors[" + std::to_string(f) + "]";
    if (factor.m < 2) throw InvalidCertificate(where + ".m", "must be at least 2");
    if (!std::isfinite(factor.r) || !(factor.r > 0.0)) {
      throw InvalidCertificate(where + ".r", "must be positive and finite");
    }
  }
  for (std::size_t s = 0; s < n; ++s) {
    const auto& idx = c.assignment[s].indices;
    const std::string where = "assignment[" + std::to_string(s) + "]";
    if (idx.size() != c.torus.factors.size()) {
      throw InvalidCertificate(where, "has " + std::to_string(idx.size()) + " indices but the torus has " +
                                          std::to_string(c.torus.factors.size()) + " factors");
    }
    for (std::size_t f = 0; f < idx.size(); ++f) {
      if (idx[f] < 0 || idx[f] >= c.torus.factors[f].m) {
        throw InvalidCertificate(where + "[" + std::to_string(f) + "]",
                                 "index " + idx[f].str() + " out of range");
      }
    }
  }
}

VerificationReport verify_certificate(const EmbeddingCertificate& c, double tol) {
  check_structure(c);
  VerificationReport report;
  report.tol = tol;
  const std::size_t n = c.input.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      PairError e;
      e.i = i;
      e.j = j;
      e.expected = c.input(i, j);
      e.actual = torus_distance_squared(c.torus, c.assignment[i], c.assignment[j]);
      e.abs_error = std::abs(e.actual - e.expected);
      e.rel_error = e.expected > 0.0 ? e.abs_error / e.expected
                                     : (e.abs_error == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
      ++report.pairs_checked;
      report.max_abs = std::max(report.max_abs, e.abs_error);
      if (!report.worst || e.rel_error > report.worst->rel_error) report.worst = e;
      report.max_rel = std::max(report.max_rel, e.rel_error);
      if (!(e.rel_error <= tol)) {
        ++report.failing_pairs;
        if (report.failures.size() < VerificationReport::kMaxReportedFailures) {
          report.failures.push_back(e);
        }
      }
    }
  }
  report.pass = report.failing_pairs == 0;
  return report;
}

EmbeddingCertificate embed_simplex(const SquaredDistanceMatrix& d, const PipelineConfig& cfg) {
  require_alpha_fraction(cfg.alpha_fraction);
  if (cfg.correction_m < 2) throw InputError("correction polygon order must be at least 2");
  const std::size_t n = d.size();
  if (n == 0) throw InputError("embed_simplex: empty input");
  if (n == 1) return single_point_certificate(d, cfg);

  const ExpansionDecomposition decomposition = schoenberg_decompose(d, cfg.rank_tol, cfg.alpha_fraction);
  const double requested_delta = decomposition.alpha_squared / static_cast<double>(n * n);
  // Snapping distorts a squared distance by at most 2|a||e| + |e|^2 with
  // |e| <= 2 eps sqrt(k); eps keeps that three orders below the budget.
  const PointSet& base = decomposition.base;
  double diameter = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) diameter = std::max(diameter, (base.point(i) - base.point(j)).norm());
  const double eps = 1e-3 * requested_delta /
                     (4.0 * std::sqrt(static_cast<double>(std::max<std::size_t>(base.dim(), 1))) * (diameter + 1.0));
  const BaseClasses classes = coincident_classes(snap_coordinates(base, eps));
  DeltaEmbedding approx;
  if (classes.representatives.size() > 1) {
    approx = product_embed(classes.representatives, requested_delta);
  } else {
    approx.delta = approx.requested_delta = requested_delta;
    approx.pair_error = Eigen::MatrixXd::Zero(1, 1);
    for (std::size_t c = 0; c < decomposition.base.dim(); ++c) approx.dropped_coordinates.push_back(c);
  }
  const auto image = [&](std::size_t i) -> const TorusPoint& {
    return approx.embedding.points[classes.of[i]];
  };

  // a_ij^2 = delta_ij + alpha^2 with delta_ij = |x_i - x_j|^2 - |f(x_i) - f(x_j)|^2.
  // Since |x_i - x_j|^2 + alpha^2 = d_ij, this is d_ij - |f(x_i) - f(x_j)|^2;
  // reading d directly keeps the classical-scaling rounding out of the result.
  const auto size = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd correction_sq = Eigen::MatrixXd::Zero(size, size);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double image_sq = approx.embedding.torus.factors.empty()
                                  ? 0.0
                                  : torus_distance_squared(approx.embedding.torus, image(i), image(j));
      const auto a = static_cast<Eigen::Index>(i);
      const auto b = static_cast<Eigen::Index>(j);
      correction_sq(a, b) = correction_sq(b, a) = d(i, j) - image_sq;
    }
  }
  const AlmostRegularMatrix correction = AlmostRegularMatrix::from_squared(correction_sq);
  const AlmostRegularRealization realization = realize_almost_regular(correction);

  const bool have_delta_factors = !approx.embedding.torus.factors.empty();
  const BigInt correction_m = cfg.uniform_m && have_delta_factors ? approx.params.m : cfg.correction_m;
  const TorusEmbedding corrected = embed_almost_regular(realization.plan, correction_m);
  TorusEmbedding full = corrected;
  if (have_delta_factors) {
    TorusEmbedding expanded{approx.embedding.torus, {}};
    for (std::size_t i = 0; i < n; ++i) expanded.points.push_back(image(i));
    full = concatenate(expanded, corrected);
  }

  EmbeddingCertificate c;
  c.input = d;
  c.torus = full.torus;
  c.assignment = full.points;

  CertificateParameters p;
  p.alpha = decomposition.alpha;
  p.alpha_squared = decomposition.alpha_squared;
  p.lambda_min = decomposition.lambda_min;
  p.alpha_fraction = cfg.alpha_fraction;
  p.requested_delta = requested_delta;
  p.delta = approx.delta;
  p.max_delta_error = approx.max_abs_error();
  p.n0 = approx.params.n0;
  p.n = approx.params.n;
  p.m = approx.params.m;
  p.delta_radius = approx.params.r;
  p.delta_factor_count = approx.embedding.torus.factors.size();
  p.used_coordinates = approx.used_coordinates;
  p.dropped_coordinates = approx.dropped_coordinates;
  p.mode = cfg.uniform_m ? "uniform-m" : "mixed";
  p.correction_m = correction_m;
  p.correction_margin = correction.margin();
  p.base_side = realization.plan.base_side;
  for (const auto& f : realization.plan.factors) {
    p.pair_factors.push_back(PairFactorRecord{f.i, f.j, f.side, f.phi});
  }
  c.parameters = std::move(p);
  c.meta = CertificateMeta{kVersion, cfg.accept_tol, cfg.rank_tol};

  const VerificationReport report = verify_certificate(c, cfg.accept_tol);
  c.errors = ErrorReport{report.max_abs, report.max_rel};
  if (!report.pass) {
    throw VerificationFailed("constructed certificate misses tolerance: max relative error " +
                             std::to_string(report.max_rel));
  }
  return c;
}

EmbeddingCertificate embed_simplex(const PointSet& y, const PipelineConfig& cfg) {
  if (y.empty()) throw InputError("embed_simplex: empty input");
  if (!is_simplex(y, cfg.rank_tol)) throw NotSimplex("input is not a simplex");
  return embed_simplex(squared_distances(y), cfg);
}

}  // namespace torus_embed
