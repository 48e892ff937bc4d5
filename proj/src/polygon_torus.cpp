#include "torus_embed/polygon_torus.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "torus_embed/errors.hpp"

namespace torus_embed {

namespace {

void require_same_arity(const TorusSpec& torus, std::size_t count, const char* what) {
  if (count != torus.factors.size()) {
    throw InputError(std::string(what) + " has " + std::to_string(count) +
                     " entries but the torus has " + std::to_string(torus.factors.size()) +
                     " factors");
  }
}

}  // namespace

void validate(const PolygonSpec& polygon) {
  if (polygon.m < 2) throw InputError("polygon order m must be at least 2, got " + polygon.m.str());
  if (!std::isfinite(polygon.r) || polygon.r <= 0.0) {
    throw InputError("polygon circumradius must be positive and finite");
  }
}

void validate(const TorusSpec& torus) {
  if (torus.factors.empty()) throw InputError("torus has no factors");
  for (const auto& f : torus.factors) validate(f);
}

void validate(const TorusSpec& torus, const TorusPoint& point) {
  require_same_arity(torus, point.indices.size(), "torus point");
  for (std::size_t i = 0; i < point.indices.size(); ++i) {
    const auto& j = point.indices[i];
    if (j < 0 || j >= torus.factors[i].m) {
      throw InputError("vertex index " + j.str() + " out of range for factor " +
                       std::to_string(i) + " (m = " + torus.factors[i].m.str() + ")");
    }
  }
}

double chord(const BigInt& m, double r, const BigInt& dj) {
  BigInt k = floor_mod(dj, m);
  if (2 * k > m) k = m - k;
  return 2.0 * r * std::sin(std::numbers::pi * ratio_to_double(k, m));
}

double torus_distance_squared(const TorusSpec& torus, const TorusPoint& p, const TorusPoint& q) {
  require_same_arity(torus, p.indices.size(), "first torus point");
  require_same_arity(torus, q.indices.size(), "second torus point");
  double total = 0.0;
  for (std::size_t i = 0; i < torus.factors.size(); ++i) {
    const auto& f = torus.factors[i];
    const BigInt diff = p.indices[i] - q.indices[i];
    const double c = chord(f.m, f.r, diff < 0 ? BigInt(-diff) : diff);
    total += c * c;
  }
  return total;
}

double torus_distance(const TorusSpec& torus, const TorusPoint& p, const TorusPoint& q) {
  return std::sqrt(torus_distance_squared(torus, p, q));
}

TorusPoint shift(const TorusSpec& torus, const TorusPoint& p, std::span<const BigInt> offsets) {
  require_same_arity(torus, offsets.size(), "offset list");
  require_same_arity(torus, p.indices.size(), "torus point");
  TorusPoint out;
  out.indices.reserve(p.indices.size());
  for (std::size_t i = 0; i < offsets.size(); ++i) {
    out.indices.push_back(floor_mod(p.indices[i] + offsets[i], torus.factors[i].m));
  }
  return out;
}

Eigen::RowVectorXd materialize(const TorusSpec& torus, const TorusPoint& p) {
  require_same_arity(torus, p.indices.size(), "torus point");
  Eigen::RowVectorXd out(static_cast<Eigen::Index>(torus.ambient_dim()));
  for (std::size_t i = 0; i < torus.factors.size(); ++i) {
    const auto& f = torus.factors[i];
    const double theta = 2.0 * std::numbers::pi * ratio_to_double(floor_mod(p.indices[i], f.m), f.m);
    out(static_cast<Eigen::Index>(2 * i)) = f.r * std::cos(theta);
    out(static_cast<Eigen::Index>(2 * i + 1)) = f.r * std::sin(theta);
  }
  return out;
}

}  // namespace torus_embed

namespace torus_embed {

TorusEmbedding concatenate(const TorusEmbedding& left, const TorusEmbedding& right) {
  if (left.points.size() != right.points.size()) {
    throw InputError("cannot concatenate embeddings of " + std::to_string(left.points.size()) +
                     " and " + std::to_string(right.points.size()) + " points");
  }
  TorusEmbedding out;
  out.torus.factors = left.torus.factors;
  out.torus.factors.insert(out.torus.factors.end(), right.torus.factors.begin(),
                           right.torus.factors.end());
  out.points.resize(left.points.size());
  for (std::size_t s = 0; s < left.points.size(); ++s) {
    auto& idx = out.points[s].indices;
    idx = left.points[s].indices;
    idx.insert(idx.end(), right.points[s].indices.begin(), right.points[s].indices.end());
  }
  return out;
}

}  // namespace torus_embed
