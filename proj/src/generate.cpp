#include "torus_embed/generate.hpp"

#include <cmath>
#include <random>
#include <string>

#include "torus_embed/errors.hpp"
#include "torus_embed/regular_simplex.hpp"

namespace torus_embed {

namespace {

constexpr int kMaxAttempts = 10000;
constexpr double kMinRandomGap = 1e-3;

}  // namespace

InputKind parse_input_kind(std::string_view name) {
  if (name == "regular") return InputKind::kRegular;
  if (name == "random") return InputKind::kRandom;
  if (name == "perturbed") return InputKind::kPerturbed;
  throw InputError("unknown input kind '" + std::string(name) + "' (expected regular, random or perturbed)");
}

PointSet generate_input(InputKind kind, std::size_t n, std::uint64_t seed, double noise) {
  if (n == 0) throw InputError("generate_input: n must be at least 1");
  if (kind == InputKind::kRegular) return regular_simplex(n, 1.0);
  if (!std::isfinite(noise) || noise < 0.0) throw InputError("generate_input: noise must be >= 0");

  std::mt19937_64 rng(seed);
  const auto rows = static_cast<Eigen::Index>(n);
  const auto cols = static_cast<Eigen::Index>(n - 1);
  if (kind == InputKind::kRandom) {
    std::uniform_real_distribution<double> coord(-1.0, 1.0);
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
      Eigen::MatrixXd x(rows, cols);
      for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index c = 0; c < cols; ++c) x(i, c) = coord(rng);
      PointSet p(std::move(x));
      if (n == 1) return p;
      if (is_simplex(p) && std::sqrt(squared_distances(p).min_off_diagonal()) >= kMinRandomGap) return p;
    }
  } else {
    const PointSet base = regular_simplex(n, 1.0);
    std::uniform_real_distribution<double> jitter(-noise, noise);
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
      Eigen::MatrixXd x = base.coords();
      for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index c = 0; c < cols; ++c) x(i, c) += jitter(rng);
      PointSet p(std::move(x));
      if (is_simplex(p)) return p;
    }
  }
  throw Error("generate_input: no simplex found after " + std::to_string(kMaxAttempts) + " attempts");
}

}  // namespace torus_embed
