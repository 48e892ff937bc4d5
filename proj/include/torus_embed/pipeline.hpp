#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "torus_embed/almost_regular.hpp"
#include "torus_embed/bigint.hpp"
#include "torus_embed/geometry.hpp"
#include "torus_embed/polygon_torus.hpp"

namespace torus_embed {

inline constexpr double kDefaultAcceptTol = 1e-8;
inline constexpr const char* kVersion = "0.1.0";

// Y = regular expansion of base: |y_i - y_j|^2 = |x_i - x_j|^2 + alpha^2.
struct ExpansionDecomposition {
  PointSet base;
  double alpha = 0.0;
  double alpha_squared = 0.0;
  // Smallest eigenvalue of the centered Gram of Y on the centered subspace.
  double lambda_min = 0.0;
};

// alpha^2 = alpha_fraction * lambda_min with alpha_fraction in (0, 2); any
// value in that range keeps the base realizable.
ExpansionDecomposition schoenberg_decompose(const SquaredDistanceMatrix& d,
                                            double tol = kDefaultRankTol,
                                            double alpha_fraction = 1.0);
ExpansionDecomposition schoenberg_decompose(const PointSet& y, double tol = kDefaultRankTol,
                                            double alpha_fraction = 1.0);

struct PipelineConfig {
  double rank_tol = kDefaultRankTol;
  double accept_tol = kDefaultAcceptTol;
  double alpha_fraction = 1.0;
  // Every factor uses the delta-embedding order instead of correction_m.
  bool uniform_m = false;
  BigInt correction_m = 3;
};

struct PairFactorRecord {
  std::size_t i = 0;
  std::size_t j = 0;
  double side = 0.0;
  std::vector<std::size_t> phi;
  friend bool operator==(const PairFactorRecord&, const PairFactorRecord&) = default;
};

// Construction record. Verification never reads it.
struct CertificateParameters {
  double alpha = 0.0;
  double alpha_squared = 0.0;
  double lambda_min = 0.0;
  double alpha_fraction = 1.0;
  double requested_delta = 0.0;
  double delta = 0.0;
  double max_delta_error = 0.0;
  BigInt n0 = 0;
  BigInt n = 0;
  BigInt m = 0;
  double delta_radius = 0.0;
  std::size_t delta_factor_count = 0;
  std::vector<std::size_t> used_coordinates;
  std::vector<std::size_t> dropped_coordinates;
  std::string mode = "mixed";
  BigInt correction_m = 3;
  double correction_margin = 0.0;
  double base_side = 0.0;
  std::vector<PairFactorRecord> pair_factors;

  friend bool operator==(const CertificateParameters&, const CertificateParameters&) = default;
};

struct ErrorReport {
  double max_abs = 0.0;
  double max_rel = 0.0;
  friend bool operator==(const ErrorReport&, const ErrorReport&) = default;
};

struct CertificateMeta {
  std::string version = kVersion;
  double accept_tol = kDefaultAcceptTol;
  double rank_tol = kDefaultRankTol;
  friend bool operator==(const CertificateMeta&, const CertificateMeta&) = default;
};

struct EmbeddingCertificate {
  SquaredDistanceMatrix input;
  TorusSpec torus;
  std::vector<TorusPoint> assignment;
  std::optional<CertificateParameters> parameters;
  std::optional<ErrorReport> errors;
  std::optional<CertificateMeta> meta;
};

struct PairError {
  std::size_t i = 0;
  std::size_t j = 0;
  double expected = 0.0;  // input squared distance
  double actual = 0.0;    // torus squared distance
  double abs_error = 0.0;
  double rel_error = 0.0;
};

struct VerificationReport {
  bool pass = true;
  double tol = 0.0;
  double max_abs = 0.0;
  double max_rel = 0.0;
  std::size_t pairs_checked = 0;
  std::size_t failing_pairs = 0;
  std::optional<PairError> worst;
  // Up to kMaxReportedFailures offending pairs, in (i, j) order.
  std::vector<PairError> failures;

  static constexpr std::size_t kMaxReportedFailures = 16;
};

// Throws InvalidCertificate naming the first bad field.
void check_structure(const EmbeddingCertificate& c);

// Recomputes every pairwise torus distance from chords alone and compares
// with the input squared distances. Pass iff max relative error <= tol.
VerificationReport verify_certificate(const EmbeddingCertificate& c, double tol = kDefaultAcceptTol);

// Full construction: decomposition, delta-embedding of the base, almost
// regular correction, concatenation, self-verification. Throws NotSimplex
// for affinely dependent input and VerificationFailed if the result misses
// cfg.accept_tol.
EmbeddingCertificate embed_simplex(const PointSet& y, const PipelineConfig& cfg = {});
EmbeddingCertificate embed_simplex(const SquaredDistanceMatrix& d, const PipelineConfig& cfg = {});

}  // namespace torus_embed
