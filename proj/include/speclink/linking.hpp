#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "speclink/koopman.hpp"

namespace speclink {

/// Spectrum-linking scores between an equation-driven (star) and a
/// data-driven (hat) decomposition, with the matched hat index per star pair.
struct LinkScore {
  double d = 0.0;  // mean minimal distance, lower is better
  double s = 0.0;  // mean maximal alignment, in [0,1], higher is better
  std::vector<Eigen::Index> d_match;  // argmin_j per star index i
  std::vector<Eigen::Index> s_match;  // argmax_j per star index i, -1 if skipped
};

/// d = (1/P) sum_i min_j || lambda*_i v*_i - lambda^_j v^_j ||_2.
double distance_d(const SpectralDecomposition& star, const SpectralDecomposition& hat);

/// s = (1/P) sum_i max_j |<lambda*_i v*_i, lambda^_j v^_j>| / (norms).
/// Hat pairs with lambda = 0 are skipped in the max; a star pair with
/// lambda = 0 (or nothing to match against) contributes 0.
double similarity_s(const SpectralDecomposition& star, const SpectralDecomposition& hat);

/// Both metrics plus the match indices in one pass.
LinkScore link_score(const SpectralDecomposition& star, const SpectralDecomposition& hat);

struct CandidateVerdict {
  std::string name;
  LinkScore score;
  double frobenius = 0.0;  // || K_hat - K_star ||_F
};

struct IdentifyResult {
  std::vector<CandidateVerdict> verdicts;  // in candidate order
  // Indices into `verdicts`, best candidate first.
  std::vector<std::size_t> rank_by_d;
  std::vector<std::size_t> rank_by_s;
  std::vector<std::size_t> rank_by_frobenius;
  std::string headline;  // winner of the s ranking
  bool rankings_agree = false;
};

/// Score a data-driven matrix against every candidate and rank three ways.
IdentifyResult identify(const KoopmanMatrix& hat,
                        const std::vector<std::pair<PdeSpec, KoopmanMatrix>>& candidates);

/// Full confusion-experiment configuration. An empty candidate list means
/// the builtin four-PDE testbed.
struct ExperimentConfig {
  BasisSpec basis = BasisSpec::uniform(2, 8);
  double dt = 5e-4;
  double horizon = 0.5;
  PhysicalParams params;
  std::vector<PdeSpec> candidates;
  std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};
  double ic_decay = 0.7;
  bool include_gaussian = true;  // also run the single Gaussian-IC variant
  InitialCondition gaussian_ic = InitialCondition::gaussian();

  static ExperimentConfig paper_preset() { return {}; }

  void validate() const;
  std::vector<PdeSpec> candidate_set() const;
};

/// Metric table over (candidate, true) pairs; rows are candidates, columns
/// are the true data-generating PDEs.
struct ConfusionMatrix {
  std::vector<std::string> candidate_names;  // rows
  std::vector<std::string> true_names;       // columns
  Eigen::MatrixXd values;
  std::string metric;  // "d", "s" or "frobenius"
};

/// True per column j when the diagonal entry is the best in that column
/// (minimum when `minimize`, maximum otherwise). Requires a square table.
std::vector<bool> diagonal_best_per_column(const ConfusionMatrix& m, bool minimize);

struct ConfusionCell {
  std::string true_name;
  std::uint64_t seed = 0;
  std::string candidate_name;
  double d = 0.0;
  double s = 0.0;
  double frobenius = 0.0;
};

struct ConfusionTables {
  ConfusionMatrix d;
  ConfusionMatrix s;
  ConfusionMatrix frobenius;
};

struct ConfusionResult {
  ConfusionTables averaged;            // seed-averaged random_smooth tables
  std::vector<ConfusionCell> cells;    // per-seed detail
  std::optional<ConfusionTables> gaussian;  // single Gaussian-IC variant
};

/// Run the full identification experiment: for every true PDE and seed,
/// simulate, estimate, decompose, and score against every candidate.
/// Deterministic given the config; cells average over seeds.
ConfusionResult confusion_experiment(const ExperimentConfig& config);

}  // namespace speclink
