#include "speclink/linking.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>

namespace speclink {

namespace {

void check_same_dimension(const SpectralDecomposition& star, const SpectralDecomposition& hat) {
  if (star.size() != hat.size())
    throw DataError("decompositions have different dimensions: " + std::to_string(star.size()) +
                    " vs " + std::to_string(hat.size()));
}

// Columns scaled by their eigenvalues: column j = lambda_j v_j.
Eigen::MatrixXcd scaled_pairs(const SpectralDecomposition& dec) {
  return dec.eigenvectors * dec.eigenvalues.asDiagonal();
}

}  // namespace

LinkScore link_score(const SpectralDecomposition& star, const SpectralDecomposition& hat) {
  check_same_dimension(star, hat);
  const Eigen::Index p = star.size();
  const Eigen::MatrixXcd sv = scaled_pairs(star);
  const Eigen::MatrixXcd hv = scaled_pairs(hat);
  const Eigen::VectorXd sn = sv.colwise().norm();
  const Eigen::VectorXd hn = hv.colwise().norm();

  LinkScore score;
  score.d_match.assign(static_cast<std::size_t>(p), -1);
  score.s_match.assign(static_cast<std::size_t>(p), -1);

  double d_total = 0.0;
  double s_total = 0.0;
  for (Eigen::Index i = 0; i < p; ++i) {
    double best_dist = std::numeric_limits<double>::infinity();
    Eigen::Index best_dist_j = 0;
    double best_align = -1.0;
    Eigen::Index best_align_j = -1;
    for (Eigen::Index j = 0; j < p; ++j) {
      const double dist = (sv.col(i) - hv.col(j)).norm();
      if (dist < best_dist) {
        best_dist = dist;
        best_dist_j = j;
      }
      if (sn[i] > 0.0 && hn[j] > 0.0) {
        const double align = std::abs(sv.col(i).dot(hv.col(j))) / (sn[i] * hn[j]);
        if (align > best_align) {
          best_align = align;
          best_align_j = j;
        }
      }
    }
    d_total += best_dist;
    score.d_match[static_cast<std::size_t>(i)] = best_dist_j;
    if (best_align_j >= 0) {
      s_total += best_align;
      score.s_match[static_cast<std::size_t>(i)] = best_align_j;
    }
  }
  score.d = d_total / static_cast<double>(p);
  score.s = s_total / static_cast<double>(p);
  return score;
}

double distance_d(const SpectralDecomposition& star, const SpectralDecomposition& hat) {
  return link_score(star, hat).d;
}

double similarity_s(const SpectralDecomposition& star, const SpectralDecomposition& hat) {
  return link_score(star, hat).s;
}

namespace {

std::vector<std::size_t> ranking(std::size_t n, const std::function<double(std::size_t)>& key,
                                 bool ascending) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return ascending ? key(a) < key(b) : key(a) > key(b);
  });
  return order;
}

}  // namespace

IdentifyResult identify(const KoopmanMatrix& hat,
                        const std::vector<std::pair<PdeSpec, KoopmanMatrix>>& candidates) {
  if (candidates.empty()) throw ConfigError("identify needs at least one candidate");
  const SpectralDecomposition hat_dec = decompose(hat);

  IdentifyResult result;
  result.verdicts.reserve(candidates.size());
  for (const auto& [spec, kstar] : candidates) {
    if (kstar.basis != hat.basis)
      throw DataError("candidate '" + spec.name + "' basis does not match data");
    CandidateVerdict verdict;
    verdict.name = spec.name;
    verdict.score = link_score(decompose(kstar), hat_dec);
    verdict.frobenius = (hat.entries - kstar.entries).norm();
    result.verdicts.push_back(std::move(verdict));
  }

  const auto n = result.verdicts.size();
  result.rank_by_d = ranking(n, [&](std::size_t i) { return result.verdicts[i].score.d; }, true);
  result.rank_by_s = ranking(n, [&](std::size_t i) { return result.verdicts[i].score.s; }, false);
  result.rank_by_frobenius =
      ranking(n, [&](std::size_t i) { return result.verdicts[i].frobenius; }, true);
  result.headline = result.verdicts[result.rank_by_s.front()].name;
  result.rankings_agree = result.rank_by_d.front() == result.rank_by_s.front() &&
                          result.rank_by_s.front() == result.rank_by_frobenius.front();
  return result;
}

void ExperimentConfig::validate() const {
  basis.validate();
  if (!(dt > 0.0)) throw ConfigError("experiment dt must be positive");
  if (!(horizon >= dt)) throw ConfigError("experiment horizon must be at least dt");
  if (seeds.empty()) throw ConfigError("experiment needs at least one seed");
  if (!(ic_decay > 0.0 && ic_decay < 1.0)) throw ConfigError("ic decay must lie in (0,1)");
  for (const PdeSpec& spec : candidates) spec.validate();
}

std::vector<PdeSpec> ExperimentConfig::candidate_set() const {
  if (!candidates.empty()) {
    // names must be unique within the library
    for (std::size_t i = 0; i < candidates.size(); ++i)
      for (std::size_t j = i + 1; j < candidates.size(); ++j)
        if (candidates[i].name == candidates[j].name)
          throw ConfigError("duplicate candidate name '" + candidates[i].name + "'");
    return candidates;
  }
  return builtin_library(basis.dims(), params);
}

std::vector<bool> diagonal_best_per_column(const ConfusionMatrix& m, bool minimize) {
  const Eigen::Index rows = m.values.rows(), cols = m.values.cols();
  if (rows != cols) throw DataError("diagonal check needs a square confusion matrix");
  std::vector<bool> result(static_cast<std::size_t>(cols));
  for (Eigen::Index j = 0; j < cols; ++j) {
    Eigen::Index best = 0;
    minimize ? m.values.col(j).minCoeff(&best) : m.values.col(j).maxCoeff(&best);
    result[static_cast<std::size_t>(j)] = (best == j);
  }
  return result;
}

ConfusionResult confusion_experiment(const ExperimentConfig& config) {
  config.validate();
  const std::vector<PdeSpec> candidates = config.candidate_set();

  // Equation-driven matrices and their decompositions, once per candidate.
  std::vector<KoopmanMatrix> stars;
  std::vector<SpectralDecomposition> star_decs;
  std::vector<std::string> names;
  stars.reserve(candidates.size());
  for (const PdeSpec& spec : candidates) {
    stars.push_back(matrix_exponential(assemble_generator(spec, config.basis), config.dt));
    star_decs.push_back(decompose(stars.back()));
    names.push_back(spec.name);
  }

  const auto n = static_cast<Eigen::Index>(candidates.size());
  auto make_table = [&](const std::string& metric) {
    return ConfusionMatrix{names, names, Eigen::MatrixXd::Zero(n, n), metric};
  };

  ConfusionResult result;
  result.averaged = {make_table("d"), make_table("s"), make_table("frobenius")};

  auto score_trajectory = [&](const Trajectory& traj, Eigen::Index true_idx,
                              std::uint64_t seed, const std::string& cell_label,
                              ConfusionTables& tables, double weight) {
    const std::string& true_name = names[static_cast<std::size_t>(true_idx)];
    KoopmanMatrix hat;
    SpectralDecomposition hat_dec;
    try {
      hat = estimate(build_pairs(traj), config.dt);
      hat_dec = decompose(hat);
    } catch (const std::exception& e) {
      throw DataError("confusion cell failed (true=" + true_name +
                      ", seed=" + std::to_string(seed) + "): " + e.what());
    }
    for (Eigen::Index ci = 0; ci < n; ++ci) {
      const std::string& cand_name = names[static_cast<std::size_t>(ci)];
      try {
        const LinkScore score = link_score(star_decs[static_cast<std::size_t>(ci)], hat_dec);
        const double frob =
            (hat.entries - stars[static_cast<std::size_t>(ci)].entries).norm();
        tables.d.values(ci, true_idx) += weight * score.d;
        tables.s.values(ci, true_idx) += weight * score.s;
        tables.frobenius.values(ci, true_idx) += weight * frob;
        result.cells.push_back({cell_label, seed, cand_name, score.d, score.s, frob});
      } catch (const std::exception& e) {
        throw DataError("confusion cell failed (true=" + true_name + ", candidate=" +
                        cand_name + ", seed=" + std::to_string(seed) + "): " + e.what());
      }
    }
  };

  for (Eigen::Index ti = 0; ti < n; ++ti) {
    const PdeSpec& true_spec = candidates[static_cast<std::size_t>(ti)];
    for (std::uint64_t seed : config.seeds) {
      const Trajectory traj =
          simulate(true_spec, InitialCondition::random_smooth(seed, config.ic_decay),
                   config.basis, config.dt, config.horizon);
      score_trajectory(traj, ti, seed, true_spec.name, result.averaged,
                       1.0 / static_cast<double>(config.seeds.size()));
    }
  }

  if (config.include_gaussian) {
    ConfusionTables tables{make_table("d"), make_table("s"), make_table("frobenius")};
    for (Eigen::Index ti = 0; ti < n; ++ti) {
      const PdeSpec& true_spec = candidates[static_cast<std::size_t>(ti)];
      const Trajectory traj = simulate(true_spec, config.gaussian_ic, config.basis,
                                       config.dt, config.horizon);
      score_trajectory(traj, ti, /*seed=*/0, true_spec.name + " (gaussian)", tables, 1.0);
    }
    result.gaussian = std::move(tables);
  }

  return result;
}

}  // namespace speclink
