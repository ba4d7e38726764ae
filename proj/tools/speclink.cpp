// speclink: derive, estimate, and compare one-step Koopman matrices for
// candidate PDEs on a Chebyshev tensor grid, and run the full
// confusion-matrix identification experiment.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <iostream>

#include "speclink/io.hpp"

namespace {

using namespace speclink;

struct CommonOptions {
  int dims = 2;
  Eigen::Index m = 8;
  double dt = 5e-4;
  double horizon = 0.5;
  PhysicalParams params;
  std::string pde_name;
  std::string pde_file;

  BasisSpec basis() const { return BasisSpec::uniform(dims, m); }

  PdeSpec pde() const {
    if (!pde_file.empty()) {
      if (!pde_name.empty())
        throw ConfigError("give either --pde or --pde-file, not both");
      return io::pde_from_json(io::parse_json_file(pde_file));
    }
    if (pde_name.empty()) throw ConfigError("a PDE is required (--pde or --pde-file)");
    return find_pde(builtin_library(dims, params), pde_name);
  }
};

void add_common(CLI::App* cmd, CommonOptions& opt, bool with_time) {
  cmd->add_option("--dims", opt.dims, "number of spatial dimensions")->capture_default_str();
  cmd->add_option("--M", opt.m, "Chebyshev resolution per axis (even)")->capture_default_str();
  if (with_time) {
    cmd->add_option("--dt", opt.dt, "time step")->capture_default_str();
  }
  cmd->add_option("--cx", opt.params.c_x, "advection speed along x")->capture_default_str();
  cmd->add_option("--cy", opt.params.c_y, "advection speed along y")->capture_default_str();
  cmd->add_option("--nu", opt.params.nu, "diffusion coefficient")->capture_default_str();
  cmd->add_option("--preset", [](const std::vector<std::string>& vals) {
        if (vals.front() != "paper")
          throw CLI::ValidationError("--preset", "unknown preset '" + vals.front() + "'");
        return true;
      },
      "named constant set; 'paper' = the defaults (M=8, dt=5e-4, T=0.5, builtin candidates)");
}

struct IcOptions {
  std::string kind = "gaussian";
  std::uint64_t seed = 1;
  double decay = 0.7;
  double sigma = 0.3;
  double amplitude = 1.0;
  std::vector<double> center;

  InitialCondition build() const {
    if (kind == "gaussian") {
      Eigen::VectorXd c(static_cast<Eigen::Index>(center.size()));
      for (std::size_t i = 0; i < center.size(); ++i) c[static_cast<Eigen::Index>(i)] = center[i];
      return InitialCondition::gaussian(sigma, amplitude, std::move(c));
    }
    if (kind == "random-smooth") return InitialCondition::random_smooth(seed, decay);
    throw ConfigError("unknown --ic '" + kind + "'; use gaussian or random-smooth");
  }
};

void add_ic(CLI::App* cmd, IcOptions& opt) {
  cmd->add_option("--ic", opt.kind, "initial condition family: gaussian | random-smooth")
      ->capture_default_str();
  cmd->add_option("--seed", opt.seed, "random-smooth seed")->capture_default_str();
  cmd->add_option("--decay", opt.decay, "random-smooth spectral decay rate in (0,1)")
      ->capture_default_str();
  cmd->add_option("--sigma", opt.sigma, "gaussian width")->capture_default_str();
  cmd->add_option("--amplitude", opt.amplitude, "gaussian amplitude")->capture_default_str();
  cmd->add_option("--center", opt.center, "gaussian center coordinates")->delimiter(',');
}

void print_dominance(const char* label, const ConfusionMatrix& table, bool minimize) {
  const std::vector<bool> flags = diagonal_best_per_column(table, minimize);
  std::printf("%s (%s per column):", label, minimize ? "min" : "max");
  bool all = true;
  for (std::size_t j = 0; j < flags.size(); ++j) {
    std::printf(" %s=%s", table.true_names[j].c_str(), flags[j] ? "yes" : "NO");
    all = all && flags[j];
  }
  std::printf("  -> %s\n", all ? "diagonal dominance holds" : "diagonal dominance VIOLATED");
}

int run(int argc, char** argv) {
  CLI::App app{"numerical spectrum linking for PDE identification"};
  app.require_subcommand(1);

  // --- simulate ---
  CommonOptions sim_opt;
  IcOptions sim_ic;
  std::string sim_out;
  auto* sim = app.add_subcommand("simulate", "RK4-integrate a candidate PDE, write a trajectory");
  sim->add_option("--pde", sim_opt.pde_name, "builtin PDE name");
  sim->add_option("--pde-file", sim_opt.pde_file, "custom PDE spec (JSON)");
  sim->add_option("--T", sim_opt.horizon, "total horizon")->capture_default_str();
  add_common(sim, sim_opt, /*with_time=*/true);
  add_ic(sim, sim_ic);
  sim->add_option("--out,-o", sim_out, "output trajectory file")->required();
  sim->callback([&] {
    const Trajectory traj = simulate(sim_opt.pde(), sim_ic.build(), sim_opt.basis(),
                                     sim_opt.dt, sim_opt.horizon);
    io::write_file(sim_out, io::to_json(traj));
    std::printf("snapshots: %lld\nfinal-state norm: %.17g\n",
                static_cast<long long>(traj.snapshot_count()),
                traj.snapshots.col(traj.snapshot_count() - 1).norm());
  });

  // --- derive ---
  CommonOptions der_opt;
  std::string der_out;
  auto* der = app.add_subcommand("derive", "equation-driven Koopman matrix K = exp(dt N)");
  der->add_option("--pde", der_opt.pde_name, "builtin PDE name");
  der->add_option("--pde-file", der_opt.pde_file, "custom PDE spec (JSON)");
  add_common(der, der_opt, /*with_time=*/true);
  der->add_option("--out,-o", der_out, "output matrix file")->required();
  der->callback([&] {
    const KoopmanMatrix k =
        matrix_exponential(assemble_generator(der_opt.pde(), der_opt.basis()), der_opt.dt);
    io::write_file(der_out, io::to_json(k));
    std::printf("wrote %s (P=%lld, dt=%.17g)\n", der_out.c_str(),
                static_cast<long long>(k.basis.total_size()), k.dt);
  });

  // --- estimate ---
  std::string est_traj, est_out;
  auto* est = app.add_subcommand("estimate", "data-driven Koopman matrix by least squares");
  est->add_option("--traj", est_traj, "input trajectory file")->required();
  est->add_option("--out,-o", est_out, "output matrix file")->required();
  est->callback([&] {
    const Trajectory traj = io::trajectory_from_json(io::parse_json_file(est_traj));
    const KoopmanMatrix k = estimate(build_pairs(traj), traj.dt);
    io::write_file(est_out, io::to_json(k));
    std::printf("wrote %s (P=%lld, %lld transitions)\n", est_out.c_str(),
                static_cast<long long>(k.basis.total_size()),
                static_cast<long long>(traj.snapshot_count() - 1));
  });

  // --- compare ---
  std::string cmp_star, cmp_hat;
  auto* cmp = app.add_subcommand(
      "compare", "spectrum-linking scores between two Koopman matrix files");
  cmp->add_option("star", cmp_star, "equation-driven side of the asymmetric metrics")
      ->required();
  cmp->add_option("hat", cmp_hat, "data-driven side")->required();
  cmp->callback([&] {
    const KoopmanMatrix star = io::koopman_from_json(io::parse_json_file(cmp_star));
    const KoopmanMatrix hat = io::koopman_from_json(io::parse_json_file(cmp_hat));
    if (star.basis != hat.basis)
      throw DataError("matrix files use different bases; cannot compare");
    const SpectralDecomposition star_dec = decompose(star);
    const SpectralDecomposition hat_dec = decompose(hat);
    const LinkScore score = link_score(star_dec, hat_dec);
    const double frob = (hat.entries - star.entries).norm();
    std::printf("{\"star\":\"%s\",\"hat\":\"%s\"}\n",
                star.provenance == Provenance::equation_driven ? "equation_driven"
                                                               : "data_driven",
                hat.provenance == Provenance::equation_driven ? "equation_driven"
                                                              : "data_driven");
    std::printf("{\"d\":%s}\n", io::json_double(score.d).c_str());
    std::printf("{\"s\":%s}\n", io::json_double(score.s).c_str());
    std::printf("{\"frobenius\":%s}\n", io::json_double(frob).c_str());
    std::printf(
        "{\"residuals\":{\"star_max\":%s,\"star_mean\":%s,\"hat_max\":%s,\"hat_mean\":%s}}\n",
        io::json_double(star_dec.residuals.maxCoeff()).c_str(),
        io::json_double(star_dec.residuals.mean()).c_str(),
        io::json_double(hat_dec.residuals.maxCoeff()).c_str(),
        io::json_double(hat_dec.residuals.mean()).c_str());
  });

  // --- confusion ---
  std::string conf_config, conf_dir = ".";
  CommonOptions conf_opt;
  std::vector<std::uint64_t> conf_seeds;
  double conf_decay = 0.7;
  bool conf_no_gaussian = false;
  auto* conf = app.add_subcommand("confusion", "full identification experiment, CSV + JSON report");
  conf->add_option("--config", conf_config, "experiment config file (JSON)");
  conf->add_option("--T", conf_opt.horizon, "total horizon")->capture_default_str();
  add_common(conf, conf_opt, /*with_time=*/true);
  conf->add_option("--seeds", conf_seeds, "random-smooth seeds")->delimiter(',');
  conf->add_option("--decay", conf_decay, "random-smooth spectral decay rate")
      ->capture_default_str();
  conf->add_flag("--no-gaussian", conf_no_gaussian, "skip the single Gaussian-IC variant");
  conf->add_option("--out-dir", conf_dir, "output directory")->capture_default_str();
  conf->callback([&] {
    ExperimentConfig config;
    if (!conf_config.empty()) {
      config = io::config_from_json(io::parse_json_file(conf_config));
    } else {
      config.basis = conf_opt.basis();
      config.dt = conf_opt.dt;
      config.horizon = conf_opt.horizon;
      config.params = conf_opt.params;
      config.ic_decay = conf_decay;
    }
    if (!conf_seeds.empty()) config.seeds = conf_seeds;
    if (conf_no_gaussian) config.include_gaussian = false;
    config.validate();

    const ConfusionResult result = confusion_experiment(config);
    const std::filesystem::path dir(conf_dir);
    io::write_file(dir / "confusion_d.csv", io::to_csv(result.averaged.d));
    io::write_file(dir / "confusion_s.csv", io::to_csv(result.averaged.s));
    io::write_file(dir / "detail.json", io::detail_json(config, result));
    std::printf("wrote %s, %s, %s\n", (dir / "confusion_d.csv").c_str(),
                (dir / "confusion_s.csv").c_str(), (dir / "detail.json").c_str());
    std::printf("random_smooth tables, averaged over %zu seed(s)\n", config.seeds.size());
    print_dominance("  s        ", result.averaged.s, /*minimize=*/false);
    print_dominance("  d        ", result.averaged.d, /*minimize=*/true);
    print_dominance("  frobenius", result.averaged.frobenius, /*minimize=*/true);
    if (result.gaussian) {
      std::printf("gaussian-IC tables\n");
      print_dominance("  s        ", result.gaussian->s, /*minimize=*/false);
      print_dominance("  d        ", result.gaussian->d, /*minimize=*/true);
      print_dominance("  frobenius", result.gaussian->frobenius, /*minimize=*/true);
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const speclink::ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const speclink::DataError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const speclink::NumericalError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  }
}
