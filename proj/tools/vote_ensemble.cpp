// vote_ensemble: run tail experiments, evaluate MoVE bounds, estimate p_k.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "vote_ensemble/cli/commands.hpp"
#include "vote_ensemble/cli/output.hpp"

namespace cli = vote_ensemble::cli;

int main(int argc, char** argv) {
  CLI::App app{"Voting ensembles for heavy-tailed stochastic optimization"};
  app.set_version_flag("--version", std::string(cli::artifact_version()));
  app.require_subcommand(1);

  cli::ExperimentOptions exp;
  std::optional<std::uint64_t> exp_seed;
  std::optional<std::size_t> exp_workers;
  auto* experiment = app.add_subcommand("experiment", "Run a tail-probability experiment");
  experiment->add_option("--config", exp.config_path, "YAML experiment file")->required();
  experiment->add_option("--out", exp.out_dir, "Output directory")->required();
  experiment->add_option("--seed", exp_seed, "Master seed (overrides the config)");
  experiment->add_option("--workers", exp_workers,
                         "Worker threads (default: $VOTE_ENSEMBLE_WORKERS or all cores)");

  cli::BoundsOptions bounds;
  auto* bounds_cmd = app.add_subcommand("bounds", "Evaluate the MoVE finite-sample tail bound");
  bounds_cmd->add_option("--p-max", bounds.p_max, "max_θ p_k(θ)");
  bounds_cmd->add_option("--eta", bounds.eta, "gap η_{k,δ}");
  bounds_cmd->add_option("--n", bounds.n, "sample size");
  bounds_cmd->add_option("--k", bounds.k, "subsample size");
  bounds_cmd->add_option("--B", bounds.B, "number of subsamples");
  bounds_cmd->add_option("--cardinality", bounds.cardinality, "|Θ|");
  bounds_cmd->add_option("--pk-file", bounds.pk_file,
                         "p_k table of a two-model problem; sets p_max, eta, cardinality");

  cli::PkOptions pk;
  auto* pk_cmd = app.add_subcommand("pk", "Estimate the base learner's p_k table");
  pk_cmd->add_option("--config", pk.config_path, "YAML problem file")->required();
  pk_cmd->add_option("--k", pk.k, "training set size")->capture_default_str();
  pk_cmd->add_option("--trials", pk.trials, "Monte-Carlo trials")->capture_default_str();
  pk_cmd->add_option("--seed", pk.seed, "seed (default: the config seed)");
  pk_cmd->add_option("--out", pk.out_path, "output CSV (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kExitInvalid;
  }

  if (*experiment) {
    exp.seed = exp_seed;
    exp.workers = cli::resolve_workers(exp_workers);
    return cli::cmd_experiment(exp, std::cout, std::cerr);
  }
  if (*bounds_cmd) return cli::cmd_bounds(bounds, std::cout, std::cerr);
  return cli::cmd_pk(pk, std::cout, std::cerr);
}
