#pragma once

// Subcommand bodies. Each returns the process exit code: 0 on success,
// 2 for invalid input, 1 for I/O or unexpected failures.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace vote_ensemble::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInvalid = 2;

struct ExperimentOptions {
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;  // overrides the config seed
  std::size_t workers = 1;
};

/// Writes results.csv, results.json and manifest.json into out_dir.
int cmd_experiment(const ExperimentOptions& options, std::ostream& out, std::ostream& err);

struct BoundsOptions {
  std::optional<double> p_max;
  std::optional<double> eta;
  std::optional<std::uint64_t> n;
  std::optional<std::uint64_t> k;
  std::optional<std::uint64_t> B;
  std::optional<std::uint64_t> cardinality;
  /// A `model_key,p_hat,se` table for a two-model problem whose SAA picks the
  /// optimum with probability q: sets p_max = q, η = 2q - 1 and |Θ| = 2.
  std::optional<std::string> pk_file;
};

/// Prints each bound term and the total, one `name value` line each.
int cmd_bounds(const BoundsOptions& options, std::ostream& out, std::ostream& err);

struct PkOptions {
  std::string config_path;
  std::size_t k = 10;
  std::uint64_t trials = 100000;
  std::optional<std::uint64_t> seed;  // defaults to the config seed
  std::optional<std::string> out_path;  // stdout when absent
};

int cmd_pk(const PkOptions& options, std::ostream& out, std::ostream& err);

/// `--workers`, else VOTE_ENSEMBLE_WORKERS, else the hardware thread count.
std::size_t resolve_workers(std::optional<std::size_t> flag);

}  // namespace vote_ensemble::cli
