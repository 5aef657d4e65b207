#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "vote_ensemble/error.hpp"
#include "vote_ensemble/harness/experiment.hpp"

namespace vote_ensemble::cli {

/// Invalid configuration, anchored to a source line (1-based; 0 if unknown).
class ConfigError : public InvalidArgument {
 public:
  ConfigError(const std::string& source, std::size_t line, const std::string& field,
              const std::string& what);

  std::size_t line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  std::size_t line_;
  std::string field_;
};

/// A parsed YAML experiment file.
///
///   problem:
///     id: lp_example          # lp_example | regression | resource_alloc
///     alpha: 2.1              #   | matching | portfolio | constant
///   methods: [base, move, rove, roves]
///   n_grid: [200, 400, 800]
///   replications: 500
///   delta: 0.5
///   seed: 42
///   ensemble:                 # optional, recommended settings by default
///     k: max(10, n/200)
///     epsilon: adaptive       # or a number >= 0
///
/// Unknown keys are rejected.
struct RunConfig {
  harness::ExperimentPlan plan;
  std::string source;     // path or label used in messages
  std::string text;       // raw file contents
  bool has_experiment = false;
  std::map<std::string, std::size_t> field_lines;

  /// Line of `field` or of its nearest recorded parent, else 0.
  std::size_t line_of(const std::string& field) const;
  /// Runs plan.validate(), rethrowing failures as line-anchored ConfigErrors.
  void validate() const;
};

/// Parses config text. With `require_experiment` false only `problem` is
/// mandatory (the `pk` subcommand).
RunConfig parse_run_config(const std::string& text, const std::string& source,
                           bool require_experiment = true);

RunConfig load_run_config(const std::string& path, bool require_experiment = true);

/// 64-bit FNV-1a of the bytes, as 16 hex digits.
std::string config_hash(const std::string& text);

}  // namespace vote_ensemble::cli
