#pragma once

// Byte-stable serialization: numbers use 12 significant digits with '.'
// as separator, lines end in '\n', and runtimes never appear in results.

#include <cstdint>
#include <string>

#include "vote_ensemble/cli/config.hpp"
#include "vote_ensemble/harness/experiment.hpp"
#include "vote_ensemble/theory/selection_probability.hpp"

namespace vote_ensemble::cli {

/// "%.12g"; -0 prints as "0", non-finite values as "nan", "inf", "-inf".
std::string format_number(double value);

/// Value with the 12-significant-digit rounding applied.
double round12(double value);

inline constexpr const char* kResultsCsvHeader =
    "method,n,replications,tail,tail_se,mean_excess,mean_se,failures";

std::string results_csv(const harness::TailCurve& curve);

std::string results_json(const RunConfig& config, const harness::TailCurve& curve);

struct RunInfo {
  std::size_t workers = 1;
  double wall_seconds = 0.0;
};

/// Everything needed to reproduce the run: version, effective seed, config
/// text and hash, oracle metadata. Also records runtimes and failures.
std::string manifest_json(const RunConfig& config, const harness::TailCurve& curve,
                          const RunInfo& info);

inline constexpr const char* kPkCsvHeader = "model_key,p_hat,se";

/// Rows in table order; model_key is Model::to_string().
std::string pk_csv(const theory::PkTable& table);

/// Version string compiled into the binary.
const char* artifact_version();

}  // namespace vote_ensemble::cli
