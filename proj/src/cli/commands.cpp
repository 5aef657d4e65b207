#include "vote_ensemble/cli/commands.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <thread>

#include "vote_ensemble/cli/config.hpp"
#include "vote_ensemble/cli/output.hpp"
#include "vote_ensemble/error.hpp"
#include "vote_ensemble/theory/bounds.hpp"

namespace vote_ensemble::cli {

namespace {

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
  f << contents;
  if (!f.flush()) throw std::runtime_error("failed writing " + path.string());
}

// Shortest text that parses back to the same double.
std::string exact(double value) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

// Largest p_hat of a `model_key,p_hat,se` table.
double max_phat_from_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidField("pk-file", "cannot open " + path);
  std::string line;
  if (!std::getline(in, line) || line != kPkCsvHeader) {
    throw InvalidField("pk-file", "expected header '" + std::string(kPkCsvHeader) + "'");
  }
  double best = -1.0;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    const auto first = line.find(',');
    const auto second = first == std::string::npos ? first : line.find(',', first + 1);
    if (second == std::string::npos) {
      throw InvalidField("pk-file", "line " + std::to_string(row) + ": expected 3 columns");
    }
    const std::string cell = line.substr(first + 1, second - first - 1);
    char* end = nullptr;
    const double p = std::strtod(cell.c_str(), &end);
    if (cell.empty() || *end != '\0' || !(p >= 0.0 && p <= 1.0)) {
      throw InvalidField("pk-file", "line " + std::to_string(row) + ": p_hat must be in [0, 1]");
    }
    best = std::max(best, p);
  }
  if (best < 0.0) throw InvalidField("pk-file", "table has no rows");
  return best;
}

}  // namespace

std::size_t resolve_workers(std::optional<std::size_t> flag) {
  if (flag && *flag > 0) return *flag;
  if (const char* env = std::getenv("VOTE_ENSEMBLE_WORKERS")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (*env != '\0' && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

int cmd_experiment(const ExperimentOptions& options, std::ostream& out, std::ostream& err) {
  RunConfig config;
  try {
    config = load_run_config(options.config_path);
    if (options.seed) config.plan.master_seed = *options.seed;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  try {
    const auto start = std::chrono::steady_clock::now();
    const auto curve = harness::run_tail_experiment(config.plan, options.workers);
    RunInfo info;
    info.workers = options.workers;
    info.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const std::filesystem::path dir(options.out_dir);
    std::filesystem::create_directories(dir);
    write_file(dir / "results.csv", results_csv(curve));
    write_file(dir / "results.json", results_json(config, curve));
    write_file(dir / "manifest.json", manifest_json(config, curve, info));

    if (!curve.failures.empty()) {
      err << "warning: " << curve.failures.size()
          << " replication(s) failed; see manifest.json\n";
    }
    out << "wrote " << (dir / "results.csv").string() << '\n';
    return kExitOk;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

int cmd_bounds(const BoundsOptions& options, std::ostream& out, std::ostream& err) {
  try {
    theory::BoundInputs in;
    const auto need = [](const auto& v, const char* name) {
      if (!v) throw InvalidField(name, "required");
      return *v;
    };
    if (options.pk_file) {
      if (options.p_max || options.eta || options.cardinality) {
        throw InvalidField("pk-file", "cannot be combined with --p-max, --eta or --cardinality");
      }
      const double q = max_phat_from_file(*options.pk_file);
      in.p_max = q;
      in.eta = 2.0 * q - 1.0;
      in.cardinality = 2;
    } else {
      in.p_max = need(options.p_max, "p-max");
      in.eta = need(options.eta, "eta");
      in.cardinality = need(options.cardinality, "cardinality");
    }
    in.n = need(options.n, "n");
    in.k = need(options.k, "k");
    in.B = need(options.B, "B");
    const auto terms = theory::move_bound_terms(in);
    out << "p_max " << exact(in.p_max) << '\n'
        << "eta " << exact(in.eta) << '\n'
        << "cardinality " << in.cardinality << '\n'
        << "lower_tail " << exact(terms.lower_tail) << '\n'
        << "upper_tail " << exact(terms.upper_tail) << '\n'
        << "monte_carlo " << exact(terms.monte_carlo) << '\n'
        << "joint " << exact(terms.joint) << '\n'
        << "total " << exact(terms.total) << '\n';
    return kExitOk;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
}

int cmd_pk(const PkOptions& options, std::ostream& out, std::ostream& err) {
  try {
    const auto config = load_run_config(options.config_path, false);
    if (!config.plan.problem->discrete_models()) {
      throw InvalidArgument("p_k tables require discrete models");
    }
    if (options.k == 0) throw InvalidField("k", "must be >= 1");
    if (options.trials == 0) throw InvalidField("trials", "must be >= 1");
    const auto seed = options.seed.value_or(config.plan.master_seed);
    const auto table = config.plan.problem->estimate_pk(options.k, options.trials, seed);
    const auto csv = pk_csv(table);
    if (options.out_path) {
      const std::filesystem::path path(*options.out_path);
      if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
      write_file(path, csv);
    } else {
      out << csv;
    }
    return kExitOk;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace vote_ensemble::cli
