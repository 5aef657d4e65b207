#include "vote_ensemble/cli/output.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "json.hpp"

#ifndef VOTE_ENSEMBLE_VERSION
#define VOTE_ENSEMBLE_VERSION "0.0.0"
#endif

namespace vote_ensemble::cli {

using nlohmann::ordered_json;

const char* artifact_version() { return VOTE_ENSEMBLE_VERSION; }

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

double round12(double value) {
  if (!std::isfinite(value)) return value;
  if (value == 0.0) return 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return std::strtod(buf, nullptr);
}

std::string results_csv(const harness::TailCurve& curve) {
  std::string out = kResultsCsvHeader;
  out += '\n';
  for (const auto& c : curve.cells) {
    out += harness::method_name(c.method);
    out += ',' + std::to_string(c.n);
    out += ',' + std::to_string(c.replications);
    out += ',' + format_number(c.tail);
    out += ',' + format_number(c.tail_se);
    out += ',' + format_number(c.mean_excess);
    out += ',' + format_number(c.mean_se);
    out += ',' + std::to_string(c.failures);
    out += '\n';
  }
  return out;
}

namespace {

// Non-finite numbers have no JSON literal; they are emitted as strings.
ordered_json number(double value) {
  if (!std::isfinite(value)) return format_number(value);
  return round12(value);
}

ordered_json cells_json(const harness::TailCurve& curve) {
  auto cells = ordered_json::array();
  for (const auto& c : curve.cells) {
    cells.push_back({{"method", harness::method_name(c.method)},
                     {"n", c.n},
                     {"replications", c.replications},
                     {"exceedances", c.exceedances},
                     {"tail", number(c.tail)},
                     {"tail_se", number(c.tail_se)},
                     {"mean_excess", number(c.mean_excess)},
                     {"mean_se", number(c.mean_se)},
                     {"failures", c.failures}});
  }
  return cells;
}

ordered_json plan_json(const harness::ExperimentPlan& plan) {
  auto methods = ordered_json::array();
  for (auto m : plan.methods) methods.push_back(harness::method_name(m));
  const auto& f = plan.ensemble;
  return {{"problem", plan.problem->name()},
          {"methods", methods},
          {"n_grid", plan.n_grid},
          {"replications", plan.replications},
          {"delta", number(plan.delta)},
          {"master_seed", plan.master_seed},
          {"ensemble",
           {{"k", f.k.text()},
            {"k1", f.k1.text()},
            {"k2", f.k2.text()},
            {"B", f.B.text()},
            {"B1", f.B1.text()},
            {"B2", f.B2.text()},
            {"epsilon", f.epsilon.is_adaptive() ? std::string("adaptive")
                                                : format_number(f.epsilon.fixed_value())}}}};
}

}  // namespace

std::string results_json(const RunConfig& config, const harness::TailCurve& curve) {
  ordered_json j;
  j["plan"] = plan_json(config.plan);
  j["cells"] = cells_json(curve);
  return j.dump(2) + '\n';
}

std::string manifest_json(const RunConfig& config, const harness::TailCurve& curve,
                          const RunInfo& info) {
  ordered_json j;
  j["artifact_version"] = artifact_version();
  j["master_seed"] = config.plan.master_seed;
  j["config_source"] = config.source;
  j["config_hash"] = config_hash(config.text);
  j["config_text"] = config.text;
  j["plan"] = plan_json(config.plan);
  ordered_json oracle = ordered_json::object();
  for (const auto& [key, value] : config.plan.problem->oracle_metadata()) oracle[key] = value;
  j["oracle"] = oracle;
  j["workers"] = info.workers;
  j["wall_seconds"] = info.wall_seconds;
  auto runtimes = ordered_json::array();
  for (const auto& c : curve.cells) {
    runtimes.push_back({{"method", harness::method_name(c.method)},
                        {"n", c.n},
                        {"mean_seconds", c.mean_seconds}});
  }
  j["runtimes"] = runtimes;
  j["failure_count"] = curve.failures.size();
  auto failures = ordered_json::array();
  for (const auto& f : curve.failures) {
    failures.push_back({{"method", harness::method_name(f.method)},
                        {"n", f.n},
                        {"replication", f.replication},
                        {"data_seed", f.data_seed},
                        {"method_seed", f.method_seed},
                        {"message", f.message}});
  }
  j["failures"] = failures;
  return j.dump(2) + '\n';
}

std::string pk_csv(const theory::PkTable& table) {
  std::string out = kPkCsvHeader;
  out += '\n';
  for (const auto& e : table.entries) {
    out += e.model.to_string();
    out += ',' + format_number(e.p_hat);
    out += ',' + format_number(e.se);
    out += '\n';
  }
  return out;
}

}  // namespace vote_ensemble::cli
