#include "vote_ensemble/cli/config.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

#include <yaml-cpp/yaml.h>

#include "vote_ensemble/problems/constant.hpp"
#include "vote_ensemble/problems/lp_example.hpp"
#include "vote_ensemble/problems/matching.hpp"
#include "vote_ensemble/problems/portfolio.hpp"
#include "vote_ensemble/problems/regression.hpp"
#include "vote_ensemble/problems/resource_alloc.hpp"

namespace vote_ensemble::cli {

ConfigError::ConfigError(const std::string& source, std::size_t line, const std::string& field,
                         const std::string& what)
    : InvalidArgument(source + ":" + std::to_string(line) + ": " + field + ": " + what),
      line_(line),
      field_(field) {}

std::size_t RunConfig::line_of(const std::string& field) const {
  std::string key = field;
  for (;;) {
    if (auto it = field_lines.find(key); it != field_lines.end()) return it->second;
    const auto dot = key.rfind('.');
    if (dot == std::string::npos) return 0;
    key.resize(dot);
  }
}

void RunConfig::validate() const {
  try {
    plan.validate();
  } catch (const InvalidField& e) {
    // Defaulted ensemble formulas have no line; the sample size is the culprit.
    auto line = line_of(e.field());
    if (line == 0) line = line_of("n_grid");
    throw ConfigError(source, line, e.field(), e.message());
  }
}

namespace {

/// Walks a YAML mapping, recording line numbers and rejecting unknown keys.
class Section {
 public:
  Section(const YAML::Node& node, std::string path, RunConfig& cfg)
      : node_(node), path_(std::move(path)), cfg_(cfg) {
    if (!node_.IsMap()) fail(path_, "expected a mapping");
    for (const auto& kv : node_) {
      const auto key = kv.first.as<std::string>();
      cfg_.field_lines[field(key)] = kv.first.Mark().line + 1;
    }
  }

  std::string field(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  [[noreturn]] void fail(const std::string& f, const std::string& what) const {
    throw ConfigError(cfg_.source, cfg_.line_of(f), f, what);
  }

  bool has(const std::string& key) {
    seen_.insert(key);
    return static_cast<bool>(node_[key]);
  }

  YAML::Node get(const std::string& key) {
    if (!has(key)) fail(field(key), "missing required key");
    return node_[key];
  }

  template <class T>
  T scalar(const std::string& key) {
    const auto n = get(key);
    try {
      if (!n.IsScalar()) throw YAML::Exception(n.Mark(), "not a scalar");
      return n.as<T>();
    } catch (const YAML::Exception&) {
      fail(field(key), "expected a " + type_name<T>());
    }
  }

  template <class T>
  T scalar_or(const std::string& key, T fallback) {
    return has(key) ? scalar<T>(key) : fallback;
  }

  template <class T>
  std::vector<T> list(const std::string& key) {
    const auto n = get(key);
    if (!n.IsSequence()) fail(field(key), "expected a list");
    std::vector<T> out;
    try {
      for (const auto& item : n) out.push_back(item.as<T>());
    } catch (const YAML::Exception&) {
      fail(field(key), "expected a list of " + type_name<T>() + " values");
    }
    return out;
  }

  template <class T>
  std::vector<T> list_or(const std::string& key, std::vector<T> fallback) {
    return has(key) ? list<T>(key) : fallback;
  }

  void reject_unknown() const {
    for (const auto& kv : node_) {
      const auto key = kv.first.as<std::string>();
      if (!seen_.contains(key)) fail(field(key), "unknown key");
    }
  }

  RunConfig& config() { return cfg_; }

 private:
  template <class T>
  static std::string type_name() {
    if constexpr (std::is_same_v<T, double>) {
      return "number";
    } else if constexpr (std::is_same_v<T, std::string>) {
      return "string";
    } else if constexpr (std::is_same_v<T, bool>) {
      return "boolean";
    } else {
      return "non-negative integer";
    }
  }

  YAML::Node node_;
  std::string path_;
  RunConfig& cfg_;
  std::set<std::string> seen_;
};

// Wraps problem-construction errors with the config line of their field.
template <class Fn>
auto with_field_context(Section& section, Fn&& fn) {
  try {
    return fn();
  } catch (const InvalidField& e) {
    section.fail(section.field(e.field()), e.message());
  }
}

problems::ResourceAllocParams default_resource_alloc() {
  problems::ResourceAllocParams p;
  p.rewards = {2.0, 1.5, 1.0};
  p.unit_cost = 1.2;
  p.base_quantity = 2.0;
  p.shapes = {2.1, 2.1, 2.1};
  return p;
}

// 5 x 5 graph: constant weight 2 on the diagonal and 0.5 elsewhere, except
// nine Pareto(2.1) edges (i, i+1 mod 5) and (i, i+2 mod 5), i < 4.
problems::MatchingParams default_matching() {
  problems::MatchingParams p;
  p.side = 5;
  p.edges.assign(25, problems::EdgeWeight{false, 0.5, 2.1});
  for (std::size_t i = 0; i < 5; ++i) p.edges[i * 5 + i].value = 2.0;
  for (std::size_t i = 0; i < 5; ++i) p.edges[i * 5 + (i + 1) % 5] = {true, 1.0, 2.1};
  for (std::size_t i = 0; i < 4; ++i) p.edges[i * 5 + (i + 2) % 5] = {true, 1.0, 2.1};
  return p;
}

std::shared_ptr<const harness::Problem> parse_problem(Section& s) {
  const auto id = s.scalar<std::string>("id");
  std::shared_ptr<const harness::Problem> problem;
  if (id == "lp_example") {
    const double alpha = s.scalar_or<double>("alpha", 2.1);
    problem = with_field_context(s, [&] { return harness::make_problem(problems::make_lp_example(alpha)); });
  } else if (id == "regression") {
    const double alpha = s.scalar_or<double>("alpha", 2.1);
    problem = with_field_context(s, [&] { return harness::make_problem(problems::make_regression(alpha)); });
  } else if (id == "resource_alloc") {
    auto p = default_resource_alloc();
    p.rewards = s.list_or<double>("rewards", p.rewards);
    p.unit_cost = s.scalar_or<double>("unit_cost", p.unit_cost);
    p.base_quantity = s.scalar_or<double>("base_quantity", p.base_quantity);
    p.shapes = s.list_or<double>("shapes", p.shapes);
    p.oracle_draws = s.scalar_or<std::uint64_t>("oracle_draws", p.oracle_draws);
    p.oracle_seed = s.scalar_or<std::uint64_t>("oracle_seed", p.oracle_seed);
    problem = with_field_context(s, [&] { return harness::make_problem(problems::make_resource_alloc(p)); });
  } else if (id == "matching") {
    auto p = default_matching();
    if (s.has("side") || s.has("weights") || s.has("random_edges")) {
      p.side = s.scalar<std::size_t>("side");
      const auto constants = s.list<double>("weights");
      if (constants.size() != p.side * p.side) {
        s.fail(s.field("weights"), "need side*side row-major weights");
      }
      p.edges.clear();
      for (double w : constants) p.edges.push_back({false, w, 2.1});
      if (s.has("random_edges")) {
        const auto edges = s.get("random_edges");
        if (!edges.IsSequence()) s.fail(s.field("random_edges"), "expected a list");
        for (std::size_t i = 0; i < edges.size(); ++i) {
          Section e(edges[i], s.field("random_edges") + "[" + std::to_string(i) + "]",
                    s.config());
          const auto row = e.scalar<std::size_t>("row");
          const auto col = e.scalar<std::size_t>("col");
          const double shape = e.scalar_or<double>("shape", 2.1);
          const double scale = e.scalar_or<double>("scale", 1.0);
          e.reject_unknown();
          if (row >= p.side || col >= p.side) e.fail(e.field("row"), "edge outside the graph");
          p.edges[row * p.side + col] = {true, scale, shape};
        }
      }
    }
    problem = with_field_context(s, [&] { return harness::make_problem(problems::make_matching(p)); });
  } else if (id == "portfolio") {
    const auto assets = s.scalar_or<std::size_t>("assets", 10);
    const auto underlying = s.scalar_or<std::size_t>("underlying", 100);
    const double shape = s.scalar_or<double>("shape", 2.1);
    const double floor = s.scalar_or<double>("return_floor", 0.0);
    problem = with_field_context(s, [&] {
      auto p = problems::PortfolioParams::standard(assets, underlying, shape);
      p.return_floor = floor;
      return harness::make_problem(problems::make_portfolio(p));
    });
  } else if (id == "constant") {
    const auto value = s.scalar_or<std::int64_t>("value", 0);
    const double excess = s.scalar_or<double>("excess", 0.0);
    problem = harness::make_problem(problems::make_constant_problem(value, excess));
  } else {
    s.fail(s.field("id"), "unknown problem '" + id +
                              "' (expected lp_example, regression, resource_alloc, matching, "
                              "portfolio or constant)");
  }
  s.reject_unknown();
  return problem;
}

harness::SizeFormula parse_formula(Section& s, const std::string& key,
                                   const harness::SizeFormula& fallback) {
  if (!s.has(key)) return fallback;
  const auto text = s.scalar<std::string>(key);
  try {
    return harness::SizeFormula::parse(text);
  } catch (const InvalidArgument& e) {
    s.fail(s.field(key), e.what());
  }
}

}  // namespace

RunConfig parse_run_config(const std::string& text, const std::string& source,
                           bool require_experiment) {
  RunConfig cfg;
  cfg.source = source;
  cfg.text = text;
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ConfigError(source, static_cast<std::size_t>(e.mark.line + 1), "(syntax)", e.msg);
  }
  if (!root || root.IsNull()) throw ConfigError(source, 1, "(root)", "empty config");
  Section top(root, "", cfg);

  Section problem_section(top.get("problem"), "problem", cfg);
  cfg.plan.problem = parse_problem(problem_section);
  cfg.plan.ensemble = harness::EnsembleFormulas::recommended(cfg.plan.problem->discrete_models());

  cfg.has_experiment = require_experiment || top.has("methods");
  if (cfg.has_experiment) {
    std::vector<std::string> methods = top.list<std::string>("methods");
    for (const auto& m : methods) {
      try {
        cfg.plan.methods.push_back(harness::parse_method(m));
      } catch (const InvalidArgument& e) {
        top.fail("methods", e.what());
      }
    }
    cfg.plan.n_grid = top.list<std::size_t>("n_grid");
    cfg.plan.replications = top.scalar_or<std::size_t>("replications", 500);
    cfg.plan.delta = top.scalar<double>("delta");
    cfg.plan.master_seed = top.scalar<std::uint64_t>("seed");
  } else {
    top.has("n_grid");
    top.has("replications");
    top.has("delta");
    cfg.plan.master_seed = top.scalar_or<std::uint64_t>("seed", 0);
  }

  if (top.has("ensemble")) {
    Section e(top.get("ensemble"), "ensemble", cfg);
    auto& f = cfg.plan.ensemble;
    f.k = parse_formula(e, "k", f.k);
    f.k1 = parse_formula(e, "k1", f.k1);
    f.k2 = parse_formula(e, "k2", f.k2);
    f.B = parse_formula(e, "B", f.B);
    f.B1 = parse_formula(e, "B1", f.B1);
    f.B2 = parse_formula(e, "B2", f.B2);
    if (e.has("epsilon")) {
      const auto eps = e.scalar<std::string>("epsilon");
      if (eps != "adaptive") {
        try {
          std::size_t used = 0;
          const double v = std::stod(eps, &used);
          if (used != eps.size()) throw std::invalid_argument("trailing characters");
          f.epsilon = core::EpsilonMode::fixed(v);
        } catch (const std::exception&) {
          e.fail(e.field("epsilon"), "expected 'adaptive' or a number >= 0");
        }
      }
    }
    e.reject_unknown();
  }
  top.reject_unknown();
  if (cfg.has_experiment) cfg.validate();
  return cfg;
}

RunConfig load_run_config(const std::string& path, bool require_experiment) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path, 0, "(file)", "cannot open config file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_run_config(buf.str(), path, require_experiment);
}

std::string config_hash(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace vote_ensemble::cli
