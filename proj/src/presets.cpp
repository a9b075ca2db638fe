#include "duelbench/presets.hpp"

#include "duelbench/error.hpp"
#include "duelbench/harness.hpp"
#include "duelbench/rex3.hpp"

namespace duelbench {
namespace {

struct NamedPolicy {
  std::string slug;
  PolicySpec spec;
};

PolicySpec rex3_spec(GammaSchedule::Kind schedule, GainRule rule) {
  PolicySpec s;
  s.kind = PolicyKind::rex3;
  s.schedule = schedule;
  s.rule = rule;
  return s;
}

PolicySpec simple_spec(PolicyKind kind) {
  PolicySpec s;
  s.kind = kind;
  return s;
}

std::vector<NamedPolicy> comparison_policies() {
  using K = GammaSchedule::Kind;
  return {
      {"rex3-adaptive", rex3_spec(K::adaptive_anytime, GainRule::horizon_over_two)},
      {"rex3-optimal-T2", rex3_spec(K::optimal_fixed_horizon, GainRule::horizon_over_two)},
      {"rex3-optimal-T10", rex3_spec(K::optimal_fixed_horizon, GainRule::horizon_over_ten)},
      {"sparring", simple_spec(PolicyKind::sparring)},
      {"random", simple_spec(PolicyKind::random)},
  };
}

ExperimentConfig base_config(EnvironmentSpec env, std::uint64_t horizon, std::uint64_t runs,
                             const PresetOptions& o) {
  ExperimentConfig cfg;
  cfg.environment = std::move(env);
  cfg.horizon = o.horizon.value_or(horizon);
  cfg.runs = o.runs.value_or(runs);
  cfg.seed = o.seed.value_or(2016);
  return cfg;
}

std::vector<std::filesystem::path> compare(const std::string& prefix, const ExperimentConfig& base,
                                           const std::vector<NamedPolicy>& policies,
                                           const PresetOptions& o) {
  std::filesystem::create_directories(o.out_dir);
  const auto env = make_environment(base.environment);
  std::vector<std::filesystem::path> written;
  for (const auto& p : policies) {
    ExperimentConfig cfg = base;
    cfg.policy = p.spec;
    cfg.output = o.out_dir / (prefix + "_" + p.slug + ".csv");
    run_experiment(cfg, *env);
    written.push_back(cfg.output);
  }
  return written;
}

EnvironmentSpec env_spec(EnvironmentKind kind, std::size_t arms = 0) {
  EnvironmentSpec e;
  e.kind = kind;
  e.arms = arms;
  return e;
}

}  // namespace

std::vector<PresetInfo> preset_catalog() {
  return {
      {"fig1-sweep", "REX3 fixed-gamma sweep on savage(30) against the halved regret bound"},
      {"savage30", "REX3 variants, Sparring and Random on savage(30)"},
      {"bvs20", "REX3 variants, Sparring and Random on the 20-arm BVS matrix"},
      {"nonstationary10", "REX3, Sparring and Random on the 10-arm deceiving environment"},
      {"lowerbound-reduction", "REX3 playing a classical Bernoulli bandit through the reduction"},
      {"matrix-file", "all policies on a user-supplied preference matrix (--matrix)"},
  };
}

std::vector<std::filesystem::path> run_preset(const std::string& name, const PresetOptions& o) {
  if (name == "fig1-sweep") {
    std::filesystem::create_directories(o.out_dir);
    ExperimentConfig cfg = base_config(env_spec(EnvironmentKind::savage, 30), 10000, 50, o);
    cfg.output = o.out_dir / "fig1-sweep.csv";
    const double best = optimal_gamma(30, tau(estimate_gmax(GainRule::horizon_over_two, cfg.horizon), 0.0));
    const std::vector<double> gammas = {0.01, 0.02, 0.05, 0.1, 0.2, 0.4, best};
    gamma_sweep(cfg, gammas);
    return {cfg.output};
  }
  if (name == "savage30") {
    return compare(name, base_config(env_spec(EnvironmentKind::savage, 30), 100000, 50, o),
                   comparison_policies(), o);
  }
  if (name == "bvs20") {
    return compare(name, base_config(env_spec(EnvironmentKind::bvs), 100000, 20, o),
                   comparison_policies(), o);
  }
  if (name == "nonstationary10") {
    const std::vector<NamedPolicy> policies = {
        {"rex3-adaptive", rex3_spec(GammaSchedule::Kind::adaptive_anytime, GainRule::horizon_over_two)},
        {"sparring", simple_spec(PolicyKind::sparring)},
        {"random", simple_spec(PolicyKind::random)},
    };
    return compare(name, base_config(env_spec(EnvironmentKind::nonstationary, 10), 100000, 20, o),
                   policies, o);
  }
  if (name == "lowerbound-reduction") {
    std::filesystem::create_directories(o.out_dir);
    ReductionConfig cfg;
    cfg.policy = rex3_spec(GammaSchedule::Kind::adaptive_anytime, GainRule::horizon_over_two);
    cfg.means = std::vector<double>(10, 0.5);
    cfg.means[0] = 0.6;
    cfg.horizon = o.horizon.value_or(100000);
    cfg.runs = o.runs.value_or(20);
    cfg.seed = o.seed.value_or(2016);
    cfg.output = o.out_dir / "lowerbound-reduction.csv";
    cfg.trace_output = o.out_dir / "lowerbound-reduction_trace.csv";
    run_reduction_experiment(cfg);
    return {cfg.output, cfg.trace_output};
  }
  if (name == "matrix-file") {
    if (o.matrix_file.empty()) throw Error(Errc::config_invalid, "preset matrix-file needs a matrix file");
    EnvironmentSpec e = env_spec(EnvironmentKind::matrix_file);
    e.file = o.matrix_file;
    return compare(o.matrix_file.stem().string(), base_config(e, 100000, 50, o),
                   comparison_policies(), o);
  }
  throw Error(Errc::config_invalid, "unknown preset '" + name + "'");
}

}  // namespace duelbench
