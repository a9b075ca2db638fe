#include "duelbench/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <ostream>
#include <thread>

#include "duelbench/baselines.hpp"
#include "duelbench/csv.hpp"
#include "duelbench/error.hpp"
#include "duelbench/rex3.hpp"

namespace duelbench {

std::unique_ptr<Environment> make_environment(const EnvironmentSpec& spec) {
  switch (spec.kind) {
    case EnvironmentKind::savage:
      if (spec.arms < 2) throw Error(Errc::config_invalid, "savage needs arms >= 2");
      return std::make_unique<MatrixEnvironment>(savage_matrix(spec.arms),
                                                 "savage" + std::to_string(spec.arms));
    case EnvironmentKind::bvs:
      return std::make_unique<MatrixEnvironment>(bvs_matrix(), "bvs20");
    case EnvironmentKind::matrix_file:
      if (spec.file.empty()) throw Error(Errc::config_invalid, "matrix environment needs matrix_file");
      return std::make_unique<MatrixEnvironment>(load_matrix_csv(spec.file), spec.file.stem().string());
    case EnvironmentKind::utilities:
      if (spec.means.empty()) throw Error(Errc::config_invalid, "utilities environment needs means");
      return std::make_unique<UtilityEnvironment>(spec.means);
    case EnvironmentKind::nonstationary:
      if (spec.arms < 2) throw Error(Errc::config_invalid, "nonstationary needs arms >= 2");
      return std::make_unique<NonstationaryEnvironment>(spec.arms);
    case EnvironmentKind::adversarial_file:
      if (spec.file.empty()) {
        throw Error(Errc::config_invalid, "adversarial environment needs adversarial_file");
      }
      return std::make_unique<AdversarialEnvironment>(load_adversarial_csv(spec.file));
  }
  throw Error(Errc::config_invalid, "unknown environment");
}

std::unique_ptr<DuelingPolicy> make_policy(const PolicySpec& spec, std::size_t k,
                                           std::uint64_t horizon) {
  switch (spec.kind) {
    case PolicyKind::rex3: {
      switch (spec.schedule) {
        case GammaSchedule::Kind::fixed:
          return std::make_unique<Rex3Policy>(k, GammaSchedule::fixed(spec.gamma));
        case GammaSchedule::Kind::optimal_fixed_horizon:
          return std::make_unique<Rex3Policy>(k, GammaSchedule::optimal_fixed_horizon(horizon, spec.rule));
        case GammaSchedule::Kind::adaptive_anytime:
          return std::make_unique<Rex3Policy>(k, GammaSchedule::adaptive_anytime(spec.rule));
      }
      break;
    }
    case PolicyKind::sparring:
      return std::make_unique<SparringPolicy>(
          k, spec.exp3_gamma ? *spec.exp3_gamma : exp3_default_gamma(k, horizon));
    case PolicyKind::random:
      return std::make_unique<RandomPolicy>(k);
  }
  throw Error(Errc::config_invalid, "unknown policy");
}

void validate(const ExperimentConfig& cfg, const Environment& env) {
  if (cfg.horizon < 1) throw Error(Errc::config_invalid, "horizon must be at least 1");
  if (cfg.runs < 1) throw Error(Errc::config_invalid, "runs must be at least 1");
  if (cfg.environment.arms != 0 && cfg.environment.arms != env.arms()) {
    throw Error(Errc::arm_count_mismatch, "config says " + std::to_string(cfg.environment.arms) +
                                              " arms, environment has " + std::to_string(env.arms()));
  }
  if (const auto* adv = dynamic_cast<const AdversarialEnvironment*>(&env)) {
    if (cfg.horizon > adv->horizon()) {
      throw Error(Errc::config_invalid, "horizon exceeds the adversarial sequence length");
    }
  }
  if (cfg.policy.kind == PolicyKind::rex3 && cfg.policy.schedule == GammaSchedule::Kind::fixed &&
      !(cfg.policy.gamma > 0.0 && cfg.policy.gamma <= 1.0)) {
    throw Error(Errc::config_invalid, "gamma must lie in (0,1]");
  }
  if (cfg.policy.exp3_gamma && !(*cfg.policy.exp3_gamma > 0.0 && *cfg.policy.exp3_gamma <= 1.0)) {
    throw Error(Errc::config_invalid, "exp3_gamma must lie in (0,1]");
  }
}

StepOutcome play_step(DuelingPolicy& policy, const Environment& env, std::uint64_t t,
                      RandomStream& policy_rng, RandomStream& env_rng) {
  const ArmPair pair = policy.decide(policy_rng);
  const DuelFeedback fb = env.duel(pair.first, pair.second, t, env_rng);
  policy.update(pair, fb.psi);
  return {pair, fb};
}

RunStreams make_streams(std::uint64_t base_seed, std::uint64_t index) {
  const std::uint64_t seed = run_seed(base_seed, index);
  return {seed, RandomStream(mix64(seed ^ 0x706f6c696379ULL)),
          RandomStream(mix64(seed ^ 0x656e7669726fULL))};
}

RunRecord run_single(const ExperimentConfig& cfg, const Environment& env, std::uint64_t index) {
  auto streams = make_streams(cfg.seed, index);
  auto policy = make_policy(cfg.policy, env.arms(), cfg.horizon);
  const auto grid = log_checkpoint_grid(cfg.horizon, cfg.checkpoints_per_decade);

  RunRecord record;
  record.seed = streams.seed;
  record.policy = policy->name();
  record.environment = env.name();
  record.checkpoints.reserve(grid.size());

  double regret = 0.0;
  std::uint64_t hits = 0;
  std::size_t next = 0;
  for (std::uint64_t t = 1; t <= cfg.horizon; ++t) {
    const auto outcome = play_step(*policy, env, t, streams.policy, streams.environment);
    regret += outcome.feedback.regret;
    hits += outcome.feedback.hit ? 1 : 0;
    if (t == grid[next]) {
      record.checkpoints.push_back({t, regret, outcome.feedback.hit, hits});
      ++next;
    }
  }
  return record;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, const Environment& env) {
  validate(cfg, env);
  ExperimentResult result;
  result.runs.resize(cfg.runs);
  parallel_for(cfg.runs, worker_count(),
               [&](std::uint64_t n) { result.runs[n] = run_single(cfg, env, n); });
  result.curve = aggregate(result.runs);
  if (!cfg.output.empty()) save_curve_csv(result.curve, cfg.output);
  return result;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  const auto env = make_environment(cfg.environment);
  return run_experiment(cfg, *env);
}

std::vector<SweepRow> gamma_sweep(const ExperimentConfig& cfg, std::span<const double> gammas) {
  const auto env = make_environment(cfg.environment);
  for (double g : gammas) {
    if (!(g > 0.0 && g <= 1.0)) throw Error(Errc::config_invalid, "swept gamma outside (0,1]");
  }
  std::vector<SweepRow> rows;
  const double horizon = static_cast<double>(cfg.horizon);
  for (double g : gammas) {
    ExperimentConfig run_cfg = cfg;
    run_cfg.policy = PolicySpec{};
    run_cfg.policy.kind = PolicyKind::rex3;
    run_cfg.policy.schedule = GammaSchedule::Kind::fixed;
    run_cfg.policy.gamma = g;
    run_cfg.output.clear();
    const auto result = run_experiment(run_cfg, *env);
    SweepRow row;
    row.gamma = g;
    row.mean_final_regret = result.curve.points.back().mean;
    row.halved_bound_conservative = regret_bound({env->arms(), g, horizon / 2.0, 0.0}) / 2.0;
    row.halved_bound_risky = regret_bound({env->arms(), g, horizon / 4.0, 0.0}) / 2.0;
    rows.push_back(row);
  }
  if (!cfg.output.empty()) save_sweep_csv(rows, cfg.output);
  return rows;
}

void write_sweep_csv(std::span<const SweepRow> rows, std::ostream& out) {
  out << "gamma,mean_final_regret,halved_bound_gmax_T2,halved_bound_gmax_T4\n";
  for (const auto& r : rows) {
    out << csv::format_real(r.gamma) << ',' << csv::format_real(r.mean_final_regret) << ','
        << csv::format_real(r.halved_bound_conservative) << ','
        << csv::format_real(r.halved_bound_risky) << '\n';
  }
}

void save_sweep_csv(std::span<const SweepRow> rows, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::io_error, "cannot write " + path.string());
  write_sweep_csv(rows, out);
  if (!out) throw Error(Errc::io_error, "failed writing " + path.string());
}

namespace {

RunRecord reduction_record(const ReductionTrace& trace, const BernoulliBandit& bandit,
                           std::span<const std::uint64_t> grid, std::uint64_t seed,
                           const std::string& policy_name) {
  const auto means = bandit.means();
  const Arm best = static_cast<Arm>(std::max_element(means.begin(), means.end()) - means.begin());
  RunRecord record;
  record.seed = seed;
  record.policy = policy_name;
  record.environment = "classical-bernoulli";
  double regret = 0.0;
  std::uint64_t hits = 0;
  std::size_t next = 0;
  for (const auto& s : trace.steps) {
    const bool hit = s.pair.first == best && s.pair.second == best;
    hits += hit ? 1 : 0;
    const Arm pulled[2] = {s.pair.first, s.pair.second};
    for (int k = 0; k < 2; ++k) {
      const std::uint64_t t = s.t + static_cast<std::uint64_t>(k);
      regret += bandit.best_mean() - means[pulled[k]];
      if (next < grid.size() && t == grid[next]) {
        record.checkpoints.push_back({t, regret, hit, hits});
        ++next;
      }
    }
  }
  return record;
}

}  // namespace

ExperimentResult run_reduction_experiment(const ReductionConfig& cfg) {
  if (cfg.runs < 1) throw Error(Errc::config_invalid, "runs must be at least 1");
  const BernoulliBandit bandit(cfg.means);
  const auto grid = log_checkpoint_grid(cfg.horizon, cfg.checkpoints_per_decade);
  ExperimentResult result;
  result.runs.resize(cfg.runs);
  std::mutex trace_mutex;
  parallel_for(cfg.runs, worker_count(), [&](std::uint64_t n) {
    auto streams = make_streams(cfg.seed, n);
    auto policy = make_policy(cfg.policy, bandit.arms(), (cfg.horizon + 1) / 2);
    const auto trace = run_reduction(*policy, bandit, cfg.horizon, streams.policy, streams.environment);
    result.runs[n] = reduction_record(trace, bandit, grid, streams.seed, policy->name());
    if (n == 0 && !cfg.trace_output.empty()) {
      std::lock_guard lock(trace_mutex);
      save_trace_csv(trace, cfg.trace_output);
    }
  });
  result.curve = aggregate(result.runs);
  if (!cfg.output.empty()) save_curve_csv(result.curve, cfg.output);
  return result;
}

unsigned worker_count() {
  if (const char* env = std::getenv("DUELBENCH_WORKERS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::uint64_t n, unsigned workers, const std::function<void(std::uint64_t)>& fn) {
  const auto threads = static_cast<unsigned>(std::min<std::uint64_t>(std::max(1u, workers), n));
  if (threads <= 1) {
    for (std::uint64_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (std::uint64_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace duelbench
