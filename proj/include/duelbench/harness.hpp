#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <memory>
#include <span>
#include <vector>

#include "duelbench/config.hpp"
#include "duelbench/environments.hpp"
#include "duelbench/metrics.hpp"
#include "duelbench/policy.hpp"
#include "duelbench/reduction.hpp"

namespace duelbench {

std::unique_ptr<Environment> make_environment(const EnvironmentSpec& spec);
std::unique_ptr<DuelingPolicy> make_policy(const PolicySpec& spec, std::size_t k,
                                           std::uint64_t horizon);

// Throws Error{config_invalid} or Error{arm_count_mismatch}.
void validate(const ExperimentConfig& cfg, const Environment& env);

struct StepOutcome {
  ArmPair pair;
  DuelFeedback feedback;
};

// One decide / duel / update cycle. The policy and the environment draw from
// separate streams, so two policies run with the same seed face the same
// environment randomness.
StepOutcome play_step(DuelingPolicy& policy, const Environment& env, std::uint64_t t,
                      RandomStream& policy_rng, RandomStream& env_rng);

// Streams of run `index`: run_seed(base, index) split into a policy stream
// and an environment stream.
struct RunStreams {
  std::uint64_t seed;
  RandomStream policy;
  RandomStream environment;
};
RunStreams make_streams(std::uint64_t base_seed, std::uint64_t index);

RunRecord run_single(const ExperimentConfig& cfg, const Environment& env, std::uint64_t index);

struct ExperimentResult {
  std::vector<RunRecord> runs;
  AggregateCurve curve;
};

// Runs cfg.runs seeded runs (in parallel, see worker_count) and aggregates
// them; writes the curve CSV to cfg.output when it is set. The output depends
// only on the configuration.
ExperimentResult run_experiment(const ExperimentConfig& cfg);
ExperimentResult run_experiment(const ExperimentConfig& cfg, const Environment& env);

struct SweepRow {
  double gamma = 0.0;
  double mean_final_regret = 0.0;
  double halved_bound_conservative = 0.0;  // G_max = T/2, G_min = 0
  double halved_bound_risky = 0.0;         // G_max = T/4, G_min = 0
};

// REX3 with each fixed exploration rate in `gammas` against the halved
// regret bound. Uses every field of cfg except the policy.
std::vector<SweepRow> gamma_sweep(const ExperimentConfig& cfg, std::span<const double> gammas);
void write_sweep_csv(std::span<const SweepRow> rows, std::ostream& out);
void save_sweep_csv(std::span<const SweepRow> rows, const std::filesystem::path& path);

struct ReductionConfig {
  PolicySpec policy;
  std::vector<double> means;
  std::uint64_t horizon = 10000;
  std::uint64_t runs = 10;
  std::uint64_t seed = 1;
  unsigned checkpoints_per_decade = 20;
  std::filesystem::path output;        // classical pseudo-regret curve
  std::filesystem::path trace_output;  // trace of run 0
};

// Classical pseudo-regret per pull, sampled on classical steps.
ExperimentResult run_reduction_experiment(const ReductionConfig& cfg);

// DUELBENCH_WORKERS if set and positive, otherwise the hardware concurrency.
unsigned worker_count();

// Calls fn(i) for i in [0, n) on up to `workers` threads.
void parallel_for(std::uint64_t n, unsigned workers, const std::function<void(std::uint64_t)>& fn);

}  // namespace duelbench
