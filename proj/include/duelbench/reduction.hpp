#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "duelbench/policy.hpp"
#include "duelbench/rng.hpp"

namespace duelbench {

// Stationary classical bandit with Bernoulli arms.
class BernoulliBandit {
 public:
  explicit BernoulliBandit(std::vector<double> mu);

  std::size_t arms() const { return mu_.size(); }
  std::span<const double> means() const { return mu_; }
  double best_mean() const { return best_mean_; }
  double reward(Arm arm, RandomStream& rng) const;

 private:
  std::vector<double> mu_;
  double best_mean_;
};

struct ReductionStep {
  std::uint64_t t = 0;  // classical step of the first pull
  ArmPair pair;
  double reward_a = 0.0;
  double reward_b = 0.0;
  double feedback = 0.0;  // reward_a - reward_b, the only value the policy sees
};

struct ReductionTrace {
  std::vector<ReductionStep> steps;
  double classical_gain = 0.0;  // running sum of reward_a + reward_b
  std::uint64_t classical_pulls = 0;
  double pseudo_regret = 0.0;  // sum over pulls of best_mean - mean of the pulled arm
};

// Plays a classical bandit with a dueling policy: each iteration asks the
// policy for a pair, pulls its two arms on consecutive classical steps and
// feeds back the reward difference. The clock starts at 1 and advances by
// 2 per iteration until every step in 1..T has been pulled, so an odd T ends
// with one extra pull. Throws Error{horizon_too_small} for T < 2 and
// Error{arm_count_mismatch} if the policy and bandit disagree on K.
ReductionTrace run_reduction(DuelingPolicy& policy, const BernoulliBandit& bandit,
                             std::uint64_t horizon, RandomStream& policy_rng,
                             RandomStream& bandit_rng);

struct GainIdentity {
  bool classical_gain_matches = false;  // stored gain equals the sum of pulled rewards
  bool dueling_gain_is_half = false;    // sum of (reward_a + reward_b) / 2 is half of it
  bool holds() const { return classical_gain_matches && dueling_gain_is_half; }
};

GainIdentity gain_identity_check(const ReductionTrace& trace);

// Header `iteration,a,b,reward_a,reward_b,feedback`; arms are 0-based.
void write_trace_csv(const ReductionTrace& trace, std::ostream& out);
void save_trace_csv(const ReductionTrace& trace, const std::filesystem::path& path);

}  // namespace duelbench
