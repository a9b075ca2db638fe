#include "duelbench/reduction.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>

#include "duelbench/csv.hpp"
#include "duelbench/error.hpp"

namespace duelbench {

BernoulliBandit::BernoulliBandit(std::vector<double> mu) : mu_(std::move(mu)) {
  if (mu_.size() < 2) throw Error(Errc::too_few_arms, "need at least 2 arms");
  for (double m : mu_) {
    if (!(m >= 0.0 && m <= 1.0)) throw Error(Errc::mean_out_of_range, "means must lie in [0,1]");
  }
  best_mean_ = *std::max_element(mu_.begin(), mu_.end());
}

double BernoulliBandit::reward(Arm arm, RandomStream& rng) const {
  if (arm >= mu_.size()) throw Error(Errc::arm_out_of_range, "arm index outside [0,K)");
  return rng.bernoulli(mu_[arm]) ? 1.0 : 0.0;
}

ReductionTrace run_reduction(DuelingPolicy& policy, const BernoulliBandit& bandit,
                             std::uint64_t horizon, RandomStream& policy_rng,
                             RandomStream& bandit_rng) {
  if (horizon < 2) throw Error(Errc::horizon_too_small, "the reduction needs T >= 2");
  if (policy.arms() != bandit.arms()) {
    throw Error(Errc::arm_count_mismatch, "policy and bandit have different arm counts");
  }
  ReductionTrace trace;
  trace.steps.reserve(static_cast<std::size_t>((horizon + 1) / 2));
  for (std::uint64_t t = 1; t <= horizon; t += 2) {
    const ArmPair pair = policy.decide(policy_rng);
    const double ra = bandit.reward(pair.first, bandit_rng);
    const double rb = bandit.reward(pair.second, bandit_rng);
    const double feedback = ra - rb;
    policy.update(pair, feedback);
    trace.steps.push_back({t, pair, ra, rb, feedback});
    trace.classical_gain += ra + rb;
    trace.classical_pulls += 2;
    trace.pseudo_regret += (bandit.best_mean() - bandit.means()[pair.first]) +
                           (bandit.best_mean() - bandit.means()[pair.second]);
  }
  return trace;
}

GainIdentity gain_identity_check(const ReductionTrace& trace) {
  double classical = 0.0;
  double dueling = 0.0;
  for (const auto& s : trace.steps) {
    classical += s.reward_a + s.reward_b;
    dueling += (s.reward_a + s.reward_b) / 2.0;
  }
  return {classical == trace.classical_gain, dueling == trace.classical_gain / 2.0};
}

void write_trace_csv(const ReductionTrace& trace, std::ostream& out) {
  out << "iteration,a,b,reward_a,reward_b,feedback\n";
  std::uint64_t iteration = 0;
  for (const auto& s : trace.steps) {
    out << ++iteration << ',' << s.pair.first << ',' << s.pair.second << ','
        << csv::format_real(s.reward_a) << ',' << csv::format_real(s.reward_b) << ','
        << csv::format_real(s.feedback) << '\n';
  }
}

void save_trace_csv(const ReductionTrace& trace, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::io_error, "cannot write " + path.string());
  write_trace_csv(trace, out);
  if (!out) throw Error(Errc::io_error, "failed writing " + path.string());
}

}  // namespace duelbench
