#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "duelbench/baselines.hpp"
#include "duelbench/error.hpp"
#include "duelbench/reduction.hpp"
#include "duelbench/rex3.hpp"

using namespace duelbench;

namespace {

// Always proposes the same pair and records what it is told.
class FixedPolicy final : public DuelingPolicy {
 public:
  FixedPolicy(std::size_t k, ArmPair pair) : k_(k), pair_(pair) {}
  std::size_t arms() const override { return k_; }
  ArmPair decide(RandomStream&) override { return pair_; }
  void update(ArmPair pair, double feedback) override { seen.push_back({pair, feedback}); }
  std::string name() const override { return "fixed"; }
  std::vector<std::pair<ArmPair, double>> seen;

 private:
  std::size_t k_;
  ArmPair pair_;
};

}  // namespace

TEST_CASE("self-duel on a sure arm") {
  const BernoulliBandit bandit({1.0, 0.0, 0.5});
  FixedPolicy policy(3, {0, 0});
  RandomStream prng(1), brng(2);
  const auto trace = run_reduction(policy, bandit, 100, prng, brng);
  CHECK(trace.steps.size() == 50);
  CHECK(trace.classical_gain == 100.0);
  CHECK(trace.classical_pulls == 100);
  CHECK(trace.pseudo_regret == 0.0);
  for (const auto& [pair, fb] : policy.seen) CHECK(fb == 0.0);
}

TEST_CASE("the policy receives the reward difference and the clock jumps by two") {
  const BernoulliBandit bandit({0.0, 0.0, 1.0});
  FixedPolicy policy(3, {2, 0});
  RandomStream prng(1), brng(2);
  const auto trace = run_reduction(policy, bandit, 6, prng, brng);
  REQUIRE(trace.steps.size() == 3);
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    CHECK(trace.steps[i].t == 1 + 2 * i);
    CHECK(trace.steps[i].feedback == 1.0);
    CHECK(policy.seen[i].first == ArmPair{2, 0});
    CHECK(policy.seen[i].second == 1.0);
  }
  CHECK(trace.pseudo_regret == 3.0);
}

TEST_CASE("odd horizons pull ceil(T/2) pairs") {
  const BernoulliBandit bandit({0.3, 0.7});
  for (std::uint64_t horizon : {2u, 3u, 7u, 100u, 101u}) {
    RandomPolicy policy(2);
    RandomStream prng(horizon), brng(horizon + 1);
    const auto trace = run_reduction(policy, bandit, horizon, prng, brng);
    CHECK(trace.steps.size() == (horizon + 1) / 2);
    CHECK(trace.classical_pulls == 2 * ((horizon + 1) / 2));
  }
}

TEST_CASE("errors") {
  const BernoulliBandit bandit({0.3, 0.7});
  RandomPolicy policy(2), wrong(3);
  RandomStream prng(1), brng(2);
  try {
    run_reduction(policy, bandit, 1, prng, brng);
    FAIL("expected HorizonTooSmall");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::horizon_too_small);
  }
  CHECK_THROWS_AS(run_reduction(wrong, bandit, 10, prng, brng), Error);
  CHECK_THROWS_AS(BernoulliBandit({0.3, 1.3}), Error);
}

TEST_CASE("gain identity") {
  CHECK(gain_identity_check(ReductionTrace{}).holds());

  ReductionTrace hand;
  hand.steps.push_back({1, {0, 1}, 1.0, 0.0, 1.0});
  hand.steps.push_back({3, {1, 1}, 0.0, 0.0, 0.0});
  hand.classical_gain = 1.0;
  hand.classical_pulls = 4;
  CHECK(gain_identity_check(hand).holds());
  hand.classical_gain = 2.0;
  CHECK_FALSE(gain_identity_check(hand).classical_gain_matches);

  const BernoulliBandit bandit({0.6, 0.5, 0.5, 0.4});
  Rex3Policy policy(4, GammaSchedule::adaptive_anytime(GainRule::horizon_over_two));
  RandomStream prng(5), brng(6);
  CHECK(gain_identity_check(run_reduction(policy, bandit, 5001, prng, brng)).holds());
}

TEST_CASE("trace CSV") {
  ReductionTrace trace;
  trace.steps.push_back({1, {2, 0}, 1.0, 0.0, 1.0});
  trace.steps.push_back({3, {1, 1}, 0.0, 1.0, -1.0});
  std::ostringstream out;
  write_trace_csv(trace, out);
  CHECK(out.str() == "iteration,a,b,reward_a,reward_b,feedback\n1,2,0,1,0,1\n2,1,1,0,1,-1\n");
}
