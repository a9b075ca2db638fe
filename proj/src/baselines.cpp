#include "duelbench/baselines.hpp"

#include <cmath>
#include <numbers>

#include "duelbench/error.hpp"
#include "duelbench/rex3.hpp"

namespace duelbench {

Exp3State::Exp3State(std::size_t k, double gamma) : w_(k), gamma_(gamma) {
  if (k < 2) throw Error(Errc::too_few_arms, "EXP3 needs at least 2 arms");
  if (!(gamma > 0.0 && gamma <= 1.0)) {
    throw Error(Errc::invalid_argument, "exploration rate must lie in (0,1]");
  }
}

Arm Exp3State::select(RandomStream& rng, std::span<double> p_out) {
  distribution(p_out);
  return sample_arm(p_out, rng);
}

Arm Exp3State::select(RandomStream& rng) {
  const auto p = distribution();
  return sample_arm(p, rng);
}

void Exp3State::update(Arm arm, double reward, std::span<const double> p) {
  if (arm >= arms()) throw Error(Errc::arm_out_of_range, "arm index outside [0,K)");
  if (!(reward >= 0.0 && reward <= 1.0)) {
    throw Error(Errc::invalid_argument, "EXP3 rewards must lie in [0,1]");
  }
  const double estimate = reward / p[arm];
  w_.multiply(arm, std::exp(gamma_ * estimate / static_cast<double>(arms())));
}

void Exp3State::update(Arm arm, double reward) {
  const auto p = distribution();
  update(arm, reward, p);
}

double exp3_default_gamma(std::size_t k, std::uint64_t horizon) {
  if (k < 2) throw Error(Errc::too_few_arms, "need at least 2 arms");
  if (horizon == 0) throw Error(Errc::horizon_too_small, "horizon must be at least 1");
  const double kd = static_cast<double>(k);
  const double g = (std::numbers::e - 1.0) * static_cast<double>(horizon);
  return std::min(1.0, std::sqrt(kd * std::log(kd) / g));
}

SparringPolicy::SparringPolicy(std::size_t k, double gamma)
    : left_(k, gamma), right_(k, gamma), p_left_(k), p_right_(k) {}

ArmPair SparringPolicy::decide(RandomStream& rng) {
  const Arm a = left_.select(rng, p_left_);
  const Arm b = right_.select(rng, p_right_);
  return {a, b};
}

void SparringPolicy::update(ArmPair pair, double feedback) {
  left_.update(pair.first, (1.0 + feedback) / 2.0, p_left_);
  right_.update(pair.second, (1.0 - feedback) / 2.0, p_right_);
}

ArmPair random_pair(std::size_t k, RandomStream& rng) {
  const Arm a = rng.below(k);
  const Arm b = rng.below(k);
  return {a, b};
}

RandomPolicy::RandomPolicy(std::size_t k) : k_(k) {
  if (k < 2) throw Error(Errc::too_few_arms, "need at least 2 arms");
}

}  // namespace duelbench
