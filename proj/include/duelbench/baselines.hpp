#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "duelbench/policy.hpp"
#include "duelbench/weights.hpp"

namespace duelbench {

// Classical EXP3 over K arms.
class Exp3State {
 public:
  explicit Exp3State(std::size_t k, double gamma);

  std::size_t arms() const { return w_.size(); }
  double gamma() const { return gamma_; }
  const WeightVector& weights() const { return w_; }

  std::vector<double> distribution() const { return w_.mixture(gamma_); }
  void distribution(std::span<double> p) const { w_.mixture(gamma_, p); }

  Arm select(RandomStream& rng, std::span<double> p_out);
  Arm select(RandomStream& rng);

  // Importance-weighted update of the pulled arm only:
  //   w[arm] *= exp(gamma * reward / (K p[arm]))
  // where p is the distribution the arm was drawn from. reward in [0,1].
  void update(Arm arm, double reward, std::span<const double> p);
  void update(Arm arm, double reward);

 private:
  WeightVector w_;
  double gamma_;
};

// min{1, sqrt(K ln K / ((e - 1) T))}
double exp3_default_gamma(std::size_t k, std::uint64_t horizon);

// Two independent EXP3 learners, one per side of the duel. The left learner
// is rewarded (1 + psi) / 2 on its arm and the right one (1 - psi) / 2.
class SparringPolicy final : public DuelingPolicy {
 public:
  SparringPolicy(std::size_t k, double gamma);

  std::size_t arms() const override { return left_.arms(); }
  ArmPair decide(RandomStream& rng) override;
  void update(ArmPair pair, double feedback) override;
  std::string name() const override { return "sparring-exp3"; }

  const Exp3State& left() const { return left_; }
  const Exp3State& right() const { return right_; }

 private:
  Exp3State left_;
  Exp3State right_;
  std::vector<double> p_left_;
  std::vector<double> p_right_;
};

// Two independent uniform draws.
ArmPair random_pair(std::size_t k, RandomStream& rng);

class RandomPolicy final : public DuelingPolicy {
 public:
  explicit RandomPolicy(std::size_t k);

  std::size_t arms() const override { return k_; }
  ArmPair decide(RandomStream& rng) override { return random_pair(k_, rng); }
  void update(ArmPair, double) override {}
  std::string name() const override { return "random"; }

 private:
  std::size_t k_;
};

}  // namespace duelbench
