#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "duelbench/policy.hpp"
#include "duelbench/weights.hpp"

namespace duelbench {

// The complete mutable state of one REX3 learner: one positive weight per
// arm, the exploration rate and the 1-based step counter.
class Rex3State {
 public:
  // All weights 1, t = 1. Throws Error{too_few_arms} for k < 2.
  static Rex3State init(std::size_t k, double gamma = 0.5);
  // Arbitrary positive weights; used by tests and snapshot restore.
  static Rex3State from_weights(std::vector<double> w, double gamma, std::uint64_t t = 1);

  std::size_t arms() const { return w_.size(); }
  double gamma() const { return gamma_; }
  void set_gamma(double gamma);  // Error{invalid_argument} outside (0, 1]
  std::uint64_t step() const { return t_; }
  const WeightVector& weights() const { return w_; }

  // p[i] = (1 - gamma) w[i] / sum(w) + gamma / K
  void distribution(std::span<double> p) const { w_.mixture(gamma_, p); }
  std::vector<double> distribution() const { return w_.mixture(gamma_); }

  // Exponential update after the duel (a, b) with feedback psi, where p is
  // the distribution the pair was drawn from. For a != b:
  //   w[a] *= exp(+(gamma/K) psi / (2 p[a]))
  //   w[b] *= exp(-(gamma/K) psi / (2 p[b]))
  // A self-duel carries no information and leaves the weights untouched.
  // The step counter always advances.
  void update(Arm a, Arm b, double psi, std::span<const double> p);
  void update(Arm a, Arm b, double psi);

  // "K gamma t w_1 ... w_K" with every real printed at full precision.
  std::string snapshot() const;
  static Rex3State restore(const std::string& record);

 private:
  Rex3State(WeightVector w, double gamma, std::uint64_t t)
      : w_(std::move(w)), gamma_(gamma), t_(t) {}

  WeightVector w_;
  double gamma_;
  std::uint64_t t_;
};

// Draws one arm from p by inverse-CDF search.
Arm sample_arm(std::span<const double> p, RandomStream& rng);

// Two independent draws from p; a == b is possible.
ArmPair select_pair(std::span<const double> p, RandomStream& rng);

// Importance-weighted relative estimates for the duel (a, b):
//   c[a] = psi / (2 p[a]),  c[b] = -psi / (2 p[b]),  c[i] = 0 otherwise,
// both terms applying when a == b (so they cancel). Throws
// Error{zero_probability} if p[a] or p[b] is not positive.
std::vector<double> relative_estimates(Arm a, Arm b, std::span<const double> p, double psi);

// e gmax - (4 - e) gmin, with gmax and gmin standing in for the expected
// gains of the algorithm and of uniform play. Requires gmax >= gmin >= 0.
double tau(double gmax, double gmin);

// min{1/2, sqrt(K ln K / tau)}; 1/2 when tau <= 0.
double optimal_gamma(std::size_t k, double tau_value);

// How the best-arm gain is guessed from a horizon (or from the current step
// for the anytime schedule).
enum class GainRule { horizon_over_two, horizon_over_four, horizon_over_ten };

double estimate_gmax(GainRule rule, std::uint64_t horizon);

class GammaSchedule {
 public:
  enum class Kind { fixed, optimal_fixed_horizon, adaptive_anytime };

  static GammaSchedule fixed(double gamma);
  // optimal_gamma(K, tau(rule(T), 0)), computed once.
  static GammaSchedule optimal_fixed_horizon(std::uint64_t horizon, GainRule rule);
  // optimal_gamma(K, tau(rule(t), 0)), recomputed at every step t.
  static GammaSchedule adaptive_anytime(GainRule rule);

  Kind kind() const { return kind_; }
  GainRule rule() const { return rule_; }
  double gamma_at(std::size_t k, std::uint64_t t) const;
  std::string label() const;

 private:
  GammaSchedule(Kind kind, double gamma, std::uint64_t horizon, GainRule rule)
      : kind_(kind), gamma_(gamma), horizon_(horizon), rule_(rule) {}

  Kind kind_;
  double gamma_;
  std::uint64_t horizon_;
  GainRule rule_;
};

// REX3 behind the generic policy interface.
class Rex3Policy final : public DuelingPolicy {
 public:
  Rex3Policy(std::size_t k, GammaSchedule schedule);

  std::size_t arms() const override { return state_.arms(); }
  ArmPair decide(RandomStream& rng) override;
  void update(ArmPair pair, double feedback) override;
  std::string name() const override;

  const Rex3State& state() const { return state_; }
  std::span<const double> last_distribution() const { return p_; }

 private:
  Rex3State state_;
  GammaSchedule schedule_;
  std::vector<double> p_;
};

}  // namespace duelbench
