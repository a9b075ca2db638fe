#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "duelbench/prefmat.hpp"
#include "duelbench/rng.hpp"

namespace duelbench {

// Outcome of one duel. `psi` is all the learner sees; `regret` and `hit` are
// bookkeeping private to the environment.
struct DuelFeedback {
  double psi = 0.0;     // in [-1, 1]
  double regret = 0.0;  // instantaneous regret of playing the pair
  bool hit = false;     // both arms are the reference best arm
};

// Duel-outcome generator. Steps `t` are 1-based. `duel` is const and draws
// all randomness from the caller's stream, so one environment can serve many
// concurrent runs and a run is reproducible from its seed.
class Environment {
 public:
  virtual ~Environment() = default;

  virtual std::size_t arms() const = 0;
  // The arm regret is measured against.
  virtual std::optional<Arm> best_arm() const = 0;
  virtual DuelFeedback duel(Arm a, Arm b, std::uint64_t t, RandomStream& rng) const = 0;
  virtual std::string name() const = 0;

 protected:
  void check_arms(Arm a, Arm b) const;
};

// Stochastic matrix-based duels. The winner is drawn from Bernoulli(P[a][b]),
// including a == b where the diagonal gives a fair coin, and psi is +1 or -1.
// Regret is the Condorcet regret against the Condorcet winner; on matrices
// without one the Copeland winner is used as a placeholder and per-step regret
// may be negative.
class MatrixEnvironment final : public Environment {
 public:
  explicit MatrixEnvironment(PreferenceMatrix m, std::string label = "matrix");

  std::size_t arms() const override { return m_.arms(); }
  std::optional<Arm> best_arm() const override { return reference_; }
  DuelFeedback duel(Arm a, Arm b, std::uint64_t t, RandomStream& rng) const override;
  std::string name() const override { return label_; }

  const PreferenceMatrix& matrix() const { return m_; }
  bool has_condorcet_winner() const { return condorcet_; }

 private:
  PreferenceMatrix m_;
  std::string label_;
  Arm reference_;
  bool condorcet_;
};

// Stochastic utility-based duels: every step draws one reward vector with
// x[i] ~ Bernoulli(mu[i]) independently, psi = x[a] - x[b] and regret is
// (2 x[i*] - x[a] - x[b]) / 2 on that draw, i* = argmax mu.
class UtilityEnvironment final : public Environment {
 public:
  explicit UtilityEnvironment(std::vector<double> mu, std::string label = "utilities");

  std::size_t arms() const override { return mu_.size(); }
  std::optional<Arm> best_arm() const override { return best_; }
  DuelFeedback duel(Arm a, Arm b, std::uint64_t t, RandomStream& rng) const override;
  std::string name() const override { return label_; }

  std::span<const double> means() const { return mu_; }

 private:
  std::vector<double> mu_;
  std::string label_;
  Arm best_;
};

// Deterministic reward sequence x(1..T) in [0,1]^K. Regret is measured
// against the best single arm in hindsight (largest total reward).
class AdversarialEnvironment final : public Environment {
 public:
  explicit AdversarialEnvironment(std::vector<std::vector<double>> rewards,
                                  std::string label = "adversarial");

  std::size_t arms() const override { return k_; }
  std::optional<Arm> best_arm() const override { return best_; }
  DuelFeedback duel(Arm a, Arm b, std::uint64_t t, RandomStream& rng) const override;
  std::string name() const override { return label_; }

  std::uint64_t horizon() const { return rewards_.size(); }
  std::span<const double> rewards_at(std::uint64_t t) const;

 private:
  std::vector<std::vector<double>> rewards_;
  std::string label_;
  std::size_t k_;
  Arm best_;
};

AdversarialEnvironment load_adversarial_csv(const std::filesystem::path& path);
AdversarialEnvironment read_adversarial_csv(std::istream& in);

// Gap of the deceiving environment: min(1/2, sqrt(K ln t / t)); t >= 1.
double deceiving_gap(std::size_t k, std::uint64_t t);

// Bernoulli arms where arm 0 has mean 1/2 + deceiving_gap(K, t) and every
// other arm mean 1/2. Duels behave as in UtilityEnvironment with i* = 0.
class NonstationaryEnvironment final : public Environment {
 public:
  explicit NonstationaryEnvironment(std::size_t k);

  std::size_t arms() const override { return k_; }
  std::optional<Arm> best_arm() const override { return Arm{0}; }
  DuelFeedback duel(Arm a, Arm b, std::uint64_t t, RandomStream& rng) const override;
  std::string name() const override;

 private:
  std::size_t k_;
};

}  // namespace duelbench
