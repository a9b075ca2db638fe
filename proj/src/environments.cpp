#include "duelbench/environments.hpp"

#include <cmath>
#include <fstream>

#include "duelbench/csv.hpp"
#include "duelbench/error.hpp"
#include "duelbench/kernels.hpp"
#include "duelbench/metrics.hpp"

namespace duelbench {
namespace {

// Per-thread scratch for reward-vector draws.
struct DrawBuffers {
  std::vector<double> uniforms;
  std::vector<double> means;
  std::vector<double> rewards;

  void resize(std::size_t k) {
    uniforms.resize(k);
    means.resize(k);
    rewards.resize(k);
  }
};

DrawBuffers& buffers(std::size_t k) {
  thread_local DrawBuffers b;
  b.resize(k);
  return b;
}

std::span<const double> draw_rewards(std::span<const double> mu, RandomStream& rng, DrawBuffers& b) {
  for (double& u : b.uniforms) u = rng.uniform();
  kernels::threshold(b.uniforms, mu, b.rewards);
  return b.rewards;
}

DuelFeedback utility_feedback(std::span<const double> x, Arm best, Arm a, Arm b) {
  return {x[a] - x[b], bandit_regret(x, best, a, b), a == best && b == best};
}

Arm argmax(std::span<const double> v) {
  Arm best = 0;
  for (Arm i = 1; i < v.size(); ++i) {
    if (v[i] > v[best]) best = i;
  }
  return best;
}

}  // namespace

void Environment::check_arms(Arm a, Arm b) const {
  const std::size_t k = arms();
  if (a >= k || b >= k) {
    throw Error(Errc::arm_out_of_range, "duel (" + std::to_string(a) + "," + std::to_string(b) +
                                            ") with K=" + std::to_string(k));
  }
}

MatrixEnvironment::MatrixEnvironment(PreferenceMatrix m, std::string label)
    : m_(std::move(m)), label_(std::move(label)) {
  const auto winner = condorcet_winner(m_);
  condorcet_ = winner.has_value();
  reference_ = winner ? *winner : copeland_winner(m_);
}

DuelFeedback MatrixEnvironment::duel(Arm a, Arm b, std::uint64_t, RandomStream& rng) const {
  check_arms(a, b);
  const double psi = rng.bernoulli(m_.at(a, b)) ? 1.0 : -1.0;
  return {psi, condorcet_regret(m_, reference_, a, b), a == reference_ && b == reference_};
}

UtilityEnvironment::UtilityEnvironment(std::vector<double> mu, std::string label)
    : mu_(std::move(mu)), label_(std::move(label)) {
  if (mu_.size() < 2) throw Error(Errc::too_few_arms, "need at least 2 arms");
  for (double m : mu_) {
    if (!(m >= 0.0 && m <= 1.0)) throw Error(Errc::mean_out_of_range, "means must lie in [0,1]");
  }
  best_ = argmax(mu_);
}

DuelFeedback UtilityEnvironment::duel(Arm a, Arm b, std::uint64_t, RandomStream& rng) const {
  check_arms(a, b);
  auto& buf = buffers(mu_.size());
  return utility_feedback(draw_rewards(mu_, rng, buf), best_, a, b);
}

AdversarialEnvironment::AdversarialEnvironment(std::vector<std::vector<double>> rewards,
                                               std::string label)
    : rewards_(std::move(rewards)), label_(std::move(label)) {
  if (rewards_.empty()) throw Error(Errc::horizon_too_small, "empty reward sequence");
  k_ = rewards_.front().size();
  if (k_ < 2) throw Error(Errc::too_few_arms, "need at least 2 arms");
  std::vector<double> totals(k_, 0.0);
  for (std::size_t t = 0; t < rewards_.size(); ++t) {
    const auto& row = rewards_[t];
    if (row.size() != k_) {
      throw Error(Errc::arm_count_mismatch, "row " + std::to_string(t + 1) + " has " +
                                                std::to_string(row.size()) + " entries");
    }
    for (std::size_t i = 0; i < k_; ++i) {
      if (!(row[i] >= 0.0 && row[i] <= 1.0)) {
        throw Error(Errc::entry_out_of_range, "rewards must lie in [0,1]");
      }
      totals[i] += row[i];
    }
  }
  best_ = argmax(totals);
}

std::span<const double> AdversarialEnvironment::rewards_at(std::uint64_t t) const {
  if (t == 0 || t > rewards_.size()) {
    throw Error(Errc::step_out_of_range, "step " + std::to_string(t) + " outside 1.." +
                                             std::to_string(rewards_.size()));
  }
  return rewards_[t - 1];
}

DuelFeedback AdversarialEnvironment::duel(Arm a, Arm b, std::uint64_t t, RandomStream&) const {
  check_arms(a, b);
  return utility_feedback(rewards_at(t), best_, a, b);
}

AdversarialEnvironment read_adversarial_csv(std::istream& in) {
  return AdversarialEnvironment(csv::read_reals(in));
}

AdversarialEnvironment load_adversarial_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io_error, "cannot open " + path.string());
  return AdversarialEnvironment(csv::read_reals(in), path.stem().string());
}

double deceiving_gap(std::size_t k, std::uint64_t t) {
  if (t == 0) throw Error(Errc::step_out_of_range, "steps start at 1");
  const double td = static_cast<double>(t);
  return std::min(0.5, std::sqrt(static_cast<double>(k) * std::log(td) / td));
}

NonstationaryEnvironment::NonstationaryEnvironment(std::size_t k) : k_(k) {
  if (k < 2) throw Error(Errc::too_few_arms, "need at least 2 arms");
}

DuelFeedback NonstationaryEnvironment::duel(Arm a, Arm b, std::uint64_t t,
                                            RandomStream& rng) const {
  check_arms(a, b);
  auto& buf = buffers(k_);
  std::fill(buf.means.begin(), buf.means.end(), 0.5);
  buf.means[0] = 0.5 + deceiving_gap(k_, t);
  return utility_feedback(draw_rewards(buf.means, rng, buf), 0, a, b);
}

std::string NonstationaryEnvironment::name() const {
  return "nonstationary" + std::to_string(k_);
}

}  // namespace duelbench
