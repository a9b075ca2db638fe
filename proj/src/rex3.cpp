#include "duelbench/rex3.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "duelbench/error.hpp"

namespace duelbench {
namespace {

void check_gamma(double gamma) {
  if (!(gamma > 0.0 && gamma <= 1.0)) {
    throw Error(Errc::invalid_argument, "exploration rate must lie in (0,1]");
  }
}

std::string full_precision(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

Rex3State Rex3State::init(std::size_t k, double gamma) {
  if (k < 2) throw Error(Errc::too_few_arms, "REX3 needs at least 2 arms");
  check_gamma(gamma);
  return Rex3State(WeightVector(k), gamma, 1);
}

Rex3State Rex3State::from_weights(std::vector<double> w, double gamma, std::uint64_t t) {
  if (w.size() < 2) throw Error(Errc::too_few_arms, "REX3 needs at least 2 arms");
  check_gamma(gamma);
  return Rex3State(WeightVector(std::move(w)), gamma, t);
}

void Rex3State::set_gamma(double gamma) {
  check_gamma(gamma);
  gamma_ = gamma;
}

void Rex3State::update(Arm a, Arm b, double psi, std::span<const double> p) {
  const std::size_t k = arms();
  if (a >= k || b >= k) throw Error(Errc::arm_out_of_range, "arm index outside [0,K)");
  if (a != b) {
    const double rate = gamma_ / static_cast<double>(k);
    w_.multiply(a, std::exp(rate * psi / (2.0 * p[a])));
    w_.multiply(b, std::exp(-rate * psi / (2.0 * p[b])));
  }
  ++t_;
}

void Rex3State::update(Arm a, Arm b, double psi) {
  const auto p = distribution();
  update(a, b, psi, p);
}

std::string Rex3State::snapshot() const {
  std::string out = std::to_string(arms()) + ' ' + full_precision(gamma_) + ' ' + std::to_string(t_);
  for (double v : w_.values()) out += ' ' + full_precision(v);
  return out;
}

Rex3State Rex3State::restore(const std::string& record) {
  std::istringstream in(record);
  std::size_t k = 0;
  double gamma = 0.0;
  std::uint64_t t = 0;
  if (!(in >> k >> gamma >> t)) throw Error(Errc::invalid_argument, "malformed REX3 snapshot");
  std::vector<double> w(k);
  for (double& v : w) {
    if (!(in >> v)) throw Error(Errc::invalid_argument, "snapshot has fewer than K weights");
  }
  std::string extra;
  if (in >> extra) throw Error(Errc::invalid_argument, "snapshot has trailing data");
  return from_weights(std::move(w), gamma, t);
}

Arm sample_arm(std::span<const double> p, RandomStream& rng) {
  const double u = rng.uniform();
  double cumulative = 0.0;
  Arm last_positive = 0;
  for (Arm i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    cumulative += p[i];
    last_positive = i;
    if (u < cumulative) return i;
  }
  // Rounding left the total slightly below u.
  return last_positive;
}

ArmPair select_pair(std::span<const double> p, RandomStream& rng) {
  const Arm a = sample_arm(p, rng);
  const Arm b = sample_arm(p, rng);
  return {a, b};
}

std::vector<double> relative_estimates(Arm a, Arm b, std::span<const double> p, double psi) {
  if (a >= p.size() || b >= p.size()) throw Error(Errc::arm_out_of_range, "arm index outside [0,K)");
  if (!(p[a] > 0.0) || !(p[b] > 0.0)) {
    throw Error(Errc::zero_probability, "pulled arm has zero probability");
  }
  std::vector<double> c(p.size(), 0.0);
  c[a] += psi / (2.0 * p[a]);
  c[b] += -psi / (2.0 * p[b]);
  return c;
}

double tau(double gmax, double gmin) {
  if (gmax < 0.0 || gmin < 0.0) throw Error(Errc::invalid_argument, "gains must be non-negative");
  constexpr double e = std::numbers::e;
  const double value = e * gmax - (4.0 - e) * gmin;
  if (value < 0.0) throw Error(Errc::negative_tau, "gmin too large relative to gmax");
  return value;
}

double optimal_gamma(std::size_t k, double tau_value) {
  if (k < 2) throw Error(Errc::too_few_arms, "need at least 2 arms");
  if (!(tau_value > 0.0)) return 0.5;
  const double kd = static_cast<double>(k);
  return std::min(0.5, std::sqrt(kd * std::log(kd) / tau_value));
}

double estimate_gmax(GainRule rule, std::uint64_t horizon) {
  const double h = static_cast<double>(horizon);
  switch (rule) {
    case GainRule::horizon_over_two: return h / 2.0;
    case GainRule::horizon_over_four: return h / 4.0;
    case GainRule::horizon_over_ten: return h / 10.0;
  }
  return h / 2.0;
}

GammaSchedule GammaSchedule::fixed(double gamma) {
  check_gamma(gamma);
  return GammaSchedule(Kind::fixed, gamma, 0, GainRule::horizon_over_two);
}

GammaSchedule GammaSchedule::optimal_fixed_horizon(std::uint64_t horizon, GainRule rule) {
  if (horizon == 0) throw Error(Errc::horizon_too_small, "horizon must be at least 1");
  return GammaSchedule(Kind::optimal_fixed_horizon, 0.0, horizon, rule);
}

GammaSchedule GammaSchedule::adaptive_anytime(GainRule rule) {
  return GammaSchedule(Kind::adaptive_anytime, 0.0, 0, rule);
}

double GammaSchedule::gamma_at(std::size_t k, std::uint64_t t) const {
  switch (kind_) {
    case Kind::fixed: return gamma_;
    case Kind::optimal_fixed_horizon: return optimal_gamma(k, tau(estimate_gmax(rule_, horizon_), 0.0));
    case Kind::adaptive_anytime: return optimal_gamma(k, tau(estimate_gmax(rule_, t), 0.0));
  }
  return gamma_;
}

namespace {

const char* rule_label(GainRule rule) {
  switch (rule) {
    case GainRule::horizon_over_two: return "T/2";
    case GainRule::horizon_over_four: return "T/4";
    case GainRule::horizon_over_ten: return "T/10";
  }
  return "?";
}

}  // namespace

std::string GammaSchedule::label() const {
  switch (kind_) {
    case Kind::fixed: return "gamma=" + full_precision(gamma_);
    case Kind::optimal_fixed_horizon: return std::string("optimal ") + rule_label(rule_);
    case Kind::adaptive_anytime: return std::string("adaptive ") + rule_label(rule_);
  }
  return {};
}

Rex3Policy::Rex3Policy(std::size_t k, GammaSchedule schedule)
    : state_(Rex3State::init(k, schedule.gamma_at(k, 1))), schedule_(schedule), p_(k) {}

ArmPair Rex3Policy::decide(RandomStream& rng) {
  state_.set_gamma(schedule_.gamma_at(state_.arms(), state_.step()));
  state_.distribution(p_);
  return select_pair(p_, rng);
}

void Rex3Policy::update(ArmPair pair, double feedback) {
  state_.update(pair.first, pair.second, feedback, p_);
}

std::string Rex3Policy::name() const { return "rex3 (" + schedule_.label() + ")"; }

}  // namespace duelbench
