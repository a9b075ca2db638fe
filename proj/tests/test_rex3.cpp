#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "duelbench/environments.hpp"
#include "duelbench/error.hpp"
#include "duelbench/rex3.hpp"

using namespace duelbench;

namespace {

// Plain REX3 with no overflow handling, written straight from the update rule.
struct TextbookRex3 {
  std::vector<double> w;
  double gamma;

  std::vector<double> dist() const {
    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    std::vector<double> p(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) p[i] = (1 - gamma) * w[i] / total + gamma / w.size();
    return p;
  }

  void update(std::size_t a, std::size_t b, double psi) {
    if (a == b) return;
    const auto p = dist();
    const double k = static_cast<double>(w.size());
    w[a] *= std::exp(gamma / k * psi / (2 * p[a]));
    w[b] *= std::exp(-gamma / k * psi / (2 * p[b]));
  }
};

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::bit_cast<std::uint64_t>(a[i]) != std::bit_cast<std::uint64_t>(b[i])) return false;
  }
  return a.size() == b.size();
}

}  // namespace

TEST_CASE("init") {
  const auto s = Rex3State::init(2);
  CHECK(s.weights()[0] == 1.0);
  CHECK(s.weights()[1] == 1.0);
  CHECK(s.step() == 1);
  for (double p : Rex3State::init(4, 0.2).distribution()) CHECK(p == 0.25);
  CHECK_THROWS_AS(Rex3State::init(1), Error);
  CHECK_THROWS_AS(Rex3State::init(3, 0.0), Error);
}

TEST_CASE("distribution") {
  const auto p = Rex3State::from_weights({3.0, 1.0}, 0.2).distribution();
  CHECK(p[0] == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(p[1] == doctest::Approx(0.3).epsilon(1e-15));
  for (double c : {1e-90, 1e-30, 7.0, 1e90}) {
    const auto q = Rex3State::from_weights({3.0 * c, 1.0 * c}, 0.2).distribution();
    CHECK(q[0] == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(q[1] == doctest::Approx(0.3).epsilon(1e-15));
  }
  for (double v : Rex3State::from_weights({5.0, 1.0, 2.0}, 1.0).distribution()) {
    CHECK(v == doctest::Approx(1.0 / 3).epsilon(1e-15));
  }
}

TEST_CASE("renormalization leaves the distribution bit-identical") {
  for (double magnitude : {1e-90, 1.0, 1e90}) {
    WeightVector w({3.1 * magnitude, 0.7 * magnitude, 2.9e-5 * magnitude, 1.3 * magnitude});
    const auto before = w.mixture(0.15);
    w.renormalize();
    CHECK(w.max() >= 0.5);
    CHECK(w.max() < 1.0);
    CHECK(same_bits(before, w.mixture(0.15)));
  }
}

TEST_CASE("select_pair") {
  RandomStream rng(1);
  const std::vector<double> point = {1.0, 0.0, 0.0};
  for (int i = 0; i < 100; ++i) CHECK(select_pair(point, rng) == ArmPair{0, 0});

  const std::vector<double> uniform = {0.5, 0.5};
  const int n = 1000000;
  int same = 0;
  for (int i = 0; i < n; ++i) {
    const auto p = select_pair(uniform, rng);
    same += p.first == p.second;
  }
  CHECK(std::abs(same / double(n) - 0.5) < 0.002);

  RandomStream a(5), b(5);
  const std::vector<double> p = {0.1, 0.2, 0.3, 0.4};
  for (int i = 0; i < 100; ++i) CHECK(select_pair(p, a) == select_pair(p, b));
}

TEST_CASE("relative estimates") {
  const std::vector<double> p = {0.5, 0.5, 0.0};
  CHECK(relative_estimates(0, 1, p, 1.0) == std::vector<double>{1.0, -1.0, 0.0});
  CHECK(relative_estimates(1, 1, p, 1.0) == std::vector<double>{0.0, 0.0, 0.0});
  CHECK(relative_estimates(0, 1, p, 0.0) == std::vector<double>{0.0, 0.0, 0.0});
  try {
    relative_estimates(0, 2, p, 1.0);
    FAIL("expected ZeroProbability");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::zero_probability);
  }
}

TEST_CASE("update") {
  auto s = Rex3State::init(2, 0.5);
  s.update(0, 1, 1.0);
  CHECK(s.weights()[0] == doctest::Approx(1.2840254166877414).epsilon(1e-15));
  CHECK(s.weights()[1] == doctest::Approx(0.7788007830714049).epsilon(1e-15));
  CHECK(s.step() == 2);

  auto r = Rex3State::init(2, 0.5);
  r.update(0, 1, -1.0);
  CHECK(r.weights()[0] == doctest::Approx(0.7788007830714049).epsilon(1e-15));
  CHECK(r.weights()[1] == doctest::Approx(1.2840254166877414).epsilon(1e-15));

  auto same = Rex3State::from_weights({2.0, 3.0, 5.0}, 0.3);
  same.update(2, 2, 1.0);
  CHECK(same.weights()[0] == 2.0);
  CHECK(same.weights()[1] == 3.0);
  CHECK(same.weights()[2] == 5.0);
  CHECK(same.step() == 2);

  CHECK_THROWS_AS(same.update(0, 3, 1.0), Error);
}

TEST_CASE("tau and optimal gamma") {
  CHECK(tau(50, 0) == doctest::Approx(135.91409142295225).epsilon(1e-15));
  CHECK(tau(0, 0) == 0.0);
  CHECK(tau(100, 100) == doctest::Approx(143.65636569180901).epsilon(1e-15));
  CHECK_THROWS_AS(tau(-1, 0), Error);

  CHECK(optimal_gamma(4, 100) == doctest::Approx(0.23548200450309495).epsilon(1e-15));
  CHECK(optimal_gamma(4, 16 * std::log(4.0)) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(optimal_gamma(4, 10) == 0.5);
  CHECK(optimal_gamma(4, 0) == 0.5);
  CHECK(optimal_gamma(4, -3) == 0.5);
}

TEST_CASE("gamma schedules") {
  const auto adaptive = GammaSchedule::adaptive_anytime(GainRule::horizon_over_two);
  CHECK(adaptive.gamma_at(4, 1) == 0.5);
  CHECK(adaptive.gamma_at(4, 10000) == doctest::Approx(0.020198795902090935).epsilon(1e-14));
  CHECK(adaptive.gamma_at(4, 40000) / adaptive.gamma_at(4, 10000) == doctest::Approx(0.5).epsilon(1e-14));
  double previous = 1.0;
  for (std::uint64_t t = 1; t < 100000; t += 97) {
    const double g = adaptive.gamma_at(6, t);
    CHECK(g <= previous);
    previous = g;
  }

  const auto fixed_horizon = GammaSchedule::optimal_fixed_horizon(10000, GainRule::horizon_over_two);
  CHECK(fixed_horizon.gamma_at(4, 1) == adaptive.gamma_at(4, 10000));
  CHECK(fixed_horizon.gamma_at(4, 9999) == fixed_horizon.gamma_at(4, 1));
  CHECK(GammaSchedule::fixed(0.3).gamma_at(7, 123) == 0.3);
  CHECK_THROWS_AS(GammaSchedule::fixed(1.5), Error);
  CHECK(estimate_gmax(GainRule::horizon_over_ten, 1000) == 100.0);
}

TEST_CASE("forced exploration bound holds along a run") {
  const MatrixEnvironment env(savage_matrix(8));
  Rex3Policy policy(8, GammaSchedule::fixed(0.2));
  RandomStream prng(3), erng(4);
  for (std::uint64_t t = 1; t <= 20000; ++t) {
    const auto pair = policy.decide(prng);
    const auto p = policy.last_distribution();
    double total = 0.0;
    for (double v : p) {
      REQUIRE(v >= 0.2 / 8 * (1 - 1e-12));
      total += v;
    }
    REQUIRE(std::abs(total - 1.0) <= 1e-12);
    policy.update(pair, env.duel(pair.first, pair.second, t, erng).psi);
  }
}

TEST_CASE("weights stay positive and finite over 10^7 one-sided updates") {
  auto s = Rex3State::init(3, 0.5);
  std::vector<double> p(3);
  for (int i = 0; i < 10000000; ++i) {
    s.distribution(p);
    s.update(0, 1 + (i & 1), 1.0, p);
  }
  for (double w : s.weights().values()) {
    CHECK(w > 0.0);
    CHECK(std::isfinite(w));
    CHECK(std::fpclassify(w) == FP_NORMAL);
  }
  CHECK(s.weights().max() <= WeightVector::kHighMark);
  CHECK(s.weights().max() >= WeightVector::kLowMark);
  const auto q = s.distribution();
  CHECK(q[0] == doctest::Approx(1 - 2 * 0.5 / 3).epsilon(1e-12));
}

TEST_CASE("matches a textbook implementation on a shared feedback stream") {
  for (std::size_t k : {2u, 5u, 12u}) {
    const auto m = savage_matrix(k);
    auto state = Rex3State::init(k, 0.1);
    TextbookRex3 ref{std::vector<double>(k, 1.0), 0.1};
    RandomStream rng(k);
    for (int t = 0; t < 3000; ++t) {
      const Arm a = rng.below(k), b = rng.below(k);
      const double psi = rng.bernoulli(m.at(a, b)) ? 1.0 : -1.0;
      state.update(a, b, psi);
      ref.update(a, b, psi);
    }
    const auto p = state.distribution();
    const auto q = ref.dist();
    for (std::size_t i = 0; i < k; ++i) CHECK(std::abs(p[i] - q[i]) <= 1e-12);
  }
}

TEST_CASE("snapshot round trip") {
  auto s = Rex3State::from_weights({0.1, 2.0 / 3.0, 1e-50}, 0.25, 17);
  const auto text = s.snapshot();
  const auto back = Rex3State::restore(text);
  CHECK(back.snapshot() == text);
  CHECK(back.step() == 17);
  CHECK(back.weights()[1] == 2.0 / 3.0);
  CHECK_THROWS_AS(Rex3State::restore("3 0.25 17 1 2"), Error);
  CHECK_THROWS_AS(Rex3State::restore("2 0.25 1 1 2 3"), Error);
  CHECK_THROWS_AS(Rex3State::restore("garbage"), Error);
}

TEST_CASE("golden trace") {
  const MatrixEnvironment env(savage_matrix(10));
  Rex3Policy policy(10, GammaSchedule::adaptive_anytime(GainRule::horizon_over_two));
  RandomStream prng(2016), erng(2017);
  for (std::uint64_t t = 1; t <= 5000; ++t) {
    const auto pair = policy.decide(prng);
    policy.update(pair, env.duel(pair.first, pair.second, t, erng).psi);
  }
  const std::string golden =
      "10 0.05820906174335206 5001 938.55271508526914 8.91968018268254e-05 "
      "0.0046079577845879642 6.125839106442676e-07 1.0913452881316449e-08 "
      "5.9662693409373696e-09 1.6346414639207257e-13 2.2018665626681328e-19 "
      "1.0645356440761355e-20 8.8837616074853393e-22";
  CHECK(policy.state().snapshot() == golden);
}
