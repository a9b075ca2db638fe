#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "duelbench/environments.hpp"
#include "duelbench/error.hpp"

using namespace duelbench;

TEST_CASE("matrix environment draws the winner from P[a][b]") {
  const auto m = PreferenceMatrix::validate({{0.5, 0.75, 1.0}, {0.25, 0.5, 0.5}, {0.0, 0.5, 0.5}});
  const MatrixEnvironment env(m);
  RandomStream rng(1);

  for (int i = 0; i < 100; ++i) CHECK(env.duel(0, 2, 1, rng).psi == 1.0);

  const int n = 1000000;
  int wins = 0;
  for (int i = 0; i < n; ++i) wins += env.duel(0, 1, 1, rng).psi > 0.0;
  CHECK(std::abs(wins / double(n) - 0.75) < 0.002);

  int self_wins = 0;
  for (int i = 0; i < 100000; ++i) self_wins += env.duel(1, 1, 1, rng).psi > 0.0;
  CHECK(std::abs(self_wins / 1e5 - 0.5) < 0.01);

  CHECK(env.best_arm() == Arm{0});
  CHECK(env.has_condorcet_winner());
  CHECK(env.duel(1, 1, 1, rng).regret == doctest::Approx(0.25));
  CHECK(env.duel(0, 0, 1, rng).regret == 0.0);
  CHECK(env.duel(0, 0, 1, rng).hit);
  CHECK_THROWS_AS(env.duel(0, 3, 1, rng), Error);
}

TEST_CASE("matrix environment without a Condorcet winner falls back to Copeland") {
  const auto rps = PreferenceMatrix::validate({{0.5, 0.9, 0.2}, {0.1, 0.5, 0.8}, {0.8, 0.2, 0.5}});
  const MatrixEnvironment env(rps);
  CHECK_FALSE(env.has_condorcet_winner());
  CHECK(env.best_arm() == Arm{0});
  RandomStream rng(2);
  CHECK(env.duel(2, 2, 1, rng).regret < 0.0);
}

TEST_CASE("utility environment feedback") {
  const UtilityEnvironment env({1.0, 0.0});
  RandomStream rng(3);
  const auto self = env.duel(0, 0, 1, rng);
  CHECK(self.psi == 0.0);
  CHECK(self.regret == 0.0);
  const auto cross = env.duel(0, 1, 1, rng);
  CHECK(cross.psi == 1.0);
  CHECK(cross.regret == 0.5);
  CHECK(env.duel(1, 1, 1, rng).regret == 1.0);
  CHECK_THROWS_AS(env.duel(2, 0, 1, rng), Error);
  CHECK_THROWS_AS(UtilityEnvironment({0.5, 1.2}), Error);
  CHECK_THROWS_AS(UtilityEnvironment({0.5}), Error);
}

TEST_CASE("utility environment with equal means has zero expected regret") {
  const UtilityEnvironment env({0.5, 0.5});
  RandomStream rng(4);
  const int n = 200000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double r = env.duel(1, 1, 1, rng).regret;
    sum += r;
    sq += r * r;
  }
  const double mean = sum / n;
  const double sd = std::sqrt(sq / n - mean * mean);
  CHECK(std::abs(mean) < 3.0 * sd / std::sqrt(double(n)));
}

TEST_CASE("adversarial environment replays its sequence") {
  const AdversarialEnvironment env({{0.2, 0.9}, {1.0, 0.0}, {0.0, 0.5}});
  RandomStream rng(5);
  CHECK(env.duel(0, 1, 1, rng).psi == doctest::Approx(-0.7));
  CHECK(env.duel(1, 1, 2, rng).psi == 0.0);
  CHECK(env.best_arm() == Arm{1});
  CHECK_THROWS_AS(env.duel(0, 1, 4, rng), Error);
  CHECK_THROWS_AS(env.duel(0, 1, 0, rng), Error);

  try {
    env.duel(0, 1, 4, rng);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::step_out_of_range);
  }
}

TEST_CASE("adversarial constant sequence accumulates regret T") {
  std::vector<std::vector<double>> seq(50, {1.0, 0.0});
  const AdversarialEnvironment env(seq);
  RandomStream rng(6);
  double total = 0.0;
  for (std::uint64_t t = 1; t <= 50; ++t) total += env.duel(1, 1, t, rng).regret;
  CHECK(total == 50.0);
}

TEST_CASE("adversarial CSV parsing") {
  std::stringstream in("# two arms\n0.1,0.2\n0.3,0.4\n");
  const auto env = read_adversarial_csv(in);
  CHECK(env.horizon() == 2);
  CHECK(env.rewards_at(2)[1] == 0.4);
  std::stringstream ragged("0.1,0.2\n0.3\n");
  CHECK_THROWS_AS(read_adversarial_csv(ragged), Error);
  std::stringstream range("0.1,1.2\n");
  CHECK_THROWS_AS(read_adversarial_csv(range), Error);
}

TEST_CASE("deceiving gap") {
  CHECK(deceiving_gap(10, 1) == 0.0);
  CHECK(deceiving_gap(10, 1000) == doctest::Approx(0.26282608848784655).epsilon(1e-14));
  CHECK(deceiving_gap(10, 10) == 0.5);
  CHECK_THROWS_AS(deceiving_gap(10, 0), Error);
}

TEST_CASE("nonstationary environment favours arm 0 by the gap") {
  const NonstationaryEnvironment env(10);
  RandomStream rng(7);
  CHECK(env.best_arm() == Arm{0});
  CHECK(env.name() == "nonstationary10");
  const int n = 200000;
  double wins = 0.0;
  for (int i = 0; i < n; ++i) wins += env.duel(0, 1, 1000, rng).psi;
  // E psi = mu_0 - mu_1 = gap
  CHECK(std::abs(wins / n - deceiving_gap(10, 1000)) < 0.01);
  CHECK_THROWS_AS(NonstationaryEnvironment(1), Error);
}

TEST_CASE("duels are reproducible from the seed") {
  const UtilityEnvironment env({0.3, 0.6, 0.9});
  RandomStream r1(99), r2(99);
  for (int i = 0; i < 1000; ++i) {
    const auto a = env.duel(i % 3, (i + 1) % 3, 1, r1);
    const auto b = env.duel(i % 3, (i + 1) % 3, 1, r2);
    CHECK(a.psi == b.psi);
    CHECK(a.regret == b.regret);
  }
}
