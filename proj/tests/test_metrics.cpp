#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "duelbench/error.hpp"
#include "duelbench/metrics.hpp"

using namespace duelbench;

namespace {

RunRecord constant_run(std::uint64_t seed, double value, std::vector<std::uint64_t> grid) {
  RunRecord r;
  r.seed = seed;
  r.policy = "p";
  r.environment = "e";
  for (auto t : grid) r.checkpoints.push_back({t, value, false, 0});
  return r;
}

}  // namespace

TEST_CASE("Condorcet regret") {
  const auto m = PreferenceMatrix::validate({{0.5, 0.7, 0.6}, {0.3, 0.5, 0.5}, {0.4, 0.5, 0.5}});
  CHECK(condorcet_regret(m, 0, 1, 2) == doctest::Approx(0.15).epsilon(1e-15));
  CHECK(condorcet_regret(m, 0, 0, 0) == 0.0);
  CHECK(condorcet_regret(m, 2, 0, 0) < 0.0);

  // Savage has P[0][K-1] = 1, so the worst pair reaches exactly 1/2.
  const auto s = savage_matrix(9);
  for (Arm a = 0; a < 9; ++a) {
    for (Arm b = 0; b < 9; ++b) {
      const double r = condorcet_regret(s, 0, a, b);
      CHECK(r >= 0.0);
      if (a != 8 || b != 8) CHECK(r < 0.5);
      CHECK(r <= 0.5);
    }
  }
}

TEST_CASE("bandit regret") {
  const std::vector<double> x = {1.0, 0.0};
  CHECK(bandit_regret(x, 0, 1, 1) == 1.0);
  CHECK(bandit_regret(x, 0, 0, 0) == 0.0);
  CHECK(bandit_regret(x, 0, 0, 1) == 0.5);
}

TEST_CASE("accuracy") {
  std::vector<RunRecord> runs(3);
  runs[0].checkpoints = {{5, 0.0, true, 1}};
  runs[1].checkpoints = {{5, 0.0, false, 0}};
  runs[2].checkpoints = {{5, 0.0, true, 3}};
  CHECK(accuracy(runs, 5) == doctest::Approx(2.0 / 3.0));
  runs[1].checkpoints[0].hit = true;
  CHECK(accuracy(runs, 5) == 1.0);
  CHECK_THROWS_AS(accuracy(runs, 6), Error);
  CHECK_THROWS_AS(accuracy(std::span<const RunRecord>{}, 5), Error);
}

TEST_CASE("aggregate") {
  const std::vector<std::uint64_t> grid = {1, 2, 5};
  std::vector<RunRecord> one = {constant_run(1, 2.5, grid)};
  const auto single = aggregate(one);
  for (const auto& p : single.points) {
    CHECK(p.mean == 2.5);
    CHECK(p.min == 2.5);
    CHECK(p.max == 2.5);
  }

  std::vector<RunRecord> two = {constant_run(1, 3.0, grid), constant_run(2, 5.0, grid)};
  const auto c = aggregate(two);
  CHECK(c.at(2).mean == 4.0);
  CHECK(c.at(2).min == 3.0);
  CHECK(c.at(2).max == 5.0);
  CHECK_THROWS_AS(c.at(3), Error);

  std::vector<RunRecord> mismatched = {constant_run(1, 3.0, grid), constant_run(2, 5.0, {1, 2, 6})};
  try {
    aggregate(mismatched);
    FAIL("expected GridMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::grid_mismatch);
  }
  CHECK_THROWS_AS(aggregate(std::span<const RunRecord>{}), Error);
}

TEST_CASE("aggregation is order independent and envelopes every run") {
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> u(0.0, 1e6);
  const std::vector<std::uint64_t> grid = {1, 10, 100, 1000};
  std::vector<RunRecord> runs;
  for (std::uint64_t s = 0; s < 37; ++s) {
    RunRecord r;
    r.seed = s * 7919 % 101;
    double acc = 0.0;
    for (auto t : grid) {
      acc += u(gen);
      r.checkpoints.push_back({t, acc, (s % 3) == 0, s});
    }
    runs.push_back(r);
  }
  const auto reference = aggregate(runs);
  for (int perm = 0; perm < 20; ++perm) {
    std::shuffle(runs.begin(), runs.end(), gen);
    CHECK(aggregate(runs) == reference);
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto& p = reference.points[i];
    CHECK(p.min <= p.mean);
    CHECK(p.mean <= p.max);
    for (const auto& r : runs) {
      CHECK(p.min <= r.checkpoints[i].cumulative_regret);
      CHECK(r.checkpoints[i].cumulative_regret <= p.max);
    }
  }
}

TEST_CASE("curve CSV") {
  AggregateCurve c;
  c.points = {{1, 0.5, 0.25, 0.75, 0.5}, {10, 1.0 / 3.0, 0.0, 1.0, 0.0}};
  std::ostringstream out;
  write_curve_csv(c, out);
  CHECK(out.str() == "t,mean,min,max,hit_rate\n1,0.5,0.25,0.75,0.5\n10,0.333333333333,0,1,0\n");
}

TEST_CASE("checkpoint grid") {
  const auto g = log_checkpoint_grid(1000, 4);
  CHECK(g == std::vector<std::uint64_t>{1, 2, 3, 6, 10, 18, 32, 56, 100, 178, 316, 562, 1000});
  CHECK(log_checkpoint_grid(1, 20) == std::vector<std::uint64_t>{1});
  const auto fine = log_checkpoint_grid(100000, 1000);
  CHECK(std::is_sorted(fine.begin(), fine.end()));
  CHECK(std::adjacent_find(fine.begin(), fine.end()) == fine.end());
  CHECK(fine.back() == 100000);
  CHECK(log_checkpoint_grid(12345, 20).back() == 12345);
}

TEST_CASE("regret bound") {
  CHECK(regret_bound({2, 0.5, 50, 0}) == doctest::Approx(70.7296344337159).epsilon(1e-14));
  const double g = 0.10099397951045469;
  CHECK(regret_bound({2, g, 50, 0}) == doctest::Approx(27.45300992870341).epsilon(1e-13));
  CHECK(regret_bound({2, 1e-9, 50, 0}) > 1e8);
  CHECK(regret_bound({5, 0.2, 100, 30}) ==
        doctest::Approx(5 * std::log(5.0) / 0.2 + 0.2 * (std::exp(1.0) * 100 - (4 - std::exp(1.0)) * 30)));
}
