#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "duelbench/prefmat.hpp"

namespace duelbench {

// (P[i*][a] + P[i*][b] - 1) / 2. In [0, 1/2) when `best` is a Condorcet
// winner; may be negative for a Copeland placeholder.
double condorcet_regret(const PreferenceMatrix& m, Arm best, Arm a, Arm b);

// (2 x[i*] - x[a] - x[b]) / 2 on one reward vector.
double bandit_regret(std::span<const double> x, Arm best, Arm a, Arm b);

struct Checkpoint {
  std::uint64_t t = 0;
  double cumulative_regret = 0.0;
  bool hit = false;  // the pull at step t was (i*, i*)
  std::uint64_t hit_count = 0;

  friend bool operator==(const Checkpoint&, const Checkpoint&) = default;
};

// One seeded run sampled on a checkpoint grid. The running regret sum is
// exact per step; checkpoints only subsample it.
struct RunRecord {
  std::uint64_t seed = 0;
  std::string policy;
  std::string environment;
  std::vector<Checkpoint> checkpoints;

  friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

struct CurvePoint {
  std::uint64_t t = 0;
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
  double hit_rate = 0.0;

  friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

struct AggregateCurve {
  std::vector<CurvePoint> points;

  const CurvePoint& at(std::uint64_t t) const;  // Error{missing_checkpoint}
  friend bool operator==(const AggregateCurve&, const AggregateCurve&) = default;
};

// Fraction of runs whose pull at checkpoint t was (i*, i*).
// Throws Error{missing_checkpoint} if there are no runs or one lacks t.
double accuracy(std::span<const RunRecord> records, std::uint64_t t);

// Pointwise mean/min/max of cumulative regret and hit rate. Runs are put in
// a canonical order before summation, so the result does not depend on the
// order of `records`. Throws Error{grid_mismatch} if grids differ and
// Error{missing_checkpoint} on an empty input.
AggregateCurve aggregate(std::span<const RunRecord> records);

// Header `t,mean,min,max,hit_rate`, 12 significant digits.
void write_curve_csv(const AggregateCurve& curve, std::ostream& out);
void save_curve_csv(const AggregateCurve& curve, const std::filesystem::path& path);

// Logarithmic checkpoint grid on [1, horizon]: round(10^(i / per_decade)) for
// i = 0, 1, ..., deduplicated, always ending at `horizon`. per_decade is
// capped at 200.
std::vector<std::uint64_t> log_checkpoint_grid(std::uint64_t horizon, unsigned per_decade);

struct BoundParams {
  std::size_t k = 2;
  double gamma = 0.5;
  double gmax = 0.0;
  double gmin = 0.0;
};

// K ln K / gamma + gamma (e gmax - (4 - e) gmin): the regret upper bound in
// bandit-regret units. Compare against Condorcet regret with half of it.
double regret_bound(const BoundParams& bp);

}  // namespace duelbench
