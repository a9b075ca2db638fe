#include "duelbench/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>

#include "duelbench/csv.hpp"
#include "duelbench/error.hpp"
#include "duelbench/kernels.hpp"

namespace duelbench {

double condorcet_regret(const PreferenceMatrix& m, Arm best, Arm a, Arm b) {
  return (m.at(best, a) + m.at(best, b) - 1.0) / 2.0;
}

double bandit_regret(std::span<const double> x, Arm best, Arm a, Arm b) {
  return (2.0 * x[best] - x[a] - x[b]) / 2.0;
}

const CurvePoint& AggregateCurve::at(std::uint64_t t) const {
  const auto it = std::lower_bound(points.begin(), points.end(), t,
                                   [](const CurvePoint& p, std::uint64_t v) { return p.t < v; });
  if (it == points.end() || it->t != t) {
    throw Error(Errc::missing_checkpoint, "no checkpoint at t=" + std::to_string(t));
  }
  return *it;
}

namespace {

const Checkpoint* find_checkpoint(const RunRecord& r, std::uint64_t t) {
  const auto it = std::lower_bound(r.checkpoints.begin(), r.checkpoints.end(), t,
                                   [](const Checkpoint& c, std::uint64_t v) { return c.t < v; });
  return it != r.checkpoints.end() && it->t == t ? &*it : nullptr;
}

bool canonical_less(const RunRecord* a, const RunRecord* b) {
  if (a->seed != b->seed) return a->seed < b->seed;
  if (a->policy != b->policy) return a->policy < b->policy;
  if (a->environment != b->environment) return a->environment < b->environment;
  return std::lexicographical_compare(
      a->checkpoints.begin(), a->checkpoints.end(), b->checkpoints.begin(), b->checkpoints.end(),
      [](const Checkpoint& x, const Checkpoint& y) {
        if (x.cumulative_regret != y.cumulative_regret) return x.cumulative_regret < y.cumulative_regret;
        return x.hit_count < y.hit_count;
      });
}

}  // namespace

double accuracy(std::span<const RunRecord> records, std::uint64_t t) {
  if (records.empty()) throw Error(Errc::missing_checkpoint, "no runs");
  std::size_t hits = 0;
  for (const auto& r : records) {
    const Checkpoint* c = find_checkpoint(r, t);
    if (!c) throw Error(Errc::missing_checkpoint, "run lacks t=" + std::to_string(t));
    hits += c->hit ? 1 : 0;
  }
  return static_cast<double>(hits) / static_cast<double>(records.size());
}

AggregateCurve aggregate(std::span<const RunRecord> records) {
  if (records.empty()) throw Error(Errc::missing_checkpoint, "no runs to aggregate");
  const auto& grid = records.front().checkpoints;
  for (const auto& r : records) {
    if (r.checkpoints.size() != grid.size() ||
        !std::equal(grid.begin(), grid.end(), r.checkpoints.begin(),
                    [](const Checkpoint& x, const Checkpoint& y) { return x.t == y.t; })) {
      throw Error(Errc::grid_mismatch, "runs are sampled on different checkpoint grids");
    }
  }

  std::vector<const RunRecord*> order;
  order.reserve(records.size());
  for (const auto& r : records) order.push_back(&r);
  std::sort(order.begin(), order.end(), canonical_less);

  const std::size_t n = grid.size();
  std::vector<double> regret(n), hits(n);
  std::vector<double> regret_sum(n, 0.0), hit_sum(n, 0.0);
  std::vector<double> lo(n, INFINITY), hi(n, -INFINITY);
  std::vector<double> unused_lo(n), unused_hi(n);
  for (const RunRecord* r : order) {
    for (std::size_t j = 0; j < n; ++j) {
      regret[j] = r->checkpoints[j].cumulative_regret;
      hits[j] = r->checkpoints[j].hit ? 1.0 : 0.0;
    }
    kernels::envelope(regret, regret_sum, lo, hi);
    kernels::envelope(hits, hit_sum, unused_lo, unused_hi);
  }

  const double count = static_cast<double>(records.size());
  AggregateCurve curve;
  curve.points.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double mean = std::clamp(regret_sum[j] / count, lo[j], hi[j]);
    curve.points.push_back({grid[j].t, mean, lo[j], hi[j], hit_sum[j] / count});
  }
  return curve;
}

void write_curve_csv(const AggregateCurve& curve, std::ostream& out) {
  out << "t,mean,min,max,hit_rate\n";
  for (const auto& p : curve.points) {
    out << p.t << ',' << csv::format_real(p.mean) << ',' << csv::format_real(p.min) << ','
        << csv::format_real(p.max) << ',' << csv::format_real(p.hit_rate) << '\n';
  }
}

void save_curve_csv(const AggregateCurve& curve, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::io_error, "cannot write " + path.string());
  write_curve_csv(curve, out);
  if (!out) throw Error(Errc::io_error, "failed writing " + path.string());
}

std::vector<std::uint64_t> log_checkpoint_grid(std::uint64_t horizon, unsigned per_decade) {
  if (horizon == 0) throw Error(Errc::horizon_too_small, "horizon must be at least 1");
  per_decade = std::clamp(per_decade, 1u, 200u);
  std::vector<std::uint64_t> grid;
  for (unsigned i = 0;; ++i) {
    const double v = std::pow(10.0, static_cast<double>(i) / per_decade);
    const auto t = static_cast<std::uint64_t>(std::llround(v));
    if (t >= horizon) break;
    if (grid.empty() || grid.back() != t) grid.push_back(t);
  }
  grid.push_back(horizon);
  return grid;
}

double regret_bound(const BoundParams& bp) {
  constexpr double e = std::numbers::e;
  const double k = static_cast<double>(bp.k);
  return k * std::log(k) / bp.gamma + bp.gamma * (e * bp.gmax - (4.0 - e) * bp.gmin);
}

}  // namespace duelbench
