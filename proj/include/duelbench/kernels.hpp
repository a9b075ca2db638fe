#pragma once

// Data-parallel inner loops shared by the learners and the aggregator.
//
// Each kernel has a scalar reference and, where the CPU supports it, an AVX2
// variant. Reductions use a fixed 4-lane layout (element i accumulates into
// lane i % 4, lanes combine as (l0 + l1) + (l2 + l3)), and the scalar
// reference follows the same layout, so both variants return bit-identical
// results. The build disables FMA contraction for the same reason.
//
// The active variant is picked once at first use: AVX2 when available,
// unless DUELBENCH_SIMD=scalar is set in the environment.

#include <cstddef>
#include <span>
#include <string_view>

namespace duelbench::kernels {

enum class Isa { scalar, avx2 };

std::string_view to_string(Isa isa);

struct SumMax {
  double sum;
  double max;
};

// Function table; one instance per instruction set.
struct Table {
  SumMax (*sum_max)(std::span<const double> x);
  // out[i] = x[i] * scale + offset
  void (*affine)(std::span<const double> x, double scale, double offset, std::span<double> out);
  // x[i] *= factor
  void (*scale)(std::span<double> x, double factor);
  // out[i] = u[i] < p[i] ? 1.0 : 0.0
  void (*threshold)(std::span<const double> u, std::span<const double> p, std::span<double> out);
  // sum[i] += x[i]; lo[i] = min(x[i], lo[i]); hi[i] = max(x[i], hi[i])
  void (*envelope)(std::span<const double> x, std::span<double> sum, std::span<double> lo,
                   std::span<double> hi);
};

const Table& scalar_table();
// Null when the binary or the CPU lacks AVX2.
const Table* avx2_table();

bool avx2_available();
Isa active_isa();
// Overrides the automatic choice; intended for tests and benchmarks. Not
// safe to call while other threads are running kernels.
void force_isa(Isa isa);

const Table& active();

inline SumMax sum_max(std::span<const double> x) { return active().sum_max(x); }
inline void affine(std::span<const double> x, double scale, double offset, std::span<double> out) {
  active().affine(x, scale, offset, out);
}
inline void scale(std::span<double> x, double factor) { active().scale(x, factor); }
inline void threshold(std::span<const double> u, std::span<const double> p, std::span<double> out) {
  active().threshold(u, p, out);
}
inline void envelope(std::span<const double> x, std::span<double> sum, std::span<double> lo,
                     std::span<double> hi) {
  active().envelope(x, sum, lo, hi);
}

}  // namespace duelbench::kernels
