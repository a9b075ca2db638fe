#include <cassert>

#include "duelbench/kernels.hpp"

namespace duelbench::kernels {
namespace {

constexpr std::size_t kLanes = 4;

SumMax sum_max_scalar(std::span<const double> x) {
  double lane[kLanes] = {0.0, 0.0, 0.0, 0.0};
  double hi = x.empty() ? 0.0 : x[0];
  for (std::size_t i = 0; i < x.size(); ++i) {
    lane[i % kLanes] += x[i];
    hi = x[i] > hi ? x[i] : hi;
  }
  return {(lane[0] + lane[1]) + (lane[2] + lane[3]), hi};
}

void affine_scalar(std::span<const double> x, double scale, double offset, std::span<double> out) {
  assert(out.size() >= x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] * scale + offset;
}

void scale_scalar(std::span<double> x, double factor) {
  for (double& v : x) v *= factor;
}

void threshold_scalar(std::span<const double> u, std::span<const double> p, std::span<double> out) {
  assert(p.size() >= u.size() && out.size() >= u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = u[i] < p[i] ? 1.0 : 0.0;
}

// Mirrors vminpd/vmaxpd: the first operand wins only on a strict comparison.
void envelope_scalar(std::span<const double> x, std::span<double> sum, std::span<double> lo,
                     std::span<double> hi) {
  assert(sum.size() >= x.size() && lo.size() >= x.size() && hi.size() >= x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    sum[i] += x[i];
    lo[i] = x[i] < lo[i] ? x[i] : lo[i];
    hi[i] = x[i] > hi[i] ? x[i] : hi[i];
  }
}

}  // namespace

const Table& scalar_table() {
  static const Table table{sum_max_scalar, affine_scalar, scale_scalar, threshold_scalar,
                           envelope_scalar};
  return table;
}

}  // namespace duelbench::kernels
