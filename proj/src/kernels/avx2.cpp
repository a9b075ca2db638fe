#include <immintrin.h>

#include <cassert>

#include "duelbench/kernels.hpp"

namespace duelbench::kernels {
namespace {

constexpr std::size_t kLanes = 4;

SumMax sum_max_avx2(std::span<const double> x) {
  const std::size_t n = x.size();
  const std::size_t body = n - n % kLanes;
  __m256d acc = _mm256_setzero_pd();
  __m256d top = _mm256_set1_pd(n == 0 ? 0.0 : x[0]);
  for (std::size_t i = 0; i < body; i += kLanes) {
    const __m256d v = _mm256_loadu_pd(x.data() + i);
    acc = _mm256_add_pd(acc, v);
    top = _mm256_max_pd(v, top);
  }
  alignas(32) double lane[kLanes];
  alignas(32) double lane_max[kLanes];
  _mm256_store_pd(lane, acc);
  _mm256_store_pd(lane_max, top);
  double hi = lane_max[0];
  for (std::size_t l = 1; l < kLanes; ++l) hi = lane_max[l] > hi ? lane_max[l] : hi;
  for (std::size_t i = body; i < n; ++i) {
    lane[i % kLanes] += x[i];
    hi = x[i] > hi ? x[i] : hi;
  }
  return {(lane[0] + lane[1]) + (lane[2] + lane[3]), hi};
}

void affine_avx2(std::span<const double> x, double scale, double offset, std::span<double> out) {
  assert(out.size() >= x.size());
  const std::size_t n = x.size();
  const std::size_t body = n - n % kLanes;
  const __m256d s = _mm256_set1_pd(scale);
  const __m256d o = _mm256_set1_pd(offset);
  for (std::size_t i = 0; i < body; i += kLanes) {
    const __m256d v = _mm256_loadu_pd(x.data() + i);
    _mm256_storeu_pd(out.data() + i, _mm256_add_pd(_mm256_mul_pd(v, s), o));
  }
  for (std::size_t i = body; i < n; ++i) out[i] = x[i] * scale + offset;
}

void scale_avx2(std::span<double> x, double factor) {
  const std::size_t n = x.size();
  const std::size_t body = n - n % kLanes;
  const __m256d f = _mm256_set1_pd(factor);
  for (std::size_t i = 0; i < body; i += kLanes) {
    _mm256_storeu_pd(x.data() + i, _mm256_mul_pd(_mm256_loadu_pd(x.data() + i), f));
  }
  for (std::size_t i = body; i < n; ++i) x[i] *= factor;
}

void threshold_avx2(std::span<const double> u, std::span<const double> p, std::span<double> out) {
  assert(p.size() >= u.size() && out.size() >= u.size());
  const std::size_t n = u.size();
  const std::size_t body = n - n % kLanes;
  const __m256d one = _mm256_set1_pd(1.0);
  for (std::size_t i = 0; i < body; i += kLanes) {
    const __m256d lt =
        _mm256_cmp_pd(_mm256_loadu_pd(u.data() + i), _mm256_loadu_pd(p.data() + i), _CMP_LT_OQ);
    _mm256_storeu_pd(out.data() + i, _mm256_and_pd(lt, one));
  }
  for (std::size_t i = body; i < n; ++i) out[i] = u[i] < p[i] ? 1.0 : 0.0;
}

void envelope_avx2(std::span<const double> x, std::span<double> sum, std::span<double> lo,
                   std::span<double> hi) {
  assert(sum.size() >= x.size() && lo.size() >= x.size() && hi.size() >= x.size());
  const std::size_t n = x.size();
  const std::size_t body = n - n % kLanes;
  for (std::size_t i = 0; i < body; i += kLanes) {
    const __m256d v = _mm256_loadu_pd(x.data() + i);
    _mm256_storeu_pd(sum.data() + i, _mm256_add_pd(_mm256_loadu_pd(sum.data() + i), v));
    _mm256_storeu_pd(lo.data() + i, _mm256_min_pd(v, _mm256_loadu_pd(lo.data() + i)));
    _mm256_storeu_pd(hi.data() + i, _mm256_max_pd(v, _mm256_loadu_pd(hi.data() + i)));
  }
  for (std::size_t i = body; i < n; ++i) {
    sum[i] += x[i];
    lo[i] = x[i] < lo[i] ? x[i] : lo[i];
    hi[i] = x[i] > hi[i] ? x[i] : hi[i];
  }
}

}  // namespace

const Table& avx2_table_impl() {
  static const Table table{sum_max_avx2, affine_avx2, scale_avx2, threshold_avx2, envelope_avx2};
  return table;
}

}  // namespace duelbench::kernels
