#include "duelbench/weights.hpp"

#include <cmath>

#include "duelbench/error.hpp"
#include "duelbench/kernels.hpp"

namespace duelbench {

WeightVector::WeightVector(std::vector<double> w) : w_(std::move(w)) {
  for (double v : w_) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw Error(Errc::invalid_argument, "weights must be positive and finite");
    }
  }
  refresh_max();
  maybe_renormalize();
}

void WeightVector::mixture(double gamma, std::span<double> p) const {
  const double total = kernels::sum_max(w_).sum;
  const double k = static_cast<double>(w_.size());
  kernels::affine(w_, (1.0 - gamma) / total, gamma / k, p);
}

std::vector<double> WeightVector::mixture(double gamma) const {
  std::vector<double> p(w_.size());
  mixture(gamma, p);
  return p;
}

void WeightVector::multiply(std::size_t i, double factor) {
  double v = w_[i] * factor;
  if (v > max_) {
    max_ = v;
  } else if (factor < 1.0 && w_[i] == max_) {
    w_[i] = v;
    refresh_max();
  }
  const double floor = max_ * kFloorRatio;
  w_[i] = v < floor ? floor : v;
  maybe_renormalize();
}

void WeightVector::refresh_max() { max_ = w_.empty() ? 0.0 : kernels::sum_max(w_).max; }

void WeightVector::maybe_renormalize() {
  if (max_ > kHighMark || max_ < kLowMark) renormalize();
}

void WeightVector::renormalize() {
  if (w_.empty()) return;
  int exponent = 0;
  std::frexp(max_, &exponent);
  kernels::scale(w_, std::ldexp(1.0, -exponent));
  max_ = std::ldexp(max_, -exponent);
  // Re-apply the floor relative to the new maximum.
  const double floor = max_ * kFloorRatio;
  for (double& v : w_) v = v < floor ? floor : v;
}

}  // namespace duelbench
