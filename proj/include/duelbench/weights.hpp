#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace duelbench {

// Positive exponential weights with overflow control.
//
// The mixture distribution depends on the weights only through w / sum(w).
// Whenever the largest weight leaves [kLowMark, kHighMark] every weight is
// multiplied by an exact power of two that brings the maximum into
// [0.5, 1). Power-of-two scaling is exact in binary floating point, so the
// distribution computed before and after renormalization is bit-identical.
//
// A weight is never allowed to fall below max(w) * kFloorRatio; such a weight
// carries no probability mass at double precision and the floor keeps it
// positive and normal.
class WeightVector {
 public:
  static constexpr double kHighMark = 1e100;
  static constexpr double kLowMark = 1e-100;
  static constexpr double kFloorRatio = 0x1.0p-600;

  WeightVector() = default;
  explicit WeightVector(std::size_t k) : w_(k, 1.0), max_(1.0) {}
  explicit WeightVector(std::vector<double> w);

  std::size_t size() const { return w_.size(); }
  std::span<const double> values() const { return w_; }
  double operator[](std::size_t i) const { return w_[i]; }
  double max() const { return max_; }

  // p[i] = (1 - gamma) * w[i] / sum(w) + gamma / K
  void mixture(double gamma, std::span<double> p) const;
  std::vector<double> mixture(double gamma) const;

  // w[i] *= factor, then floor and renormalize as needed.
  void multiply(std::size_t i, double factor);

  // Applies the renormalization rule regardless of where the maximum sits.
  void renormalize();

 private:
  void refresh_max();
  void maybe_renormalize();

  std::vector<double> w_;
  double max_ = 0.0;
};

}  // namespace duelbench
