#pragma once

// 32-bin deconvolution fixture: a column-normalized Gaussian blur matrix, a
// seeded two-bump source, exact data y = H x_true, and a flat feasible start.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "divgrad/field.hpp"
#include "divgrad/solver.hpp"

namespace fixture {

inline constexpr std::size_t kBins = 32;
inline constexpr std::uint64_t kSeed = 42;

inline std::vector<double> blur_matrix() {
  constexpr double sigma = 1.5;
  std::vector<double> h(kBins * kBins);
  for (std::size_t i = 0; i < kBins; ++i) {
    for (std::size_t j = 0; j < kBins; ++j) {
      const double d = static_cast<double>(i) - static_cast<double>(j);
      h[i * kBins + j] = std::exp(-d * d / (2.0 * sigma * sigma));
    }
  }
  // Normalize columns so the blur conserves total intensity.
  for (std::size_t j = 0; j < kBins; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < kBins; ++i) s += h[i * kBins + j];
    for (std::size_t i = 0; i < kBins; ++i) h[i * kBins + j] /= s;
  }
  return h;
}

inline std::vector<double> true_source() {
  std::mt19937_64 rng(kSeed);
  std::uniform_real_distribution<double> jitter(0.0, 0.5);
  std::vector<double> x(kBins);
  for (std::size_t j = 0; j < kBins; ++j) {
    const double b1 = 4.0 * std::exp(-(j - 9.0) * (j - 9.0) / 6.0);
    const double b2 = 2.5 * std::exp(-(j - 22.0) * (j - 22.0) / 14.0);
    x[j] = 0.2 + b1 + b2 + jitter(rng);
  }
  return x;
}

inline divgrad::LinearModel model() {
  const std::vector<double> x = true_source();
  std::vector<double> h = blur_matrix();
  std::vector<double> y(kBins, 0.0);
  for (std::size_t i = 0; i < kBins; ++i) {
    for (std::size_t j = 0; j < kBins; ++j) y[i] += h[i * kBins + j] * x[j];
  }
  return divgrad::LinearModel(kBins, kBins, std::move(h),
                              divgrad::Field(std::move(y)));
}

/// Flat start with the same total mass as the data.
inline std::vector<double> flat_start(const divgrad::LinearModel& m) {
  double sy = 0.0;
  for (double v : m.y) sy += v;
  return std::vector<double>(m.cols, sy / static_cast<double>(m.cols));
}

}  // namespace fixture
