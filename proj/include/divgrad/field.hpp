#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "divgrad/errors.hpp"

namespace divgrad {

/// Strictly positive, finite data vector: the common argument of every
/// divergence (measurements p or model q).
class Field {
 public:
  explicit Field(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) {
      throw ShapeError("Field: need at least one component");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (!(values_[i] > 0.0) || !std::isfinite(values_[i])) {
        throw DomainError("Field: component " + std::to_string(i) +
                          " is not strictly positive and finite (value " +
                          std::to_string(values_[i]) + ")");
      }
    }
  }

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  const std::vector<double>& values() const { return values_; }

  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

  /// Left-to-right accumulation; the canonical summation order used everywhere.
  double sum() const {
    double s = 0.0;
    for (double v : values_) s += v;
    return s;
  }

 private:
  std::vector<double> values_;
};

inline void check_same_shape(const Field& p, const Field& q) {
  if (p.size() != q.size()) {
    throw ShapeError("fields have different lengths: " +
                     std::to_string(p.size()) + " vs " +
                     std::to_string(q.size()));
  }
}

}  // namespace divgrad
