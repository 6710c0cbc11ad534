#pragma once

// Independent oracles for the test suites: each divergence evaluated
// directly from its displayed formula, bypassing the split/decomposition
// machinery under test.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "divgrad/field.hpp"

namespace oracle {

inline double alpha_value(const divgrad::Field& p, const divgrad::Field& q,
                          double al) {
  double spq = 0.0, sp = 0.0, sq = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    spq += std::pow(p[i], al) * std::pow(q[i], 1.0 - al);
    sp += p[i];
    sq += q[i];
  }
  return (spq - (al * sp + (1.0 - al) * sq)) / (al * (al - 1.0));
}

inline double beta_value(const divgrad::Field& p, const divgrad::Field& q,
                         double be) {
  double v = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    v += std::pow(p[i], be) / (be * (be - 1.0)) -
         p[i] * std::pow(q[i], be - 1.0) / (be - 1.0) +
         std::pow(q[i], be) / be;
  }
  return v;
}

inline double alphabeta_value(const divgrad::Field& p, const divgrad::Field& q,
                              double al, double be) {
  const double ab1 = al + be - 1.0;
  double v = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    v += std::pow(p[i], ab1) / ((be - 1.0) * ab1) +
         std::pow(q[i], ab1) / (al * ab1) -
         std::pow(p[i], al) * std::pow(q[i], be - 1.0) / (al * (be - 1.0));
  }
  return v;
}

inline double gh_value(const divgrad::Field& p, const divgrad::Field& q,
                       double al) {
  double v = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    v += std::pow(p[i], al) * std::pow(q[i], 1.0 - al) -
         p[i] * q[i] / ((1.0 - al) * p[i] + al * q[i]);
  }
  return v;
}

inline double ag_value(const divgrad::Field& p, const divgrad::Field& q,
                       double al) {
  double v = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    v += al * p[i] + (1.0 - al) * q[i] -
         std::pow(p[i], al) * std::pow(q[i], 1.0 - al);
  }
  return v;
}

inline double ah_value(const divgrad::Field& p, const divgrad::Field& q,
                       double al) {
  double v = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    v += al * p[i] + (1.0 - al) * q[i] -
         p[i] * q[i] / ((1.0 - al) * p[i] + al * q[i]);
  }
  return v;
}

inline double f_value(const divgrad::Field& p, const divgrad::Field& q,
                      double al) {
  double v = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    v += p[i] * std::log(p[i] / (al * p[i] + (1.0 - al) * q[i])) +
         (1.0 - al) * (q[i] - p[i]);
  }
  return v;
}

inline double g_value(const divgrad::Field& p, const divgrad::Field& q,
                      double al) {
  double v = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double t = al * p[i] + (1.0 - al) * q[i];
    v += t * std::log(t / p[i]) + (1.0 - al) * (p[i] - q[i]);
  }
  return v;
}

inline double dual_kl_value(const divgrad::Field& p, const divgrad::Field& q) {
  double v = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    v += q[i] * std::log(q[i] / p[i]) + p[i] - q[i];
  }
  return v;
}

inline double taneja_value(const divgrad::Field& p, const divgrad::Field& q,
                           double al, double r, double s) {
  double s1 = 0.0, s2 = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double ma = al * p[i] + (1.0 - al) * q[i];
    const double mg = std::pow(p[i], al) * std::pow(q[i], 1.0 - al);
    s1 += std::pow(mg, 1.0 - r) * std::pow(ma, r);
    s2 += ma;
  }
  const double e = (s - 1.0) / (r - 1.0);
  return (std::pow(s1, e) - std::pow(s2, e)) / (s - 1.0);
}

/// Deterministic positive field with components in [lo, hi].
inline divgrad::Field random_field(std::size_t n, std::uint64_t seed,
                                   double lo = 0.1, double hi = 10.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> v(n);
  for (double& x : v) x = dist(rng);
  return divgrad::Field(std::move(v));
}

inline divgrad::Field scaled(const divgrad::Field& f, double lambda) {
  std::vector<double> v = f.values();
  for (double& x : v) x *= lambda;
  return divgrad::Field(std::move(v));
}

/// max_j |a_j - b_j| / (1 + max_j |a_j|).
inline double max_rel_diff(const std::vector<double>& a,
                           const std::vector<double>& b) {
  double scale = 1.0, worst = 0.0;
  for (double v : a) scale = std::max(scale, std::abs(v));
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a[i] - b[i]));
  }
  return worst / scale;
}

}  // namespace oracle
