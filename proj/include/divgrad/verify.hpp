#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "divgrad/errors.hpp"
#include "divgrad/field.hpp"

namespace divgrad {

/// Finite-difference settings: central scheme with relative step h * q_j.
struct FDSpec {
  double h = 1e-6;
};

/// Central-difference gradient of a field-to-real functor at q.
/// The independent oracle used by the identity checks and the test suites.
template <typename Fn>
std::vector<double> fd_gradient(Fn&& f, const Field& q, FDSpec spec = {}) {
  if (!(spec.h > 0.0)) throw ParamError("fd_gradient: step must be positive");
  std::vector<double> work = q.values();
  std::vector<double> grad(work.size());
  for (std::size_t j = 0; j < work.size(); ++j) {
    const double qj = work[j];
    const double h = spec.h * qj;
    if (!(qj - h > 0.0)) {
      throw DomainError("fd_gradient: perturbation leaves the positive domain");
    }
    work[j] = qj + h;
    const double fp = f(Field(work));
    work[j] = qj - h;
    const double fm = f(Field(work));
    work[j] = qj;
    grad[j] = (fp - fm) / (2.0 * h);
  }
  return grad;
}

/// Argmin of a unimodal scalar function over [lo, hi]: coarse grid
/// bracketing followed by golden-section refinement to 1e-8 relative width.
/// Throws BracketError when no interior minimum exists in the bracket.
template <typename Fn>
double scan_minimize(Fn&& f, double lo, double hi) {
  if (!(hi > lo)) throw ParamError("scan_minimize: empty bracket");
  constexpr int kGridPoints = 192;
  const bool geometric = lo > 0.0;

  std::vector<double> xs(kGridPoints);
  for (int i = 0; i < kGridPoints; ++i) {
    const double u = static_cast<double>(i) / (kGridPoints - 1);
    xs[i] = geometric ? lo * std::exp(u * std::log(hi / lo))
                      : lo + u * (hi - lo);
  }
  int best = 0;
  double fbest = f(xs[0]);
  for (int i = 1; i < kGridPoints; ++i) {
    const double fi = f(xs[i]);
    if (fi < fbest) {
      fbest = fi;
      best = i;
    }
  }
  if (best == 0 || best == kGridPoints - 1) {
    throw BracketError("scan_minimize: no interior minimum in the bracket");
  }

  double a = xs[best - 1];
  double b = xs[best + 1];
  constexpr double kInvPhi = 0.6180339887498949;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int it = 0; it < 200; ++it) {
    if (b - a <= 1e-8 * (std::abs(a) + std::abs(b)) * 0.5 + 1e-300) break;
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace divgrad
