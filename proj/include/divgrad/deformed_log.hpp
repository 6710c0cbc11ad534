#pragma once

#include <cmath>
#include <string>

#include "divgrad/errors.hpp"

namespace divgrad {

namespace detail {

/// x^e for strictly positive x, as a single exp/log branch.
inline double ppow(double x, double e) { return std::exp(e * std::log(x)); }

}  // namespace detail

/// Parameters (a, b) of the two-parameter deformed logarithm
/// Log_ab(x) = (x^{a-1} - x^{b-1}) / (a - b).
///
/// Admissible ranges are 0 < a <= 1 <= b or 0 < b <= 1 <= a with a != b.
/// The a = b = 1 limit (the natural logarithm) is an explicit variant; the
/// quotient form is not evaluable there.
struct LogParams {
  double a = 1.0;
  double b = 1.0;
  bool natural = true;

  static LogParams natural_log() { return LogParams{}; }

  static LogParams deformed(double a, double b) {
    if (!std::isfinite(a) || !std::isfinite(b)) {
      throw InadmissibleParams("deformed log: parameters must be finite");
    }
    if (std::abs(a - b) < 1e-12) {
      throw InadmissibleParams(
          "deformed log: |a - b| < 1e-12; use LogParams::natural_log() for "
          "the a = b = 1 limit");
    }
    const bool ok = (a > 0.0 && a <= 1.0 && b >= 1.0) ||
                    (b > 0.0 && b <= 1.0 && a >= 1.0);
    if (!ok) {
      throw InadmissibleParams(
          "deformed log: (a, b) = (" + std::to_string(a) + ", " +
          std::to_string(b) + ") violates 0 < a <= 1 <= b or 0 < b <= 1 <= a");
    }
    LogParams lp;
    lp.a = a;
    lp.b = b;
    lp.natural = false;
    return lp;
  }

  /// (a-1)/(a-b), nonnegative on the admissible domain.
  double weight_a() const { return (a - 1.0) / (a - b); }
  /// (b-1)/(a-b), nonpositive on the admissible domain.
  double weight_b() const { return (b - 1.0) / (a - b); }
};

/// Named entropy families whose deformed logarithms are special cases of Log_ab.
enum class EntropyFamily { shannon, tsallis, kaniadakis, abe, gamma, kls };

/// Parameters of a named family; only the fields relevant to `family` are read.
struct FamilyParams {
  EntropyFamily family = EntropyFamily::shannon;
  double t = 0.0;      // Tsallis
  double kappa = 0.0;  // Kaniadakis, KLS
  double z = 0.0;      // Abe
  double gamma = 0.0;  // gamma family
  double r = 0.0;      // KLS

  static FamilyParams shannon() { return {}; }
  static FamilyParams tsallis(double t) {
    FamilyParams fp;
    fp.family = EntropyFamily::tsallis;
    fp.t = t;
    return fp;
  }
  static FamilyParams kaniadakis(double kappa) {
    FamilyParams fp;
    fp.family = EntropyFamily::kaniadakis;
    fp.kappa = kappa;
    return fp;
  }
  static FamilyParams abe(double z) {
    FamilyParams fp;
    fp.family = EntropyFamily::abe;
    fp.z = z;
    return fp;
  }
  static FamilyParams gamma_family(double gamma) {
    FamilyParams fp;
    fp.family = EntropyFamily::gamma;
    fp.gamma = gamma;
    return fp;
  }
  static FamilyParams kls(double r, double kappa) {
    FamilyParams fp;
    fp.family = EntropyFamily::kls;
    fp.r = r;
    fp.kappa = kappa;
    return fp;
  }
};

/// Map a named family onto (a, b).  Throws InadmissibleParams when the
/// resulting pair violates the admissibility conditions.
inline LogParams make_params(const FamilyParams& fp) {
  switch (fp.family) {
    case EntropyFamily::shannon:
      return LogParams::natural_log();
    case EntropyFamily::tsallis:
      return LogParams::deformed(fp.t, 1.0);
    case EntropyFamily::kaniadakis:
      return LogParams::deformed(1.0 + fp.kappa, 1.0 - fp.kappa);
    case EntropyFamily::abe:
      if (fp.z <= 0.0) {
        throw InadmissibleParams("Abe family: z must be > 0");
      }
      return LogParams::deformed(fp.z, 1.0 / fp.z);
    case EntropyFamily::gamma:
      return LogParams::deformed(2.0 * fp.gamma + 1.0, 1.0 - fp.gamma);
    case EntropyFamily::kls:
      return LogParams::deformed(1.0 + fp.r + fp.kappa, 1.0 + fp.r - fp.kappa);
  }
  throw InadmissibleParams("unknown entropy family");
}

/// Deformed logarithm Log_ab(x); the natural variant returns ln x.
inline double log_d(double x, const LogParams& lp) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("log_d: argument must be strictly positive, got " +
                      std::to_string(x));
  }
  if (lp.natural) return std::log(x);
  return (detail::ppow(x, lp.a - 1.0) - detail::ppow(x, lp.b - 1.0)) /
         (lp.a - lp.b);
}

/// Derivative d/ds Log_ab(s); strictly positive on the admissible domain.
/// This is the bracket weight applied to every split term.
inline double dlog_d(double s, const LogParams& lp) {
  if (!(s > 0.0) || !std::isfinite(s)) {
    throw DomainError("dlog_d: argument must be strictly positive, got " +
                      std::to_string(s));
  }
  if (lp.natural) return 1.0 / s;
  return lp.weight_a() * detail::ppow(s, lp.a - 2.0) -
         lp.weight_b() * detail::ppow(s, lp.b - 2.0);
}

}  // namespace divgrad
