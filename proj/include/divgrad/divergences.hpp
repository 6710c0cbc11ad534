#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "divgrad/deformed_log.hpp"
#include "divgrad/errors.hpp"
#include "divgrad/field.hpp"

namespace divgrad {

/// Divergence families implemented by this library.
enum class Family { alpha, beta, alpha_beta, gh, ag, ah, f, g, dual_kl };

/// Form of a divergence: the plain family form, the scale-invariant form
/// (nominal-factor product form where one exists, K*-normalized otherwise),
/// or the nominal-factor form of the dual Kullback-Leibler divergence.
enum class Variant { base, invariant, nominal };

/// Which printed decomposition produced a split; recorded so downstream
/// U/V selection never re-derives signs.
enum class CaseTag {
  none,
  alpha_1,   // 0 < alpha < 1
  alpha_2,   // alpha > 1
  alpha_3,   // alpha < 0
  beta_1,    // 0 < beta < 1
  beta_2,    // beta > 1
  beta_3,    // beta < 0
  ab_1,      // alpha > 0, beta > 1
  ab_2,      // alpha > 0, beta < 1, alpha + beta > 1
  ab_4,      // alpha > 0, beta < 1, alpha + beta < 1
  ab_1bis,   // alpha < 0, beta > 1, alpha + beta > 1
  ab_3bis,   // alpha < 0, beta > 1, alpha + beta < 1
  ab_4bis,   // alpha < 0, beta < 1
  mean_gh,
  mean_ag,
  mean_ah,
  inv_alpha_pos,
  inv_alpha_neg,
  inv_beta,
  inv_ab_pos,
  inv_ab_neg,
};

inline const char* to_string(CaseTag tag) {
  switch (tag) {
    case CaseTag::none: return "none";
    case CaseTag::alpha_1: return "alpha_1";
    case CaseTag::alpha_2: return "alpha_2";
    case CaseTag::alpha_3: return "alpha_3";
    case CaseTag::beta_1: return "beta_1";
    case CaseTag::beta_2: return "beta_2";
    case CaseTag::beta_3: return "beta_3";
    case CaseTag::ab_1: return "ab_1";
    case CaseTag::ab_2: return "ab_2";
    case CaseTag::ab_4: return "ab_4";
    case CaseTag::ab_1bis: return "ab_1bis";
    case CaseTag::ab_3bis: return "ab_3bis";
    case CaseTag::ab_4bis: return "ab_4bis";
    case CaseTag::mean_gh: return "mean_gh";
    case CaseTag::mean_ag: return "mean_ag";
    case CaseTag::mean_ah: return "mean_ah";
    case CaseTag::inv_alpha_pos: return "inv_alpha_pos";
    case CaseTag::inv_alpha_neg: return "inv_alpha_neg";
    case CaseTag::inv_beta: return "inv_beta";
    case CaseTag::inv_ab_pos: return "inv_ab_pos";
    case CaseTag::inv_ab_neg: return "inv_ab_neg";
  }
  return "unknown";
}

/// Family exponents; only the entries a family reads are meaningful.
struct DivergenceParams {
  double alpha = 0.5;
  double beta = 2.0;
};

/// Radius of the exclusion zones around the parameter values where the
/// 1/(alpha(alpha-1))-style prefactors blow up.  Limits are not substituted.
inline constexpr double kExclusionRadius = 1e-6;

namespace detail {

inline void check_excluded(double value, double zone_center, const char* what) {
  if (std::abs(value - zone_center) < kExclusionRadius) {
    throw ParamError(std::string(what) + " = " + std::to_string(value) +
                     " lies inside the exclusion zone around " +
                     std::to_string(zone_center));
  }
}

}  // namespace detail

/// A divergence written as A - B with A > 0, B > 0 and the per-component
/// partial derivatives of both terms with respect to q.
struct BaseSplit {
  double A = 0.0;
  double B = 0.0;
  std::vector<double> dA;
  std::vector<double> dB;
  CaseTag case_tag = CaseTag::none;

  double value() const { return A - B; }
};

/// Per-component weighted means and the ratios entering the F and G
/// divergences, with their q-derivatives.
struct MeanFields {
  std::vector<double> MA, MG, MH;
  std::vector<double> dMA, dMG, dMH;
  std::vector<double> Z;  // p_i / (alpha p_i + (1-alpha) q_i)
  std::vector<double> T;  // alpha p_i + (1-alpha) q_i
};

/// Alpha divergence split per the three sign cases of alpha.
inline BaseSplit alpha_split(const Field& p, const Field& q,
                             const DivergenceParams& dp) {
  check_same_shape(p, q);
  const double al = dp.alpha;
  detail::check_excluded(al, 0.0, "alpha");
  detail::check_excluded(al, 1.0, "alpha");

  const std::size_t n = p.size();
  double sp = 0.0, sq = 0.0, spq = 0.0;
  std::vector<double> t(n);  // p_j^alpha q_j^{-alpha}
  for (std::size_t j = 0; j < n; ++j) {
    t[j] = detail::ppow(p[j] / q[j], al);
    sp += p[j];
    sq += q[j];
    spq += t[j] * q[j];  // p^alpha q^{1-alpha}
  }

  BaseSplit s;
  s.dA.resize(n);
  s.dB.resize(n);
  if (al > 0.0 && al < 1.0) {
    s.case_tag = CaseTag::alpha_1;
    s.A = sp / (1.0 - al) + sq / al;
    s.B = spq / (al * (1.0 - al));
    for (std::size_t j = 0; j < n; ++j) {
      s.dA[j] = 1.0 / al;
      s.dB[j] = t[j] / al;
    }
  } else if (al > 1.0) {
    s.case_tag = CaseTag::alpha_2;
    s.A = sq / al + spq / (al * (al - 1.0));
    s.B = sp / (al - 1.0);
    for (std::size_t j = 0; j < n; ++j) {
      s.dA[j] = (1.0 - t[j]) / al;
      s.dB[j] = 0.0;
    }
  } else {  // al < 0
    s.case_tag = CaseTag::alpha_3;
    s.A = sp / (1.0 - al) + spq / (al * (al - 1.0));
    s.B = -sq / al;
    for (std::size_t j = 0; j < n; ++j) {
      s.dA[j] = -t[j] / al;
      s.dB[j] = -1.0 / al;
    }
  }
  return s;
}

/// Beta divergence split per the three sign cases of beta.
inline BaseSplit beta_split(const Field& p, const Field& q,
                            const DivergenceParams& dp) {
  check_same_shape(p, q);
  const double be = dp.beta;
  detail::check_excluded(be, 0.0, "beta");
  detail::check_excluded(be, 1.0, "beta");

  const std::size_t n = p.size();
  double spb = 0.0, spqb = 0.0, sqb = 0.0;
  std::vector<double> qb1(n), pqb2(n);  // q^{beta-1}, p q^{beta-2}
  for (std::size_t j = 0; j < n; ++j) {
    qb1[j] = detail::ppow(q[j], be - 1.0);
    pqb2[j] = p[j] * detail::ppow(q[j], be - 2.0);
    spb += detail::ppow(p[j], be);
    spqb += p[j] * qb1[j];
    sqb += qb1[j] * q[j];
  }

  BaseSplit s;
  s.dA.resize(n);
  s.dB.resize(n);
  if (be > 0.0 && be < 1.0) {
    s.case_tag = CaseTag::beta_1;
    s.A = spqb / (1.0 - be) + sqb / be;
    s.B = spb / (be * (1.0 - be));
    for (std::size_t j = 0; j < n; ++j) {
      s.dA[j] = qb1[j] - pqb2[j];
      s.dB[j] = 0.0;
    }
  } else if (be > 1.0) {
    s.case_tag = CaseTag::beta_2;
    s.A = spb / (be * (be - 1.0)) + sqb / be;
    s.B = spqb / (be - 1.0);
    for (std::size_t j = 0; j < n; ++j) {
      s.dA[j] = qb1[j];
      s.dB[j] = pqb2[j];
    }
  } else {  // be < 0
    s.case_tag = CaseTag::beta_3;
    s.A = spb / (be * (be - 1.0)) - spqb / (be - 1.0);
    s.B = -sqb / be;
    for (std::size_t j = 0; j < n; ++j) {
      s.dA[j] = -pqb2[j];
      s.dB[j] = -qb1[j];
    }
  }
  return s;
}

/// Alpha-beta divergence split.  The feasible sign patterns of
/// (alpha, beta - 1, alpha + beta - 1) select among six printed cases; the
/// two remaining patterns cannot occur.
inline BaseSplit alphabeta_split(const Field& p, const Field& q,
                                 const DivergenceParams& dp) {
  check_same_shape(p, q);
  const double al = dp.alpha;
  const double be = dp.beta;
  detail::check_excluded(al, 0.0, "alpha");
  detail::check_excluded(be, 1.0, "beta");
  detail::check_excluded(al + be, 1.0, "alpha + beta");

  const std::size_t n = p.size();
  const double ab1 = al + be - 1.0;
  double spab = 0.0, sqab = 0.0, spq = 0.0;
  std::vector<double> m(n), nn(n);  // q^{alpha+beta-2}, p^alpha q^{beta-2}
  for (std::size_t j = 0; j < n; ++j) {
    m[j] = detail::ppow(q[j], ab1 - 1.0);
    nn[j] = detail::ppow(p[j], al) * detail::ppow(q[j], be - 2.0);
    spab += detail::ppow(p[j], ab1);
    sqab += m[j] * q[j];
    spq += nn[j] * q[j];  // p^alpha q^{beta-1}
  }

  const bool sa = al > 0.0;
  const bool sb = be > 1.0;
  const bool sc = ab1 > 0.0;

  BaseSplit s;
  s.dA.resize(n);
  s.dB.resize(n);
  if (sa && sb && sc) {
    s.case_tag = CaseTag::ab_1;
  } else if (sa && !sb && sc) {
    s.case_tag = CaseTag::ab_2;
  } else if (sa && sb && !sc) {
    throw InfeasibleCase("alpha-beta case *3 cannot occur");
  } else if (sa && !sb && !sc) {
    s.case_tag = CaseTag::ab_4;
  } else if (!sa && !sb && sc) {
    throw InfeasibleCase("alpha-beta case *2bis cannot occur");
  } else if (!sa && sb && sc) {
    s.case_tag = CaseTag::ab_1bis;
  } else if (!sa && sb && !sc) {
    s.case_tag = CaseTag::ab_3bis;
  } else {
    s.case_tag = CaseTag::ab_4bis;
  }

  switch (s.case_tag) {
    case CaseTag::ab_1:
    case CaseTag::ab_4bis:
      s.A = spab / ((be - 1.0) * ab1) + sqab / (al * ab1);
      s.B = spq / (al * (be - 1.0));
      for (std::size_t j = 0; j < n; ++j) {
        s.dA[j] = m[j] / al;
        s.dB[j] = nn[j] / al;
      }
      break;
    case CaseTag::ab_2:
    case CaseTag::ab_3bis:
      s.A = sqab / (al * ab1) + spq / (al * (1.0 - be));
      s.B = spab / ((1.0 - be) * ab1);
      for (std::size_t j = 0; j < n; ++j) {
        s.dA[j] = (m[j] - nn[j]) / al;
        s.dB[j] = 0.0;
      }
      break;
    case CaseTag::ab_4:
    case CaseTag::ab_1bis:
      s.A = spab / ((be - 1.0) * ab1) - spq / (al * (be - 1.0));
      s.B = sqab / (al * (1.0 - al - be));
      for (std::size_t j = 0; j < n; ++j) {
        s.dA[j] = -nn[j] / al;
        s.dB[j] = -m[j] / al;
      }
      break;
    default:
      break;  // unreachable
  }
  return s;
}

/// Per-component weighted arithmetic, geometric and harmonic means of (p, q)
/// with weights (alpha, 1-alpha), their q-derivatives, and the F/G ratios.
inline MeanFields mean_fields(const Field& p, const Field& q, double alpha) {
  check_same_shape(p, q);
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw ParamError("mean divergences require 0 <= alpha <= 1, got " +
                     std::to_string(alpha));
  }
  const std::size_t n = p.size();
  MeanFields mf;
  mf.MA.resize(n);
  mf.MG.resize(n);
  mf.MH.resize(n);
  mf.dMA.resize(n);
  mf.dMG.resize(n);
  mf.dMH.resize(n);
  mf.Z.resize(n);
  mf.T.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double hden = (1.0 - alpha) * p[j] + alpha * q[j];
    mf.MA[j] = alpha * p[j] + (1.0 - alpha) * q[j];
    mf.MG[j] = detail::ppow(p[j], alpha) * detail::ppow(q[j], 1.0 - alpha);
    mf.MH[j] = p[j] * q[j] / hden;
    mf.dMA[j] = 1.0 - alpha;
    mf.dMG[j] = (1.0 - alpha) * detail::ppow(p[j] / q[j], alpha);
    mf.dMH[j] = (1.0 - alpha) * p[j] * p[j] / (hden * hden);
    mf.T[j] = mf.MA[j];
    mf.Z[j] = p[j] / mf.MA[j];
  }
  return mf;
}

enum class MeanKind { gh, ag, ah };

/// Divergences between means as splits: GH = MG - MH, AH = MA - MH, and the
/// AG divergence, which equals the alpha divergence scaled by alpha(1-alpha)
/// and is produced by delegation.
inline BaseSplit mean_split(MeanKind kind, const Field& p, const Field& q,
                            double alpha) {
  if (kind == MeanKind::ag) {
    DivergenceParams dp;
    dp.alpha = alpha;
    BaseSplit s = alpha_split(p, q, dp);
    const double scale = alpha * (1.0 - alpha);
    s.A *= scale;
    s.B *= scale;
    for (double& d : s.dA) d *= scale;
    for (double& d : s.dB) d *= scale;
    s.case_tag = CaseTag::mean_ag;
    return s;
  }

  const MeanFields mf = mean_fields(p, q, alpha);
  const std::size_t n = p.size();
  BaseSplit s;
  s.A = 0.0;
  s.B = 0.0;
  s.dA.resize(n);
  s.dB.resize(n);
  const auto& big = (kind == MeanKind::gh) ? mf.MG : mf.MA;
  const auto& dbig = (kind == MeanKind::gh) ? mf.dMG : mf.dMA;
  for (std::size_t j = 0; j < n; ++j) {
    s.A += big[j];
    s.B += mf.MH[j];
    s.dA[j] = dbig[j];
    s.dB[j] = mf.dMH[j];
  }
  s.case_tag = (kind == MeanKind::gh) ? CaseTag::mean_gh : CaseTag::mean_ah;
  return s;
}

/// F divergence: sum_i p_i ln Z_i + (1-alpha)(q_i - p_i), with
/// Z_i = p_i / (alpha p_i + (1-alpha) q_i).
inline std::pair<double, MeanFields> f_divergence(const Field& p,
                                                  const Field& q,
                                                  double alpha) {
  if (!(alpha >= 0.0 && alpha < 1.0)) {
    throw ParamError("F divergence requires 0 <= alpha < 1, got " +
                     std::to_string(alpha));
  }
  MeanFields mf = mean_fields(p, q, alpha);
  double value = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    value += p[j] * std::log(mf.Z[j]) + (1.0 - alpha) * (q[j] - p[j]);
  }
  return {value, std::move(mf)};
}

/// G divergence: sum_i T_i ln(T_i / p_i) + (1-alpha)(p_i - q_i), with
/// T_i = alpha p_i + (1-alpha) q_i.
inline std::pair<double, MeanFields> g_divergence(const Field& p,
                                                  const Field& q,
                                                  double alpha) {
  if (!(alpha >= 0.0 && alpha < 1.0)) {
    throw ParamError("G divergence requires 0 <= alpha < 1, got " +
                     std::to_string(alpha));
  }
  MeanFields mf = mean_fields(p, q, alpha);
  double value = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    value += mf.T[j] * std::log(mf.T[j] / p[j]) +
             (1.0 - alpha) * (p[j] - q[j]);
  }
  return {value, std::move(mf)};
}

/// Dual Kullback-Leibler divergence KL(q||p) = sum q ln(q/p) + p - q.
inline double dual_kl(const Field& p, const Field& q) {
  check_same_shape(p, q);
  double value = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    value += q[j] * std::log(q[j] / p[j]) + p[j] - q[j];
  }
  return value;
}

/// Two-parameter generalization of the divergences between means:
/// D^s_r = [S1^e - S2^e] / (s-1) with S1 = sum MG^{1-r} MA^r, S2 = sum MA
/// and e = (s-1)/(r-1).
inline double taneja_rs(const Field& p, const Field& q, double alpha, double r,
                        double s) {
  detail::check_excluded(r, 1.0, "r");
  detail::check_excluded(s, 1.0, "s");
  const MeanFields mf = mean_fields(p, q, alpha);
  double s1 = 0.0, s2 = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    s1 += detail::ppow(mf.MG[j], 1.0 - r) * detail::ppow(mf.MA[j], r);
    s2 += mf.MA[j];
  }
  const double e = (s - 1.0) / (r - 1.0);
  return (detail::ppow(s1, e) - detail::ppow(s2, e)) / (s - 1.0);
}

}  // namespace divgrad
