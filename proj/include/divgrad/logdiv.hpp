#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "divgrad/deformed_log.hpp"
#include "divgrad/divergences.hpp"
#include "divgrad/errors.hpp"
#include "divgrad/field.hpp"
#include "divgrad/invariance.hpp"

namespace divgrad {

/// Gradient of a (possibly log-transformed) divergence with respect to q,
/// together with the decomposition of its opposite into positive parts:
/// U - V = -grad.  `strict` is false only for the natural-logarithm forms
/// whose decomposition admits zero components (dual KL and its G relative).
struct GradientDecomposition {
  std::vector<double> grad;
  std::vector<double> U;
  std::vector<double> V;
  bool strict = true;
  CaseTag case_tag = CaseTag::none;
};

/// log_d(A) - log_d(B).
inline double ld_value(const BaseSplit& s, const LogParams& lp) {
  return log_d(s.A, lp) - log_d(s.B, lp);
}

/// T (log_d(A) - log_d(X Y)).  The product X Y is an indissociable block;
/// the deformed logarithm is never distributed over it.
inline double ld_value(const ProductSplit& s, const LogParams& lp) {
  return s.T * (log_d(s.A, lp) - log_d(s.X * s.Y, lp));
}

namespace detail {

/// log_d(s) + s dlog_d(s) = a/(a-b) s^{a-1} - b/(a-b) s^{b-1}; the weight of
/// the G and dual-KL gradients.  Natural limit: 1 + ln s.
inline double log_bracket(double s, const LogParams& lp) {
  if (lp.natural) return 1.0 + std::log(s);
  return lp.a / (lp.a - lp.b) * ppow(s, lp.a - 1.0) -
         lp.b / (lp.a - lp.b) * ppow(s, lp.b - 1.0);
}

/// s^2 dlog_d(s) = (a-1)/(a-b) s^a - (b-1)/(a-b) s^b; the weight of the F
/// gradient.  Natural limit: s.
inline double sq_weight(double s, const LogParams& lp) {
  return s * s * dlog_d(s, lp);
}

inline GradientDecomposition make_decomposition(std::size_t n, CaseTag tag) {
  GradientDecomposition gd;
  gd.grad.resize(n);
  gd.U.resize(n);
  gd.V.resize(n);
  gd.case_tag = tag;
  return gd;
}

inline GradientDecomposition split_family_gradient(Family family,
                                                   const Field& p,
                                                   const Field& q,
                                                   const DivergenceParams& dp,
                                                   const LogParams& lp) {
  BaseSplit s;
  switch (family) {
    case Family::alpha: s = alpha_split(p, q, dp); break;
    case Family::beta: s = beta_split(p, q, dp); break;
    case Family::alpha_beta: s = alphabeta_split(p, q, dp); break;
    case Family::gh: s = mean_split(MeanKind::gh, p, q, dp.alpha); break;
    case Family::ag: s = mean_split(MeanKind::ag, p, q, dp.alpha); break;
    case Family::ah: s = mean_split(MeanKind::ah, p, q, dp.alpha); break;
    default:
      throw ParamError("split_family_gradient: not a split family");
  }

  const std::size_t n = p.size();
  const double za = dlog_d(s.A, lp);
  const double zb = dlog_d(s.B, lp);
  GradientDecomposition gd = make_decomposition(n, s.case_tag);
  for (std::size_t j = 0; j < n; ++j) {
    gd.grad[j] = za * s.dA[j] - zb * s.dB[j];
  }

  const double al = dp.alpha;
  const double be = dp.beta;
  switch (s.case_tag) {
    case CaseTag::alpha_1:
      for (std::size_t j = 0; j < n; ++j) {
        const double t = ppow(p[j] / q[j], al);
        gd.U[j] = zb * t / al;
        gd.V[j] = za / al;
      }
      break;
    case CaseTag::alpha_2:
      for (std::size_t j = 0; j < n; ++j) {
        const double t = ppow(p[j] / q[j], al);
        gd.U[j] = za * t / al;
        gd.V[j] = za / al;
      }
      break;
    case CaseTag::alpha_3:
      for (std::size_t j = 0; j < n; ++j) {
        const double t = ppow(p[j] / q[j], al);
        gd.U[j] = -zb / al;
        gd.V[j] = -za * t / al;
      }
      break;
    case CaseTag::beta_1:
    case CaseTag::beta_2:
    case CaseTag::beta_3:
      for (std::size_t j = 0; j < n; ++j) {
        const double s1 = p[j] * ppow(q[j], be - 2.0);
        const double s2 = ppow(q[j], be - 1.0);
        if (s.case_tag == CaseTag::beta_1) {
          gd.U[j] = za * s1;
          gd.V[j] = za * s2;
        } else if (s.case_tag == CaseTag::beta_2) {
          gd.U[j] = zb * s1;
          gd.V[j] = za * s2;
        } else {
          gd.U[j] = za * s1;
          gd.V[j] = zb * s2;
        }
      }
      break;
    case CaseTag::ab_1:
    case CaseTag::ab_2:
    case CaseTag::ab_4:
    case CaseTag::ab_1bis:
    case CaseTag::ab_3bis:
    case CaseTag::ab_4bis:
      for (std::size_t j = 0; j < n; ++j) {
        const double nn = ppow(p[j], al) * ppow(q[j], be - 2.0);
        const double m = ppow(q[j], al + be - 2.0);
        switch (s.case_tag) {
          case CaseTag::ab_1:
            gd.U[j] = zb * nn / al;
            gd.V[j] = za * m / al;
            break;
          case CaseTag::ab_2:
            gd.U[j] = za * nn / al;
            gd.V[j] = za * m / al;
            break;
          case CaseTag::ab_4:
            gd.U[j] = za * nn / al;
            gd.V[j] = zb * m / al;
            break;
          case CaseTag::ab_1bis:
            gd.U[j] = -zb * m / al;
            gd.V[j] = -za * nn / al;
            break;
          case CaseTag::ab_3bis:
            // As printed, U and V coincide; V carries p^alpha q^{beta-2} so
            // that U - V = -grad holds (the alpha < 0 analog of case *2).
            gd.U[j] = -za * m / al;
            gd.V[j] = -za * nn / al;
            break;
          default:  // ab_4bis
            gd.U[j] = -za * m / al;
            gd.V[j] = -zb * nn / al;
            break;
        }
      }
      break;
    case CaseTag::mean_gh:
    case CaseTag::mean_ag:
    case CaseTag::mean_ah:
      for (std::size_t j = 0; j < n; ++j) {
        gd.U[j] = zb * s.dB[j];
        gd.V[j] = za * s.dA[j];
      }
      break;
    default:
      throw ParamError("split_family_gradient: unexpected case tag");
  }
  return gd;
}

inline GradientDecomposition invariant_product_gradient(
    Family family, const Field& p, const Field& q, const DivergenceParams& dp,
    const LogParams& lp) {
  const ProductSplit s = invariant_split(family, p, q, dp);
  const std::size_t n = p.size();
  const double z = dlog_d(s.X * s.Y, lp);
  GradientDecomposition gd = make_decomposition(n, s.case_tag);
  for (std::size_t j = 0; j < n; ++j) {
    gd.grad[j] = -s.T * z * (s.X * s.dY[j] + s.Y * s.dX[j]);
  }

  const double al = dp.alpha;
  const double be = dp.beta;
  switch (family) {
    case Family::alpha: {
      double sx = 0.0, sq = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        sx += ppow(p[j], al) * ppow(q[j], 1.0 - al);
        sq += q[j];
      }
      const double r = sx / sq;
      const double rh = ppow(r, 1.0 / al);
      const double rl = ppow(r, 1.0 / al - 1.0);
      for (std::size_t j = 0; j < n; ++j) {
        const double t = ppow(p[j] / q[j], al);
        if (al > 0.0) {
          gd.U[j] = z * rl * t / al;
          gd.V[j] = z * rh / al;
        } else {
          gd.U[j] = -z * rh / al;
          gd.V[j] = -z * rl * t / al;
        }
      }
      break;
    }
    case Family::beta: {
      double sx = 0.0, sy = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const double qb1 = ppow(q[j], be - 1.0);
        sx += p[j] * qb1;
        sy += q[j] * qb1;
      }
      const double r = sx / sy;
      const double rb = ppow(r, be);
      const double rb1 = ppow(r, be - 1.0);
      for (std::size_t j = 0; j < n; ++j) {
        gd.U[j] = z * rb1 * p[j] * ppow(q[j], be - 2.0);
        gd.V[j] = z * rb * ppow(q[j], be - 1.0);
      }
      break;
    }
    case Family::alpha_beta: {
      const double ab1 = al + be - 1.0;
      double sx = 0.0, sy = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        sx += ppow(p[j], al) * ppow(q[j], be - 1.0);
        sy += ppow(q[j], ab1);
      }
      const double r = sx / sy;
      const double rm = ppow(r, ab1 / al);
      const double rn = ppow(r, (be - 1.0) / al);
      for (std::size_t j = 0; j < n; ++j) {
        const double mm = rm * ppow(q[j], ab1 - 1.0);
        const double nn = rn * ppow(p[j], al) * ppow(q[j], be - 2.0);
        if (al > 0.0) {
          gd.U[j] = z * nn / al;
          gd.V[j] = z * mm / al;
        } else {
          gd.U[j] = -z * mm / al;
          gd.V[j] = -z * nn / al;
        }
      }
      break;
    }
    default:
      throw ParamError("invariant_product_gradient: unsupported family");
  }
  return gd;
}

/// Common state of the K*-normalized mean family gradients.
struct NormalizedMeans {
  NormalizedPair nf;
  double kstar;          // sum p / sum q
  double mg, mh, h2;     // sum MGbar, sum MHbar, sum MHbar^2 / qbar
  std::vector<double> rg;  // MGbar_j / qbar_j
  std::vector<double> rh;  // MHbar_j^2 / qbar_j^2
};

inline NormalizedMeans normalized_means(const Field& p, const Field& q,
                                        double alpha) {
  NormalizedMeans s{normalized_fields(p, q), 0.0, 0.0, 0.0, 0.0, {}, {}};
  s.kstar = s.nf.sp / s.nf.sq;
  const MeanFields mf = mean_fields(s.nf.pbar, s.nf.qbar, alpha);
  const std::size_t n = p.size();
  s.rg.resize(n);
  s.rh.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    s.mg += mf.MG[j];
    s.mh += mf.MH[j];
    s.h2 += mf.MH[j] * mf.MH[j] / s.nf.qbar[j];
    s.rg[j] = mf.MG[j] / s.nf.qbar[j];
    const double rh = mf.MH[j] / s.nf.qbar[j];
    s.rh[j] = rh * rh;
  }
  return s;
}

inline GradientDecomposition invariant_mean_gradient(Family family,
                                                     const Field& p,
                                                     const Field& q,
                                                     double alpha,
                                                     const LogParams& lp) {
  const NormalizedMeans s = normalized_means(p, q, alpha);
  const std::size_t n = p.size();
  const double c = (1.0 - alpha) * s.kstar;
  CaseTag tag = family == Family::gh   ? CaseTag::mean_gh
                : family == Family::ag ? CaseTag::mean_ag
                                       : CaseTag::mean_ah;
  GradientDecomposition gd = make_decomposition(n, tag);
  switch (family) {
    case Family::gh: {
      const double zg = dlog_d(s.mg, lp);
      const double zh = dlog_d(s.mh, lp);
      for (std::size_t j = 0; j < n; ++j) {
        gd.grad[j] = c * (zg * (s.rg[j] - s.mg) - zh * (s.rh[j] - s.h2));
        gd.U[j] = c * (zh * s.rh[j] + zg * s.mg);
        gd.V[j] = c * (zg * s.rg[j] + zh * s.h2);
      }
      break;
    }
    case Family::ag: {
      const double zg = dlog_d(s.mg, lp);
      for (std::size_t j = 0; j < n; ++j) {
        gd.grad[j] = -c * zg * (s.rg[j] - s.mg);
        gd.U[j] = c * zg * s.rg[j];
        gd.V[j] = c * zg * s.mg;
      }
      break;
    }
    case Family::ah: {
      const double zh = dlog_d(s.mh, lp);
      for (std::size_t j = 0; j < n; ++j) {
        gd.grad[j] = -c * zh * (s.rh[j] - s.h2);
        gd.U[j] = c * zh * s.rh[j];
        gd.V[j] = c * zh * s.h2;
      }
      break;
    }
    default:
      throw ParamError("invariant_mean_gradient: unsupported family");
  }
  return gd;
}

inline GradientDecomposition f_gradient(Variant variant, const Field& p,
                                        const Field& q, double alpha,
                                        const LogParams& lp) {
  const std::size_t n = p.size();
  GradientDecomposition gd = make_decomposition(n, CaseTag::none);
  if (variant == Variant::base) {
    const auto [value, mf] = f_divergence(p, q, alpha);
    (void)value;
    const double c = 1.0 - alpha;
    for (std::size_t j = 0; j < n; ++j) {
      const double w = sq_weight(mf.Z[j], lp);
      gd.grad[j] = c * (1.0 - w);
      gd.U[j] = c * w;
      gd.V[j] = c;
    }
    return gd;
  }
  if (!(alpha >= 0.0 && alpha < 1.0)) {
    throw ParamError("invariant F requires 0 <= alpha < 1");
  }
  const NormalizedPair nf = normalized_fields(p, q);
  const double c = (1.0 - alpha) * nf.sp / nf.sq;
  double swq = 0.0;
  std::vector<double> w(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double zb =
        nf.pbar[j] / (alpha * nf.pbar[j] + (1.0 - alpha) * nf.qbar[j]);
    w[j] = sq_weight(zb, lp);
    swq += w[j] * nf.qbar[j];
  }
  for (std::size_t j = 0; j < n; ++j) {
    gd.grad[j] = c * (swq - w[j]);
    gd.U[j] = c * w[j];
    gd.V[j] = c * swq;
  }
  return gd;
}

/// Sign-case decomposition of -grad_j = scale (ln num_j - ln den_j), the
/// natural-logarithm pathology shared by the dual KL and G divergences.
/// Components of U and V may be zero.
inline void log_ratio_cases(double num, double den, double scale, double& u,
                            double& v) {
  const double ln = std::log(num);
  const double ld = std::log(den);
  if (den > 1.0 && num < 1.0) {
    u = 0.0;
    v = scale * (ld - ln);
  } else if (den < 1.0 && num > 1.0) {
    u = scale * (ln - ld);
    v = 0.0;
  } else if (den >= 1.0 && num >= 1.0) {
    u = scale * ln;
    v = scale * ld;
  } else {
    u = scale * (-ld);
    v = scale * (-ln);
  }
}

inline GradientDecomposition g_gradient(Variant variant, const Field& p,
                                        const Field& q, double alpha,
                                        const LogParams& lp) {
  const std::size_t n = p.size();
  GradientDecomposition gd = make_decomposition(n, CaseTag::none);
  const double ab = lp.natural ? 0.0 : lp.a - lp.b;

  if (variant == Variant::base) {
    const auto [value, mf] = g_divergence(p, q, alpha);
    (void)value;
    const double c = 1.0 - alpha;
    for (std::size_t j = 0; j < n; ++j) {
      const double sj = mf.T[j] / p[j];
      gd.grad[j] = c * (log_bracket(sj, lp) - 1.0);
      if (lp.natural) {
        log_ratio_cases(p[j], mf.T[j], c, gd.U[j], gd.V[j]);
      } else if (ab > 0.0) {
        gd.U[j] = c * (1.0 + lp.b / ab * ppow(sj, lp.b - 1.0));
        gd.V[j] = c * lp.a / ab * ppow(sj, lp.a - 1.0);
      } else {
        gd.U[j] = c * (1.0 + lp.a / (-ab) * ppow(sj, lp.a - 1.0));
        gd.V[j] = c * lp.b / (-ab) * ppow(sj, lp.b - 1.0);
      }
    }
    gd.strict = !lp.natural;
    return gd;
  }

  if (!(alpha >= 0.0 && alpha < 1.0)) {
    throw ParamError("invariant G requires 0 <= alpha < 1");
  }
  const NormalizedPair nf = normalized_fields(p, q);
  const double c = (1.0 - alpha) * nf.sp / nf.sq;
  std::vector<double> sbar(n);
  double sgq = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double tb = alpha * nf.pbar[j] + (1.0 - alpha) * nf.qbar[j];
    sbar[j] = tb / nf.pbar[j];
    sgq += log_bracket(sbar[j], lp) * nf.qbar[j];
  }
  if (lp.natural) {
    double slp = 0.0, slt = 0.0;  // sum qbar ln pbar, sum qbar ln Tbar
    for (std::size_t j = 0; j < n; ++j) {
      slp += nf.qbar[j] * std::log(nf.pbar[j]);
      slt += nf.qbar[j] * std::log(sbar[j] * nf.pbar[j]);
    }
    for (std::size_t j = 0; j < n; ++j) {
      gd.grad[j] = c * (log_bracket(sbar[j], lp) - sgq);
      gd.U[j] = c * (-slp - std::log(sbar[j] * nf.pbar[j]));
      gd.V[j] = c * (-slt - std::log(nf.pbar[j]));
    }
    return gd;
  }
  double sa = 0.0, sb = 0.0;  // sum s^{a-1} qbar, sum s^{b-1} qbar
  for (std::size_t j = 0; j < n; ++j) {
    sa += ppow(sbar[j], lp.a - 1.0) * nf.qbar[j];
    sb += ppow(sbar[j], lp.b - 1.0) * nf.qbar[j];
  }
  for (std::size_t j = 0; j < n; ++j) {
    gd.grad[j] = c * (log_bracket(sbar[j], lp) - sgq);
    const double pa = ppow(sbar[j], lp.a - 1.0);
    const double pb = ppow(sbar[j], lp.b - 1.0);
    if (ab > 0.0) {
      gd.U[j] = c * (lp.a / ab * sa + lp.b / ab * pb);
      gd.V[j] = c * (lp.b / ab * sb + lp.a / ab * pa);
    } else {
      gd.U[j] = c * (lp.b / (-ab) * sb + lp.a / (-ab) * pa);
      gd.V[j] = c * (lp.a / (-ab) * sa + lp.b / (-ab) * pb);
    }
  }
  return gd;
}

inline GradientDecomposition dual_kl_gradient(Variant variant, const Field& p,
                                              const Field& q,
                                              const LogParams& lp);

}  // namespace detail

/// Four-case decomposition of the natural-form dual Kullback-Leibler
/// gradient.  A strictly positive split does not exist; components of U and
/// V may vanish, hence strict = false.
inline GradientDecomposition dual_kl_natural_decomposition(const Field& p,
                                                           const Field& q) {
  check_same_shape(p, q);
  const std::size_t n = p.size();
  GradientDecomposition gd = detail::make_decomposition(n, CaseTag::none);
  gd.strict = false;
  for (std::size_t j = 0; j < n; ++j) {
    gd.grad[j] = std::log(q[j] / p[j]);
    detail::log_ratio_cases(p[j], q[j], 1.0, gd.U[j], gd.V[j]);
  }
  return gd;
}

namespace detail {

inline GradientDecomposition dual_kl_gradient(Variant variant, const Field& p,
                                              const Field& q,
                                              const LogParams& lp) {
  const std::size_t n = p.size();
  if (variant == Variant::base) {
    if (lp.natural) return dual_kl_natural_decomposition(p, q);
    GradientDecomposition gd = make_decomposition(n, CaseTag::none);
    const double ab = lp.a - lp.b;
    for (std::size_t j = 0; j < n; ++j) {
      const double sj = q[j] / p[j];
      gd.grad[j] = log_bracket(sj, lp) - 1.0;
      if (ab > 0.0) {
        gd.U[j] = 1.0 + lp.b / ab * ppow(sj, lp.b - 1.0);
        gd.V[j] = lp.a / ab * ppow(sj, lp.a - 1.0);
      } else {
        gd.U[j] = 1.0 + lp.a / (-ab) * ppow(sj, lp.a - 1.0);
        gd.V[j] = lp.b / (-ab) * ppow(sj, lp.b - 1.0);
      }
    }
    return gd;
  }

  if (variant == Variant::nominal) {
    if (!lp.natural) {
      throw ParamError(
          "the nominal-factor dual KL form has no deformed-log version");
    }
    GradientDecomposition gd = make_decomposition(n, CaseTag::none);
    gd.strict = false;
    const InvarianceFactor k0 =
        nominal_factor(Family::dual_kl, p, q, DivergenceParams{});
    double s = 0.0, sq = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      s += q[j] * std::log(p[j] / q[j]);
      sq += q[j];
    }
    const double mean = s / sq;
    for (std::size_t j = 0; j < n; ++j) {
      const double mgrad = k0.value * (std::log(p[j] / q[j]) - mean);
      gd.grad[j] = -mgrad;
      gd.U[j] = mgrad > 0.0 ? mgrad : 0.0;
      gd.V[j] = mgrad > 0.0 ? 0.0 : -mgrad;
    }
    return gd;
  }

  // K*-normalized invariant form.
  const NormalizedPair nf = normalized_fields(p, q);
  const double kstar = nf.sp / nf.sq;
  GradientDecomposition gd = make_decomposition(n, CaseTag::none);
  std::vector<double> sbar(n);
  double sgq = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    sbar[j] = nf.qbar[j] / nf.pbar[j];
    sgq += log_bracket(sbar[j], lp) * nf.qbar[j];
  }
  if (lp.natural) {
    double slp = 0.0, slq = 0.0;  // sum qbar ln pbar, sum qbar ln qbar
    for (std::size_t j = 0; j < n; ++j) {
      slp += nf.qbar[j] * std::log(nf.pbar[j]);
      slq += nf.qbar[j] * std::log(nf.qbar[j]);
    }
    for (std::size_t j = 0; j < n; ++j) {
      gd.grad[j] = kstar * (log_bracket(sbar[j], lp) - sgq);
      gd.U[j] = kstar * (-slp - std::log(nf.qbar[j]));
      gd.V[j] = kstar * (-slq - std::log(nf.pbar[j]));
    }
    return gd;
  }
  const double ab = lp.a - lp.b;
  double qa = 0.0, qb = 0.0;  // sum qbar^a / pbar^{a-1}, same with b
  for (std::size_t j = 0; j < n; ++j) {
    qa += nf.qbar[j] * ppow(sbar[j], lp.a - 1.0);
    qb += nf.qbar[j] * ppow(sbar[j], lp.b - 1.0);
  }
  for (std::size_t j = 0; j < n; ++j) {
    gd.grad[j] = kstar * (log_bracket(sbar[j], lp) - sgq);
    const double pa = ppow(sbar[j], lp.a - 1.0);
    const double pb = ppow(sbar[j], lp.b - 1.0);
    if (ab > 0.0) {
      gd.U[j] = kstar * (lp.a / ab * qa + lp.b / ab * pb);
      gd.V[j] = kstar * (lp.b / ab * qb + lp.a / ab * pa);
    } else {
      gd.U[j] = kstar * (lp.b / (-ab) * qb + lp.a / (-ab) * pa);
      gd.V[j] = kstar * (lp.a / (-ab) * qa + lp.b / (-ab) * pb);
    }
  }
  return gd;
}

}  // namespace detail

/// Value of the (possibly deformed-log transformed) divergence selected by
/// (family, variant).  This is exactly the objective whose q-gradient
/// ld_gradient returns.
inline double ld_divergence_value(Family family, Variant variant,
                                  const Field& p, const Field& q,
                                  const DivergenceParams& dp,
                                  const LogParams& lp) {
  check_same_shape(p, q);
  switch (family) {
    case Family::alpha:
    case Family::beta:
    case Family::alpha_beta:
      if (variant == Variant::invariant) {
        return ld_value(invariant_split(family, p, q, dp), lp);
      }
      if (variant == Variant::base) {
        if (family == Family::alpha) return ld_value(alpha_split(p, q, dp), lp);
        if (family == Family::beta) return ld_value(beta_split(p, q, dp), lp);
        return ld_value(alphabeta_split(p, q, dp), lp);
      }
      throw ParamError("nominal variant exists for the dual KL family only");
    case Family::gh:
    case Family::ag:
    case Family::ah: {
      const MeanKind kind = family == Family::gh   ? MeanKind::gh
                            : family == Family::ag ? MeanKind::ag
                                                   : MeanKind::ah;
      if (variant == Variant::base) {
        return ld_value(mean_split(kind, p, q, dp.alpha), lp);
      }
      if (variant == Variant::invariant) {
        const detail::NormalizedMeans s =
            detail::normalized_means(p, q, dp.alpha);
        if (family == Family::gh) {
          return s.nf.sp * (log_d(s.mg, lp) - log_d(s.mh, lp));
        }
        if (family == Family::ag) return -s.nf.sp * log_d(s.mg, lp);
        return -s.nf.sp * log_d(s.mh, lp);
      }
      throw ParamError("nominal variant exists for the dual KL family only");
    }
    case Family::f: {
      if (!(dp.alpha >= 0.0 && dp.alpha < 1.0)) {
        throw ParamError("F divergence requires 0 <= alpha < 1");
      }
      if (variant == Variant::base) {
        double v = 0.0;
        for (std::size_t j = 0; j < p.size(); ++j) {
          const double z =
              p[j] / (dp.alpha * p[j] + (1.0 - dp.alpha) * q[j]);
          v += p[j] * log_d(z, lp) + (1.0 - dp.alpha) * (q[j] - p[j]);
        }
        return v;
      }
      if (variant == Variant::invariant) {
        const NormalizedPair nf = normalized_fields(p, q);
        double v = 0.0;
        for (std::size_t j = 0; j < p.size(); ++j) {
          const double z = nf.pbar[j] / (dp.alpha * nf.pbar[j] +
                                         (1.0 - dp.alpha) * nf.qbar[j]);
          v += nf.pbar[j] * log_d(z, lp);
        }
        return nf.sp * v;
      }
      throw ParamError("nominal variant exists for the dual KL family only");
    }
    case Family::g: {
      if (!(dp.alpha >= 0.0 && dp.alpha < 1.0)) {
        throw ParamError("G divergence requires 0 <= alpha < 1");
      }
      if (variant == Variant::base) {
        double v = 0.0;
        for (std::size_t j = 0; j < p.size(); ++j) {
          const double t = dp.alpha * p[j] + (1.0 - dp.alpha) * q[j];
          v += t * log_d(t / p[j], lp) + (1.0 - dp.alpha) * (p[j] - q[j]);
        }
        return v;
      }
      if (variant == Variant::invariant) {
        const NormalizedPair nf = normalized_fields(p, q);
        double v = 0.0;
        for (std::size_t j = 0; j < p.size(); ++j) {
          const double t = dp.alpha * nf.pbar[j] +
                           (1.0 - dp.alpha) * nf.qbar[j];
          v += t * log_d(t / nf.pbar[j], lp);
        }
        return nf.sp * v;
      }
      throw ParamError("nominal variant exists for the dual KL family only");
    }
    case Family::dual_kl: {
      if (variant == Variant::base) {
        double v = 0.0;
        for (std::size_t j = 0; j < p.size(); ++j) {
          v += q[j] * log_d(q[j] / p[j], lp) + p[j] - q[j];
        }
        return v;
      }
      if (variant == Variant::invariant) {
        const NormalizedPair nf = normalized_fields(p, q);
        double v = 0.0;
        for (std::size_t j = 0; j < p.size(); ++j) {
          v += nf.qbar[j] * log_d(nf.qbar[j] / nf.pbar[j], lp);
        }
        return nf.sp * v;
      }
      if (!lp.natural) {
        throw ParamError(
            "the nominal-factor dual KL form has no deformed-log version");
      }
      return invariant_value(InvariantFamily::dual_kl_nominal, p, q, 0.0);
    }
  }
  throw ParamError("unknown family");
}

/// Analytic gradient with respect to q of the divergence selected by
/// (family, variant), with the printed U - V decomposition of its opposite.
inline GradientDecomposition ld_gradient(Family family, Variant variant,
                                         const Field& p, const Field& q,
                                         const DivergenceParams& dp,
                                         const LogParams& lp) {
  check_same_shape(p, q);
  switch (family) {
    case Family::alpha:
    case Family::beta:
    case Family::alpha_beta:
      if (variant == Variant::invariant) {
        return detail::invariant_product_gradient(family, p, q, dp, lp);
      }
      if (variant == Variant::base) {
        return detail::split_family_gradient(family, p, q, dp, lp);
      }
      throw ParamError("nominal variant exists for the dual KL family only");
    case Family::gh:
    case Family::ag:
    case Family::ah:
      if (variant == Variant::base) {
        return detail::split_family_gradient(family, p, q, dp, lp);
      }
      if (variant == Variant::invariant) {
        return detail::invariant_mean_gradient(family, p, q, dp.alpha, lp);
      }
      throw ParamError("nominal variant exists for the dual KL family only");
    case Family::f:
      if (variant == Variant::nominal) {
        throw ParamError("nominal variant exists for the dual KL family only");
      }
      return detail::f_gradient(variant, p, q, dp.alpha, lp);
    case Family::g:
      if (variant == Variant::nominal) {
        throw ParamError("nominal variant exists for the dual KL family only");
      }
      return detail::g_gradient(variant, p, q, dp.alpha, lp);
    case Family::dual_kl:
      return detail::dual_kl_gradient(variant, p, q, lp);
  }
  throw ParamError("unknown family");
}

/// Gradient of the natural-logarithm LD2 form T (ln A - ln X - ln Y) of the
/// invariant alpha, beta and alpha-beta divergences, through the reduced
/// closed forms.  Numerically identical to ld_gradient with the natural
/// variant; kept as an independent algebraic route.
inline GradientDecomposition natural_ld2_gradient(Family family,
                                                  const Field& p,
                                                  const Field& q,
                                                  const DivergenceParams& dp) {
  check_same_shape(p, q);
  const std::size_t n = p.size();
  GradientDecomposition gd;
  const double al = dp.alpha;
  const double be = dp.beta;
  switch (family) {
    case Family::alpha: {
      const ProductSplit s = invariant_split(family, p, q, dp);
      gd = detail::make_decomposition(n, s.case_tag);
      double sx = 0.0, sq = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        sx += detail::ppow(p[j], al) * detail::ppow(q[j], 1.0 - al);
        sq += q[j];
      }
      for (std::size_t j = 0; j < n; ++j) {
        const double t = detail::ppow(p[j] / q[j], al);
        const double mgrad = (t / sx - 1.0 / sq) / al;
        gd.grad[j] = -mgrad;
        if (al > 0.0) {
          gd.U[j] = t / sx / al;
          gd.V[j] = 1.0 / sq / al;
        } else {
          gd.U[j] = -1.0 / sq / al;
          gd.V[j] = -t / sx / al;
        }
      }
      return gd;
    }
    case Family::beta: {
      const ProductSplit s = invariant_split(family, p, q, dp);
      gd = detail::make_decomposition(n, s.case_tag);
      double sx = 0.0, sy = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const double qb1 = detail::ppow(q[j], be - 1.0);
        sx += p[j] * qb1;
        sy += q[j] * qb1;
      }
      for (std::size_t j = 0; j < n; ++j) {
        gd.U[j] = p[j] * detail::ppow(q[j], be - 2.0) / sx;
        gd.V[j] = detail::ppow(q[j], be - 1.0) / sy;
        gd.grad[j] = gd.V[j] - gd.U[j];
      }
      return gd;
    }
    case Family::alpha_beta: {
      const ProductSplit s = invariant_split(family, p, q, dp);
      gd = detail::make_decomposition(n, s.case_tag);
      const double ab1 = al + be - 1.0;
      double sx = 0.0, sy = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        sx += detail::ppow(p[j], al) * detail::ppow(q[j], be - 1.0);
        sy += detail::ppow(q[j], ab1);
      }
      for (std::size_t j = 0; j < n; ++j) {
        const double u = detail::ppow(p[j], al) * detail::ppow(q[j], be - 2.0) / sx;
        const double v = detail::ppow(q[j], ab1 - 1.0) / sy;
        const double mgrad = (u - v) / al;
        gd.grad[j] = -mgrad;
        if (al > 0.0) {
          gd.U[j] = u / al;
          gd.V[j] = v / al;
        } else {
          gd.U[j] = -v / al;
          gd.V[j] = -u / al;
        }
      }
      return gd;
    }
    default:
      throw ParamError(
          "natural LD2 gradients exist for the invariant alpha, beta and "
          "alpha-beta families only");
  }
}

}  // namespace divgrad
