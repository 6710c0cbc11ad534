#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "divgrad/divergences.hpp"
#include "divgrad/errors.hpp"
#include "divgrad/field.hpp"

namespace divgrad {

enum class FactorKind { nominal, star };

/// A positive scalar K(p, q), homogeneous of degree -1 in q, that makes
/// D(p || K q) invariant under rescaling of q.
struct InvarianceFactor {
  FactorKind kind = FactorKind::star;
  double value = 1.0;
  Family family = Family::dual_kl;
};

/// A divergence written as T (A - X Y) where the product X Y is an
/// indissociable block; dA = 0 for every shipped instance.
struct ProductSplit {
  double T = 1.0;
  double A = 0.0;
  double X = 0.0;
  double Y = 0.0;
  std::vector<double> dX;
  std::vector<double> dY;
  CaseTag case_tag = CaseTag::none;

  double value() const { return T * (A - X * Y); }
};

/// Fields rescaled to unit sum, with the original sums kept.
struct NormalizedPair {
  Field pbar;
  Field qbar;
  double sp = 0.0;
  double sq = 0.0;
};

/// K* = sum p / sum q, the fallback invariance factor (nominal for the
/// Kullback-Leibler divergence).
inline InvarianceFactor star_factor(const Field& p, const Field& q) {
  check_same_shape(p, q);
  return InvarianceFactor{FactorKind::star, p.sum() / q.sum(),
                          Family::dual_kl};
}

/// Closed-form nominal invariance factor for the families that admit one.
inline InvarianceFactor nominal_factor(Family family, const Field& p,
                                       const Field& q,
                                       const DivergenceParams& dp) {
  check_same_shape(p, q);
  const std::size_t n = p.size();
  InvarianceFactor k;
  k.kind = FactorKind::nominal;
  k.family = family;
  switch (family) {
    case Family::alpha: {
      detail::check_excluded(dp.alpha, 0.0, "alpha");
      detail::check_excluded(dp.alpha, 1.0, "alpha");
      double spq = 0.0, sq = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        spq += detail::ppow(p[j], dp.alpha) * detail::ppow(q[j], 1.0 - dp.alpha);
        sq += q[j];
      }
      k.value = detail::ppow(spq / sq, 1.0 / dp.alpha);
      return k;
    }
    case Family::beta: {
      detail::check_excluded(dp.beta, 0.0, "beta");
      detail::check_excluded(dp.beta, 1.0, "beta");
      double spqb = 0.0, sqb = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const double qb1 = detail::ppow(q[j], dp.beta - 1.0);
        spqb += p[j] * qb1;
        sqb += q[j] * qb1;
      }
      k.value = spqb / sqb;
      return k;
    }
    case Family::alpha_beta: {
      detail::check_excluded(dp.alpha, 0.0, "alpha");
      detail::check_excluded(dp.beta, 1.0, "beta");
      detail::check_excluded(dp.alpha + dp.beta, 1.0, "alpha + beta");
      double spq = 0.0, sqab = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        spq += detail::ppow(p[j], dp.alpha) * detail::ppow(q[j], dp.beta - 1.0);
        sqab += detail::ppow(q[j], dp.alpha + dp.beta - 1.0);
      }
      k.value = detail::ppow(spq / sqab, 1.0 / dp.alpha);
      return k;
    }
    case Family::dual_kl: {
      double s = 0.0, sq = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        s += q[j] * std::log(p[j] / q[j]);
        sq += q[j];
      }
      k.value = std::exp(s / sq);
      return k;
    }
    default:
      throw ParamError(
          "no closed-form nominal invariance factor for this family; use K*");
  }
}

/// Normalize both fields to unit sum.
inline NormalizedPair normalized_fields(const Field& p, const Field& q) {
  check_same_shape(p, q);
  const double sp = p.sum();
  const double sq = q.sum();
  std::vector<double> pb(p.size()), qb(q.size());
  for (std::size_t j = 0; j < p.size(); ++j) {
    pb[j] = p[j] / sp;
    qb[j] = q[j] / sq;
  }
  return NormalizedPair{Field(std::move(pb)), Field(std::move(qb)), sp, sq};
}

/// Scale-invariant product form T (A - X Y) for the alpha, beta and
/// alpha-beta families, obtained by inserting the nominal factor.
inline ProductSplit invariant_split(Family family, const Field& p,
                                    const Field& q,
                                    const DivergenceParams& dp) {
  check_same_shape(p, q);
  const std::size_t n = p.size();
  ProductSplit s;
  s.dX.resize(n);
  s.dY.resize(n);
  switch (family) {
    case Family::alpha: {
      const double al = dp.alpha;
      detail::check_excluded(al, 0.0, "alpha");
      detail::check_excluded(al, 1.0, "alpha");
      double sp = 0.0, sq = 0.0, sx = 0.0;
      std::vector<double> t(n);
      for (std::size_t j = 0; j < n; ++j) {
        t[j] = detail::ppow(p[j] / q[j], al);
        sp += p[j];
        sq += q[j];
        sx += t[j] * q[j];
      }
      s.T = 1.0 / (1.0 - al);
      s.A = sp;
      s.X = detail::ppow(sx, 1.0 / al);
      s.Y = detail::ppow(sq, 1.0 - 1.0 / al);
      const double cx = (1.0 - al) / al * detail::ppow(sx, 1.0 / al - 1.0);
      const double cy = (al - 1.0) / al * detail::ppow(sq, -1.0 / al);
      for (std::size_t j = 0; j < n; ++j) {
        s.dX[j] = cx * t[j];
        s.dY[j] = cy;
      }
      s.case_tag = (al > 0.0) ? CaseTag::inv_alpha_pos : CaseTag::inv_alpha_neg;
      return s;
    }
    case Family::beta: {
      const double be = dp.beta;
      detail::check_excluded(be, 0.0, "beta");
      detail::check_excluded(be, 1.0, "beta");
      double sa = 0.0, sx = 0.0, sy = 0.0;
      std::vector<double> qb1(n), pqb2(n);
      for (std::size_t j = 0; j < n; ++j) {
        qb1[j] = detail::ppow(q[j], be - 1.0);
        pqb2[j] = p[j] * detail::ppow(q[j], be - 2.0);
        sa += detail::ppow(p[j], be);
        sx += p[j] * qb1[j];
        sy += q[j] * qb1[j];
      }
      s.T = 1.0 / (be * (be - 1.0));
      s.A = sa;
      s.X = detail::ppow(sx, be);
      s.Y = detail::ppow(sy, 1.0 - be);
      const double cx = be * (be - 1.0) * detail::ppow(sx, be - 1.0);
      const double cy = be * (1.0 - be) * detail::ppow(sy, -be);
      for (std::size_t j = 0; j < n; ++j) {
        s.dX[j] = cx * pqb2[j];
        s.dY[j] = cy * qb1[j];
      }
      s.case_tag = CaseTag::inv_beta;
      return s;
    }
    case Family::alpha_beta: {
      const double al = dp.alpha;
      const double be = dp.beta;
      detail::check_excluded(al, 0.0, "alpha");
      detail::check_excluded(be, 1.0, "beta");
      detail::check_excluded(al + be, 1.0, "alpha + beta");
      const double ab1 = al + be - 1.0;
      double sa = 0.0, sx = 0.0, sy = 0.0;
      std::vector<double> m(n), nn(n);
      for (std::size_t j = 0; j < n; ++j) {
        m[j] = detail::ppow(q[j], ab1 - 1.0);
        nn[j] = detail::ppow(p[j], al) * detail::ppow(q[j], be - 2.0);
        sa += detail::ppow(p[j], ab1);
        sx += nn[j] * q[j];
        sy += m[j] * q[j];
      }
      s.T = 1.0 / ((be - 1.0) * ab1);
      s.A = sa;
      s.X = detail::ppow(sx, ab1 / al);
      s.Y = detail::ppow(sy, (1.0 - be) / al);
      const double cx = ab1 * (be - 1.0) / al * detail::ppow(sx, (be - 1.0) / al);
      const double cy =
          ab1 * (1.0 - be) / al * detail::ppow(sy, (1.0 - al - be) / al);
      for (std::size_t j = 0; j < n; ++j) {
        s.dX[j] = cx * nn[j];
        s.dY[j] = cy * m[j];
      }
      s.case_tag = (al > 0.0) ? CaseTag::inv_ab_pos : CaseTag::inv_ab_neg;
      return s;
    }
    default:
      throw ParamError("invariant product splits exist for the alpha, beta "
                       "and alpha-beta families only");
  }
}

/// K*-normalized (or, for the nominal dual-KL form, K0-based) invariant
/// divergences that have no product split.
enum class InvariantFamily { gh, ag, ah, f, g, dual_kl_star, dual_kl_nominal };

/// Natural-form value of a K*/K0 invariant divergence, including the sum(p)
/// prefactor of the displayed expressions.
inline double invariant_value(InvariantFamily fam, const Field& p,
                              const Field& q, double alpha) {
  check_same_shape(p, q);
  const NormalizedPair nf = normalized_fields(p, q);
  const std::size_t n = p.size();
  switch (fam) {
    case InvariantFamily::gh: {
      const MeanFields mf = mean_fields(nf.pbar, nf.qbar, alpha);
      double mg = 0.0, mh = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        mg += mf.MG[j];
        mh += mf.MH[j];
      }
      return nf.sp * (mg - mh);
    }
    case InvariantFamily::ag: {
      const MeanFields mf = mean_fields(nf.pbar, nf.qbar, alpha);
      double mg = 0.0;
      for (std::size_t j = 0; j < n; ++j) mg += mf.MG[j];
      return nf.sp * (1.0 - mg);
    }
    case InvariantFamily::ah: {
      const MeanFields mf = mean_fields(nf.pbar, nf.qbar, alpha);
      double mh = 0.0;
      for (std::size_t j = 0; j < n; ++j) mh += mf.MH[j];
      return nf.sp * (1.0 - mh);
    }
    case InvariantFamily::f: {
      if (!(alpha >= 0.0 && alpha < 1.0)) {
        throw ParamError("invariant F requires 0 <= alpha < 1");
      }
      double v = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const double zb =
            nf.pbar[j] / (alpha * nf.pbar[j] + (1.0 - alpha) * nf.qbar[j]);
        v += nf.pbar[j] * std::log(zb);
      }
      return nf.sp * v;
    }
    case InvariantFamily::g: {
      if (!(alpha >= 0.0 && alpha < 1.0)) {
        throw ParamError("invariant G requires 0 <= alpha < 1");
      }
      double v = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const double tb = alpha * nf.pbar[j] + (1.0 - alpha) * nf.qbar[j];
        v += tb * std::log(tb / nf.pbar[j]);
      }
      return nf.sp * v;
    }
    case InvariantFamily::dual_kl_star: {
      double v = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        v += nf.qbar[j] * std::log(nf.qbar[j] / nf.pbar[j]);
      }
      return nf.sp * v;
    }
    case InvariantFamily::dual_kl_nominal: {
      const InvarianceFactor k0 =
          nominal_factor(Family::dual_kl, p, q, DivergenceParams{});
      return nf.sp - k0.value * nf.sq;
    }
  }
  throw ParamError("unknown invariant family");
}

/// Residual of the invariance-factor differential equation
/// K + sum_j q_j dK/dq_j, evaluated with central differences at relative
/// step 1e-6.  Factors making divergences scale invariant drive it to zero.
template <typename FactorFn>
double factor_ode_residual(FactorFn&& factor, const Field& p, const Field& q) {
  const double k0 = factor(p, q);
  double acc = k0;
  std::vector<double> work = q.values();
  for (std::size_t j = 0; j < work.size(); ++j) {
    const double qj = work[j];
    const double h = 1e-6 * qj;
    work[j] = qj + h;
    const double kp = factor(p, Field(work));
    work[j] = qj - h;
    const double km = factor(p, Field(work));
    work[j] = qj;
    acc += qj * (kp - km) / (2.0 * h);
  }
  return acc;
}

}  // namespace divgrad
