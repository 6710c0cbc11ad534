#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "divgrad/divergences.hpp"
#include "divgrad/errors.hpp"
#include "divgrad/field.hpp"
#include "divgrad/logdiv.hpp"

namespace divgrad {

/// Dense non-negative linear model q = H x with measurements y (the data
/// field p of the divergences).
struct LinearModel {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> H;  // row-major, rows x cols
  Field y;

  LinearModel(std::size_t m, std::size_t n, std::vector<double> h, Field y_)
      : rows(m), cols(n), H(std::move(h)), y(std::move(y_)) {
    if (H.size() != rows * cols) {
      throw ShapeError("LinearModel: H has " + std::to_string(H.size()) +
                       " entries, expected " + std::to_string(rows * cols));
    }
    if (y.size() != rows) {
      throw ShapeError("LinearModel: y length does not match H rows");
    }
    std::vector<bool> col_ok(cols, false), row_ok(rows, false);
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) {
        const double h = H[i * cols + j];
        if (h < 0.0 || !std::isfinite(h)) {
          throw DomainError("LinearModel: H(" + std::to_string(i) + ", " +
                            std::to_string(j) + ") must be finite and >= 0");
        }
        if (h > 0.0) {
          col_ok[j] = true;
          row_ok[i] = true;
        }
      }
    }
    for (std::size_t j = 0; j < cols; ++j) {
      if (!col_ok[j]) {
        throw DomainError("LinearModel: column " + std::to_string(j) +
                          " of H has no positive entry");
      }
    }
    for (std::size_t i = 0; i < rows; ++i) {
      if (!row_ok[i]) {
        throw DomainError("LinearModel: row " + std::to_string(i) +
                          " of H has no positive entry (H x cannot stay "
                          "positive)");
      }
    }
  }

  std::vector<double> apply(const std::vector<double>& x) const {
    if (x.size() != cols) throw ShapeError("LinearModel::apply: bad x length");
    std::vector<double> q(rows, 0.0);
    for (std::size_t i = 0; i < rows; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < cols; ++j) s += H[i * cols + j] * x[j];
      q[i] = s;
    }
    return q;
  }
};

/// Chain rule through the linear model: dD/dx = H^T dD/dq.
inline std::vector<double> chain_gradient(const LinearModel& model,
                                          const std::vector<double>& gq) {
  if (gq.size() != model.rows) {
    throw ShapeError("chain_gradient: gradient length does not match H rows");
  }
  std::vector<double> gx(model.cols, 0.0);
  for (std::size_t i = 0; i < model.rows; ++i) {
    for (std::size_t j = 0; j < model.cols; ++j) {
      gx[j] += model.H[i * model.cols + j] * gq[i];
    }
  }
  return gx;
}

enum class Algorithm { additive, preconditioned, multiplicative };

inline const char* to_string(Algorithm a) {
  switch (a) {
    case Algorithm::additive: return "additive";
    case Algorithm::preconditioned: return "preconditioned";
    case Algorithm::multiplicative: return "multiplicative";
  }
  return "unknown";
}

struct ArmijoOptions {
  double c1 = 1e-4;
  double shrink = 0.5;
  int max_backtracks = 60;
};

/// The divergence a solve minimizes, bound to its parameters.
struct DivergenceSpec {
  Family family = Family::f;
  Variant variant = Variant::base;
  DivergenceParams params;
  LogParams log_params = LogParams::natural_log();

  double value(const Field& p, const Field& q) const {
    return ld_divergence_value(family, variant, p, q, params, log_params);
  }
  GradientDecomposition gradient(const Field& p, const Field& q) const {
    return ld_gradient(family, variant, p, q, params, log_params);
  }
};

/// One completed iterate of a solve.
struct IterateRecord {
  int k = 0;
  double divergence = 0.0;
  double step = 0.0;
  double sum_x = 0.0;
  double min_x = 0.0;
  double consistency_residual = 0.0;
};

struct IterateTrace {
  std::vector<IterateRecord> records;
};

struct SolverOptions {
  Algorithm algorithm = Algorithm::preconditioned;
  int max_iters = 500;
  double rel_tol = 1e-10;
  std::optional<double> sum_constraint;
  ArmijoOptions armijo;
  double step_cap = 1e6;
  /// Observer invoked after every recorded iterate (including the initial
  /// one); receives the record and the current estimate.
  std::function<void(const IterateRecord&, const std::vector<double>&)>
      on_iterate;
};

struct SolveResult {
  std::vector<double> x;
  IterateTrace trace;
  int iterations = 0;
  double initial_divergence = 0.0;
  double final_divergence = 0.0;
  bool converged = false;
};

/// Largest step keeping every component of x (1 + alpha d) positive, reduced
/// by a 0.99 safety factor; step_cap when no component pushes negative.
inline double max_step(const std::vector<double>& x,
                       const std::vector<double>& d, double step_cap = 1e6) {
  if (x.size() != d.size()) throw ShapeError("max_step: length mismatch");
  double amax = step_cap;
  bool bound = false;
  for (std::size_t j = 0; j < d.size(); ++j) {
    if (!(x[j] > 0.0)) throw DomainError("max_step: x must be positive");
    if (d[j] < 0.0) {
      const double a = -1.0 / d[j];
      if (!bound || a < amax) amax = a;
      bound = true;
    }
  }
  return bound ? std::min(0.99 * amax, step_cap) : step_cap;
}

/// Backtracking Armijo search over (0, alpha_max]: the largest tested step
/// satisfying phi(alpha) <= phi(0) + c1 alpha phi'(0).
template <typename Phi>
double armijo_step(Phi&& phi, double phi0, double dphi0, double alpha_max,
                   const ArmijoOptions& opts = {}) {
  if (!(alpha_max > 0.0)) throw ParamError("armijo_step: alpha_max <= 0");
  if (!(dphi0 < 0.0)) {
    throw LineSearchFailure(
        "armijo_step: directional derivative is not negative (" +
        std::to_string(dphi0) + "); not a descent direction");
  }
  double alpha = alpha_max;
  for (int i = 0; i <= opts.max_backtracks; ++i) {
    const double value = phi(alpha);
    if (std::isfinite(value) && value <= phi0 + opts.c1 * alpha * dphi0) {
      return alpha;
    }
    alpha *= opts.shrink;
  }
  throw LineSearchFailure("armijo_step: no acceptable step after " +
                          std::to_string(opts.max_backtracks) +
                          " backtracks");
}

namespace detail {

inline double decomposition_residual(const GradientDecomposition& gd) {
  double worst = 0.0;
  for (std::size_t j = 0; j < gd.grad.size(); ++j) {
    const double scale = gd.U[j] + gd.V[j];
    const double r = std::abs(gd.U[j] - gd.V[j] + gd.grad[j]);
    worst = std::max(worst, scale > 0.0 ? r / scale : r);
  }
  return worst;
}

}  // namespace detail

/// Minimize objective(y || H x) over x > 0 with the selected SGM-style
/// update, starting from x0.  Iterates stay strictly positive; the additive
/// and preconditioned updates take Armijo steps, the purely multiplicative
/// update uses a unit step and records (rather than rejects) any divergence
/// increase.  With a sum constraint, the preconditioned and multiplicative
/// updates renormalize each iterate to sum C; additive runs rely on the
/// conservation property of scale-invariant divergences.
inline SolveResult sgm_solve(const LinearModel& model,
                             const DivergenceSpec& objective,
                             const std::vector<double>& x0,
                             const SolverOptions& opts = {}) {
  if (x0.size() != model.cols) throw ShapeError("sgm_solve: bad x0 length");
  for (std::size_t j = 0; j < x0.size(); ++j) {
    if (!(x0[j] > 0.0)) {
      throw DomainError("sgm_solve: x0 component " + std::to_string(j) +
                        " is not strictly positive");
    }
  }
  if (opts.max_iters < 1) throw ParamError("sgm_solve: max_iters < 1");
  const std::optional<double> C = opts.sum_constraint;
  if (C) {
    if (!(*C > 0.0)) throw ParamError("sgm_solve: sum constraint must be > 0");
    double s = 0.0;
    for (double v : x0) s += v;
    if (std::abs(s - *C) > 1e-9 * *C) {
      throw ParamError("sgm_solve: sum of x0 (" + std::to_string(s) +
                       ") does not match the sum constraint " +
                       std::to_string(*C));
    }
  }

  SolveResult res;
  res.x = x0;
  auto divergence_at = [&](const std::vector<double>& x) {
    return objective.value(model.y, Field(model.apply(x)));
  };

  auto record = [&](int k, double div, double step, double residual) {
    IterateRecord rec;
    rec.k = k;
    rec.divergence = div;
    rec.step = step;
    rec.sum_x = 0.0;
    rec.min_x = res.x[0];
    rec.consistency_residual = residual;
    for (double v : res.x) {
      rec.sum_x += v;
      rec.min_x = std::min(rec.min_x, v);
    }
    res.trace.records.push_back(rec);
    if (opts.on_iterate) opts.on_iterate(rec, res.x);
  };

  double div = divergence_at(res.x);
  res.initial_divergence = div;
  int stall = 0;

  Field q(model.apply(res.x));
  GradientDecomposition gd = objective.gradient(model.y, q);
  double residual = detail::decomposition_residual(gd);
  record(0, div, 0.0, residual);

  const double conv_scale = 1.0 + std::abs(div);
  int k = 0;
  for (; k < opts.max_iters; ++k) {
    if (residual > 1e-6) {
      throw NonDescent("sgm_solve: U - V does not reproduce -grad (residual " +
                       std::to_string(residual) + ")");
    }
    if (!gd.strict && opts.algorithm != Algorithm::additive) {
      throw NonDescent(
          "sgm_solve: this decomposition has zero components; the "
          "preconditioned and multiplicative updates need U > 0, V > 0 (use "
          "the deformed-log form of the divergence)");
    }

    const std::vector<double> gx = chain_gradient(model, gd.grad);
    std::vector<double> ux = chain_gradient(model, gd.U);
    std::vector<double> vx = chain_gradient(model, gd.V);

    double alpha = 0.0;
    std::vector<double> xnext(res.x.size());
    if (opts.algorithm == Algorithm::multiplicative) {
      double move = 0.0;
      for (std::size_t j = 0; j < res.x.size(); ++j) {
        if (!(vx[j] > 0.0)) {
          throw NonDescent("sgm_solve: V has a non-positive component after "
                           "chaining through H^T");
        }
        move = std::max(move, std::abs(ux[j] / vx[j] - 1.0));
        xnext[j] = res.x[j] * ux[j] / vx[j];
      }
      if (move <= 1e-14) {
        res.converged = true;
        break;
      }
      alpha = 1.0;
    } else {
      std::vector<double> d(res.x.size());
      double dphi0 = 0.0;
      for (std::size_t j = 0; j < res.x.size(); ++j) {
        if (opts.algorithm == Algorithm::additive) {
          d[j] = ux[j] - vx[j];
        } else {
          if (!(vx[j] > 0.0)) {
            throw NonDescent("sgm_solve: V has a non-positive component "
                             "after chaining through H^T");
          }
          d[j] = ux[j] / vx[j] - 1.0;
        }
        dphi0 += gx[j] * res.x[j] * d[j];
      }
      if (dphi0 >= -1e-15 * conv_scale) {
        res.converged = true;
        break;
      }
      const double amax = max_step(res.x, d, opts.step_cap);
      auto phi = [&](double a) {
        std::vector<double> xt(res.x.size());
        for (std::size_t j = 0; j < xt.size(); ++j) {
          xt[j] = res.x[j] * (1.0 + a * d[j]);
        }
        return divergence_at(xt);
      };
      alpha = armijo_step(phi, div, dphi0, amax, opts.armijo);
      for (std::size_t j = 0; j < res.x.size(); ++j) {
        xnext[j] = res.x[j] * (1.0 + alpha * d[j]);
      }
    }

    if (C && opts.algorithm != Algorithm::additive) {
      double s = 0.0;
      for (double v : xnext) s += v;
      const double scale = *C / s;
      for (double& v : xnext) v *= scale;
    }

    res.x = std::move(xnext);
    const double next_div = divergence_at(res.x);
    q = Field(model.apply(res.x));
    gd = objective.gradient(model.y, q);
    residual = detail::decomposition_residual(gd);
    record(k + 1, next_div, alpha, residual);

    const double drop = (div - next_div) / std::max(std::abs(div), 1e-300);
    div = next_div;
    stall = (drop < opts.rel_tol) ? stall + 1 : 0;
    if (stall >= 5) {
      res.converged = true;
      ++k;
      break;
    }
  }

  res.iterations = k;
  res.final_divergence = div;
  return res;
}

}  // namespace divgrad
