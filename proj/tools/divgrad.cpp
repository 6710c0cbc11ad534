// divgrad: evaluate divergences and their gradient decompositions, run the
// identity checks, and solve non-negative linear inverse problems with the
// SGM updates.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "divgrad/divgrad.hpp"

using json = nlohmann::ordered_json;
using namespace divgrad;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitDomain = 3;
constexpr int kExitSolver = 4;

struct CommonConfig {
  std::string family = "alpha";
  std::string variant = "base";
  double alpha = 0.5;
  double beta = 2.0;
  double taneja_r = 2.0;
  double taneja_s = 2.0;
  std::optional<double> log_a;
  std::optional<double> log_b;
  std::string log_family;
  double log_t = 2.0;
  double log_kappa = 0.5;
  double log_z = 2.0;
  double log_gamma = 0.25;
  double log_r = 0.0;
  std::optional<double> floor;
  bool canonical_sum = true;
  std::optional<std::uint64_t> seed_opt;
};

void add_common_options(CLI::App* cmd, CommonConfig& cfg) {
  cmd->add_option("--family", cfg.family,
                  "divergence family: alpha, beta, alphabeta, gh, ag, ah, f, "
                  "g, dual_kl, taneja")
      ->capture_default_str();
  cmd->add_option("--variant", cfg.variant,
                  "base, invariant, nominal or star")
      ->capture_default_str();
  cmd->add_option("--alpha", cfg.alpha, "family exponent alpha")
      ->capture_default_str();
  cmd->add_option("--beta", cfg.beta, "family exponent beta")
      ->capture_default_str();
  cmd->add_option("--r", cfg.taneja_r, "Taneja exponent r")
      ->capture_default_str();
  cmd->add_option("--s", cfg.taneja_s, "Taneja exponent s")
      ->capture_default_str();
  cmd->add_option("--log-a", cfg.log_a, "deformed logarithm exponent a");
  cmd->add_option("--log-b", cfg.log_b, "deformed logarithm exponent b");
  cmd->add_option("--log-family", cfg.log_family,
                  "named logarithm: shannon, tsallis, kaniadakis, abe, gamma, "
                  "kls");
  cmd->add_option("--log-t", cfg.log_t, "Tsallis t");
  cmd->add_option("--log-kappa", cfg.log_kappa, "Kaniadakis / KLS kappa");
  cmd->add_option("--log-z", cfg.log_z, "Abe z");
  cmd->add_option("--log-gamma", cfg.log_gamma, "gamma-family parameter");
  cmd->add_option("--log-r", cfg.log_r, "KLS r");
  cmd->add_option("--floor", cfg.floor,
                  "lift input components below this value before validation");
  cmd->add_flag("--canonical-sum,!--no-canonical-sum", cfg.canonical_sum,
                "accumulate sums in canonical left-to-right order (always "
                "honored; recorded in reports)");
  cmd->add_option("--seed", cfg.seed_opt,
                  "64-bit seed for generated inputs (fallback: DIVGRAD_SEED)");
}

std::uint64_t resolve_seed(const CommonConfig& cfg) {
  if (cfg.seed_opt) return *cfg.seed_opt;
  if (const char* env = std::getenv("DIVGRAD_SEED")) {
    return std::strtoull(env, nullptr, 10);
  }
  return 42;
}

struct Resolved {
  bool taneja = false;
  Family family = Family::alpha;
  Variant variant = Variant::base;
  DivergenceParams params;
  LogParams log_params = LogParams::natural_log();
  // No logarithm requested: report the raw divergence value directly from
  // its split instead of the (2, 1) transform, which agrees only to
  // round-off.
  bool plain = false;
};

[[noreturn]] void config_error(const std::string& msg) {
  throw CLI::ValidationError("config", msg);
}

Resolved resolve(const CommonConfig& cfg) {
  Resolved r;
  r.params.alpha = cfg.alpha;
  r.params.beta = cfg.beta;

  if (cfg.family == "taneja") {
    r.taneja = true;
    if (cfg.variant != "base") {
      config_error("the taneja family supports the base variant only");
    }
    return r;
  }

  if (cfg.family == "alpha") r.family = Family::alpha;
  else if (cfg.family == "beta") r.family = Family::beta;
  else if (cfg.family == "alphabeta") r.family = Family::alpha_beta;
  else if (cfg.family == "gh") r.family = Family::gh;
  else if (cfg.family == "ag") r.family = Family::ag;
  else if (cfg.family == "ah") r.family = Family::ah;
  else if (cfg.family == "f") r.family = Family::f;
  else if (cfg.family == "g") r.family = Family::g;
  else if (cfg.family == "dual_kl") r.family = Family::dual_kl;
  else config_error("unknown family: " + cfg.family);

  const bool star_family =
      r.family == Family::gh || r.family == Family::ag ||
      r.family == Family::ah || r.family == Family::f ||
      r.family == Family::g || r.family == Family::dual_kl;

  if (cfg.variant == "base") {
    r.variant = Variant::base;
  } else if (cfg.variant == "invariant") {
    r.variant = Variant::invariant;
  } else if (cfg.variant == "star") {
    if (!star_family) {
      config_error("the star variant exists for the K*-normalized families "
                   "(gh, ag, ah, f, g, dual_kl) only");
    }
    r.variant = Variant::invariant;
  } else if (cfg.variant == "nominal") {
    if (r.family != Family::dual_kl) {
      config_error("the nominal variant exists for the dual_kl family only");
    }
    r.variant = Variant::nominal;
  } else {
    config_error("unknown variant: " + cfg.variant);
  }

  // Deformed-log parameters.  Without explicit parameters the split families
  // evaluate the plain divergence (the (2, 1) collapse) and the
  // logarithm-based families keep the natural logarithm.
  const bool log_based = r.family == Family::f || r.family == Family::g ||
                         r.family == Family::dual_kl;
  if (cfg.log_a || cfg.log_b) {
    if (!cfg.log_a || !cfg.log_b) {
      config_error("--log-a and --log-b must be given together");
    }
    r.log_params = LogParams::deformed(*cfg.log_a, *cfg.log_b);
  } else if (!cfg.log_family.empty()) {
    if (cfg.log_family == "shannon") {
      r.log_params = make_params(FamilyParams::shannon());
    } else if (cfg.log_family == "tsallis") {
      r.log_params = make_params(FamilyParams::tsallis(cfg.log_t));
    } else if (cfg.log_family == "kaniadakis") {
      r.log_params = make_params(FamilyParams::kaniadakis(cfg.log_kappa));
    } else if (cfg.log_family == "abe") {
      r.log_params = make_params(FamilyParams::abe(cfg.log_z));
    } else if (cfg.log_family == "gamma") {
      r.log_params = make_params(FamilyParams::gamma_family(cfg.log_gamma));
    } else if (cfg.log_family == "kls") {
      r.log_params = make_params(FamilyParams::kls(cfg.log_r, cfg.log_kappa));
    } else {
      config_error("unknown log family: " + cfg.log_family);
    }
  } else if (!log_based) {
    r.log_params = LogParams::deformed(2.0, 1.0);
    r.plain = true;
  }
  return r;
}

/// Raw (untransformed) divergence value straight from the split machinery.
double plain_divergence(const Resolved& r, const Field& p, const Field& q) {
  if (r.variant == Variant::base) {
    switch (r.family) {
      case Family::alpha: return alpha_split(p, q, r.params).value();
      case Family::beta: return beta_split(p, q, r.params).value();
      case Family::alpha_beta: return alphabeta_split(p, q, r.params).value();
      case Family::gh:
        return mean_split(MeanKind::gh, p, q, r.params.alpha).value();
      case Family::ag:
        return mean_split(MeanKind::ag, p, q, r.params.alpha).value();
      case Family::ah:
        return mean_split(MeanKind::ah, p, q, r.params.alpha).value();
      default:
        break;
    }
  } else if (r.family == Family::alpha || r.family == Family::beta ||
             r.family == Family::alpha_beta) {
    return invariant_split(r.family, p, q, r.params).value();
  } else if (r.family == Family::gh || r.family == Family::ag ||
             r.family == Family::ah) {
    const InvariantFamily fam = r.family == Family::gh ? InvariantFamily::gh
                                : r.family == Family::ag
                                    ? InvariantFamily::ag
                                    : InvariantFamily::ah;
    return invariant_value(fam, p, q, r.params.alpha);
  }
  config_error("no plain form for this family/variant combination");
}

json log_json(const LogParams& lp) {
  json j;
  if (lp.natural) {
    j["natural"] = true;
  } else {
    j["natural"] = false;
    j["a"] = lp.a;
    j["b"] = lp.b;
  }
  return j;
}

Field load_field(const std::string& path, const std::optional<double>& floor) {
  std::vector<double> v = read_vector(path);
  if (floor) {
    for (double& x : v) x = std::max(x, *floor);
  }
  return Field(std::move(v));
}

Field random_field(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(0.1, 10.0);
  std::vector<double> v(n);
  for (double& x : v) x = dist(rng);
  return Field(std::move(v));
}

Field scaled(const Field& f, double lambda) {
  std::vector<double> v = f.values();
  for (double& x : v) x *= lambda;
  return Field(std::move(v));
}

void emit(const json& report, const std::optional<std::string>& out_path) {
  const std::string text = report.dump(2) + "\n";
  if (out_path) {
    std::ofstream out(*out_path);
    if (!out) throw Error("cannot write report to " + *out_path);
    out << text;
  } else {
    std::cout << text;
  }
}

double stationarity_residual(const Field& q, const std::vector<double>& grad) {
  double num = 0.0, den = 0.0;
  for (std::size_t j = 0; j < q.size(); ++j) {
    num += q[j] * grad[j];
    den += std::abs(q[j] * grad[j]);
  }
  return den > 0.0 ? std::abs(num) / den : std::abs(num);
}

// ---------------------------------------------------------------------------
// eval

int run_eval(const CommonConfig& cfg, const std::string& p_path,
             const std::string& q_path,
             const std::optional<std::string>& out_path) {
  const Resolved r = resolve(cfg);
  const Field p = load_field(p_path, cfg.floor);
  const Field q = load_field(q_path, cfg.floor);

  json report;
  report["command"] = "eval";
  report["family"] = cfg.family;
  report["variant"] = cfg.variant;
  report["alpha"] = cfg.alpha;
  report["beta"] = cfg.beta;
  if (r.taneja) {
    report["r"] = cfg.taneja_r;
    report["s"] = cfg.taneja_s;
  }
  report["log"] = r.taneja ? json(nullptr) : log_json(r.log_params);
  report["canonical_sum"] = cfg.canonical_sum;
  report["seed"] = resolve_seed(cfg);
  report["n"] = p.size();

  if (r.taneja) {
    report["value"] = taneja_rs(p, q, cfg.alpha, cfg.taneja_r, cfg.taneja_s);
    report["case_tag"] = nullptr;
    report["strict"] = nullptr;
    report["stationarity_residual"] = nullptr;
    report["grad"] = nullptr;
    report["U"] = nullptr;
    report["V"] = nullptr;
    emit(report, out_path);
    return 0;
  }

  const double value =
      r.plain ? plain_divergence(r, p, q)
              : ld_divergence_value(r.family, r.variant, p, q, r.params,
                                    r.log_params);
  const GradientDecomposition gd =
      ld_gradient(r.family, r.variant, p, q, r.params, r.log_params);

  report["value"] = value;
  report["case_tag"] = to_string(gd.case_tag);
  report["strict"] = gd.strict;
  report["stationarity_residual"] = stationarity_residual(q, gd.grad);
  report["grad"] = gd.grad;
  report["U"] = gd.U;
  report["V"] = gd.V;
  emit(report, out_path);
  return 0;
}

// ---------------------------------------------------------------------------
// check

struct CheckOutcome {
  json rows = json::array();
  bool all_pass = true;

  void add(const std::string& name, double residual, double tolerance) {
    const bool pass = residual <= tolerance;
    json row;
    row["name"] = name;
    row["residual"] = residual;
    row["tolerance"] = tolerance;
    row["pass"] = pass;
    rows.push_back(row);
    all_pass = all_pass && pass;
  }
};

double max_rel_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double scale = 1.0, worst = 0.0;
  for (double v : a) scale = std::max(scale, std::abs(v));
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a[i] - b[i]));
  }
  return worst / scale;
}

int run_check(const CommonConfig& cfg,
              const std::optional<std::string>& p_path,
              const std::optional<std::string>& q_path,
              const std::optional<std::string>& out_path,
              bool corrupt_gradient) {
  const Resolved r = resolve(cfg);
  if (r.taneja) config_error("check does not support the taneja family");
  const std::uint64_t seed = resolve_seed(cfg);

  const Field p =
      p_path ? load_field(*p_path, cfg.floor) : random_field(8, seed);
  const Field q =
      q_path ? load_field(*q_path, cfg.floor) : random_field(8, seed + 1);

  CheckOutcome out;

  GradientDecomposition gd =
      ld_gradient(r.family, r.variant, p, q, r.params, r.log_params);
  if (corrupt_gradient) {
    gd.grad[0] += 1e-3 * (1.0 + std::abs(gd.grad[0]));
  }

  // Analytic gradient against central differences.
  const auto fd = fd_gradient(
      [&](const Field& qq) {
        return ld_divergence_value(r.family, r.variant, p, qq, r.params,
                                   r.log_params);
      },
      q);
  out.add("fd_gradient", max_rel_diff(gd.grad, fd), 1e-5);

  // U - V = -grad, componentwise.
  double uv = 0.0;
  double min_uv = gd.U.empty() ? 0.0 : gd.U[0];
  for (std::size_t j = 0; j < gd.grad.size(); ++j) {
    const double scale = gd.U[j] + gd.V[j] + std::abs(gd.grad[j]) + 1e-300;
    uv = std::max(uv, std::abs(gd.U[j] - gd.V[j] + gd.grad[j]) / scale);
    min_uv = std::min(min_uv, std::min(gd.U[j], gd.V[j]));
  }
  out.add("uv_consistency", uv, 1e-10);
  if (gd.strict) {
    // Strict decompositions need every component of U and V above zero.
    out.add("uv_strict_positivity", min_uv > 0.0 ? 0.0 : 1.0 - min_uv, 0.0);
  } else {
    out.add("uv_nonnegativity", std::max(0.0, -min_uv), 0.0);
  }

  if (r.variant != Variant::base) {
    out.add("stationarity", stationarity_residual(q, gd.grad), 1e-8);
    const double base =
        ld_divergence_value(r.family, r.variant, p, q, r.params, r.log_params);
    double worst = 0.0;
    for (double lambda : {0.1, 3.0, 10.0}) {
      const double v = ld_divergence_value(r.family, r.variant, p,
                                           scaled(q, lambda), r.params,
                                           r.log_params);
      worst = std::max(worst,
                       std::abs(v - base) / (1.0 + std::abs(base)));
    }
    out.add("scale_invariance", worst, 1e-9);
  }

  const bool has_nominal =
      r.family == Family::alpha || r.family == Family::beta ||
      r.family == Family::alpha_beta || r.family == Family::dual_kl;
  if (has_nominal) {
    const double k0 = nominal_factor(r.family, p, q, r.params).value;
    const LogParams plain = r.family == Family::dual_kl
                                ? LogParams::natural_log()
                                : LogParams::deformed(2.0, 1.0);
    const double kstar = star_factor(p, q).value;
    const double scanned = scan_minimize(
        [&](double k) {
          return ld_divergence_value(r.family, Variant::base, p,
                                     scaled(q, k), r.params, plain);
        },
        kstar / 100.0, kstar * 100.0);
    out.add("nominal_optimality", std::abs(k0 - scanned) / k0, 1e-6);

    auto factor = [&](const Field& pp, const Field& qq) {
      return nominal_factor(r.family, pp, qq, r.params).value;
    };
    out.add("ode_residual_nominal",
            std::abs(factor_ode_residual(factor, p, q)) / k0, 1e-6);
  }

  auto star = [](const Field& pp, const Field& qq) {
    return star_factor(pp, qq).value;
  };
  out.add("ode_residual_star",
          std::abs(factor_ode_residual(star, p, q)) /
              star_factor(p, q).value,
          1e-6);

  // (2, 1) collapse: the deformed value with log_d(x) = x - 1 equals the
  // plain divergence.
  if (r.family != Family::f && r.family != Family::g &&
      r.family != Family::dual_kl && r.variant != Variant::nominal) {
    const double collapsed = ld_divergence_value(
        r.family, r.variant, p, q, r.params, LogParams::deformed(2.0, 1.0));
    const double direct = plain_divergence(r, p, q);
    out.add("collapse_21",
            std::abs(collapsed - direct) / (1.0 + std::abs(direct)), 1e-12);
  }

  // Deformed logarithm tends to ln x with second-order error.
  {
    const double eps = 1e-3;
    const LogParams lim = LogParams::deformed(1.0 + eps, 1.0 - eps);
    double worst = 0.0;
    for (double x = 0.1; x <= 10.0; x += 0.1) {
      const double lx = std::log(x);
      const double excess = std::abs(log_d(x, lim) - lx) -
                            eps * eps * std::abs(lx * lx * lx);
      worst = std::max(worst, excess);
    }
    out.add("deformed_log_limit", std::max(0.0, worst), 1e-14);
  }

  json report;
  report["command"] = "check";
  report["family"] = cfg.family;
  report["variant"] = cfg.variant;
  report["alpha"] = cfg.alpha;
  report["beta"] = cfg.beta;
  report["log"] = log_json(r.log_params);
  report["canonical_sum"] = cfg.canonical_sum;
  report["seed"] = seed;
  report["n"] = p.size();
  report["corrupt_gradient"] = corrupt_gradient;
  report["checks"] = out.rows;
  report["pass"] = out.all_pass;
  emit(report, out_path);
  return out.all_pass ? 0 : 1;
}

// ---------------------------------------------------------------------------
// solve

int run_solve(const CommonConfig& cfg, const std::string& h_path,
              const std::string& y_path,
              const std::optional<std::string>& x0_path,
              const std::optional<std::string>& out_path,
              const std::optional<std::string>& trace_path,
              const std::string& algo_name, std::optional<double> sum_c,
              int max_iters, double rel_tol) {
  const Resolved r = resolve(cfg);
  if (r.taneja) config_error("solve does not support the taneja family");

  SolverOptions opts;
  if (algo_name == "additive") opts.algorithm = Algorithm::additive;
  else if (algo_name == "preconditioned") opts.algorithm = Algorithm::preconditioned;
  else if (algo_name == "multiplicative") opts.algorithm = Algorithm::multiplicative;
  else config_error("unknown algorithm: " + algo_name);
  opts.max_iters = max_iters;
  opts.rel_tol = rel_tol;
  opts.sum_constraint = sum_c;

  if (sum_c && r.variant == Variant::base) {
    config_error("a sum constraint requires a scale-invariant divergence "
                 "(variant invariant, star or nominal)");
  }

  const MatrixData hm = read_matrix_csv(h_path);
  const Field y = load_field(y_path, cfg.floor);
  const LinearModel model(hm.rows, hm.cols, hm.values, y);

  std::vector<double> x0;
  if (x0_path) {
    x0 = read_vector(*x0_path);
  } else if (sum_c) {
    x0.assign(model.cols, *sum_c / static_cast<double>(model.cols));
  } else {
    x0.assign(model.cols, y.sum() / static_cast<double>(model.cols));
  }

  DivergenceSpec spec;
  spec.family = r.family;
  spec.variant = r.variant;
  spec.params = r.params;
  spec.log_params = r.log_params;

  std::string trace_text = "k,divergence,step,sum_x,min_x,consistency_residual\n";
  double sum_residual = 0.0;
  opts.on_iterate = [&](const IterateRecord& rec, const std::vector<double>&) {
    trace_text += std::to_string(rec.k) + "," + format_double(rec.divergence) +
                  "," + format_double(rec.step) + "," +
                  format_double(rec.sum_x) + "," + format_double(rec.min_x) +
                  "," + format_double(rec.consistency_residual) + "\n";
    if (sum_c) {
      sum_residual =
          std::max(sum_residual, std::abs(rec.sum_x - *sum_c) / *sum_c);
    }
  };

  json report;
  report["command"] = "solve";
  report["algorithm"] = algo_name;
  report["family"] = cfg.family;
  report["variant"] = cfg.variant;
  report["alpha"] = cfg.alpha;
  report["beta"] = cfg.beta;
  report["log"] = log_json(r.log_params);
  report["sum_constraint"] = sum_c ? json(*sum_c) : json(nullptr);
  report["max_iters"] = max_iters;
  report["rel_tol"] = rel_tol;
  report["canonical_sum"] = cfg.canonical_sum;
  report["seed"] = resolve_seed(cfg);
  report["rows"] = model.rows;
  report["cols"] = model.cols;

  auto finish = [&](const std::string& error, const SolveResult* res) {
    if (trace_path) {
      std::ofstream tf(*trace_path);
      if (tf) tf << trace_text;
    }
    if (res) {
      report["iterations"] = res->iterations;
      report["converged"] = res->converged;
      report["initial_divergence"] = res->initial_divergence;
      report["final_divergence"] = res->final_divergence;
      report["reduction"] =
          res->initial_divergence > 0.0
              ? (res->initial_divergence - res->final_divergence) /
                    res->initial_divergence
              : 0.0;
    } else {
      report["iterations"] = nullptr;
      report["converged"] = false;
      report["initial_divergence"] = nullptr;
      report["final_divergence"] = nullptr;
      report["reduction"] = nullptr;
    }
    report["sum_residual"] = sum_c ? json(sum_residual) : json(nullptr);
    report["error"] = error.empty() ? json(nullptr) : json(error);
    emit(report, out_path);
  };

  try {
    const SolveResult res = sgm_solve(model, spec, x0, opts);
    finish("", &res);
    return 0;
  } catch (const LineSearchFailure& e) {
    finish(e.what(), nullptr);
    return kExitSolver;
  } catch (const NonDescent& e) {
    finish(e.what(), nullptr);
    return kExitSolver;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"scale-invariant divergence toolkit"};
  app.require_subcommand(1);

  CommonConfig cfg;

  auto* eval = app.add_subcommand("eval",
                                  "evaluate a divergence and its gradient "
                                  "decomposition");
  add_common_options(eval, cfg);
  std::string p_path, q_path;
  std::optional<std::string> out_path;
  eval->add_option("--p", p_path, "data field file (one value per line)")
      ->required();
  eval->add_option("--q", q_path, "model field file (one value per line)")
      ->required();
  eval->add_option("--out", out_path, "write the JSON report here");

  auto* check = app.add_subcommand("check",
                                   "run the identity checks (gradients, "
                                   "decompositions, invariance, factors)");
  add_common_options(check, cfg);
  std::optional<std::string> cp_path, cq_path, cout_path;
  bool corrupt = false;
  check->add_option("--p", cp_path, "data field file (random if omitted)");
  check->add_option("--q", cq_path, "model field file (random if omitted)");
  check->add_option("--out", cout_path, "write the JSON report here");
  check->add_flag("--corrupt-gradient", corrupt,
                  "debug: perturb the analytic gradient to force a failure");

  auto* solve = app.add_subcommand("solve",
                                   "minimize a divergence over x > 0 for the "
                                   "linear model q = H x");
  add_common_options(solve, cfg);
  std::string h_path, y_path, algo = "preconditioned";
  std::optional<std::string> x0_path, sout_path, trace_path;
  std::optional<double> sum_c;
  int max_iters = 500;
  double rel_tol = 1e-10;
  solve->add_option("--H", h_path, "model matrix CSV (row-major)")->required();
  solve->add_option("--y", y_path, "measurement vector file")->required();
  solve->add_option("--x0", x0_path,
                    "initial estimate file (default: uniform C/n)");
  solve->add_option("--algo", algo,
                    "additive, preconditioned or multiplicative")
      ->capture_default_str();
  solve->add_option("--sum", sum_c, "sum constraint C on the solution");
  solve->add_option("--max-iter", max_iters, "iteration budget")
      ->capture_default_str();
  solve->add_option("--tol", rel_tol, "relative decrease tolerance")
      ->capture_default_str();
  solve->add_option("--out", sout_path, "write the summary JSON here");
  solve->add_option("--trace", trace_path, "write the iteration trace CSV here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (eval->parsed()) return run_eval(cfg, p_path, q_path, out_path);
    if (check->parsed()) {
      return run_check(cfg, cp_path, cq_path, cout_path, corrupt);
    }
    return run_solve(cfg, h_path, y_path, x0_path, sout_path, trace_path,
                     algo, sum_c, max_iters, rel_tol);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ParamError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  }
}
