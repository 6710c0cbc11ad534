#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "divgrad/divergences.hpp"
#include "divgrad/verify.hpp"
#include "support/oracles.hpp"

using namespace divgrad;
using Catch::Approx;

namespace {

DivergenceParams ab(double alpha, double beta = 2.0) {
  DivergenceParams dp;
  dp.alpha = alpha;
  dp.beta = beta;
  return dp;
}

/// Check dA/dB of a split against central differences of A(q)/B(q).
template <typename SplitFn>
void check_split_derivatives(SplitFn&& split, const Field& p, const Field& q) {
  const BaseSplit s = split(p, q);
  const auto fdA = fd_gradient(
      [&](const Field& qq) { return split(p, qq).A; }, q);
  const auto fdB = fd_gradient(
      [&](const Field& qq) { return split(p, qq).B; }, q);
  CHECK(oracle::max_rel_diff(s.dA, fdA) < 1e-5);
  CHECK(oracle::max_rel_diff(s.dB, fdB) < 1e-5);
}

}  // namespace

TEST_CASE("alpha split: frozen cases") {
  const Field ones({1.0, 1.0, 1.0});
  CHECK(alpha_split(ones, ones, ab(0.5)).value() == Approx(0.0).margin(1e-14));

  const BaseSplit c1 = alpha_split(Field({4.0}), Field({1.0}), ab(0.5));
  CHECK(c1.case_tag == CaseTag::alpha_1);
  CHECK(c1.A == Approx(10.0));
  CHECK(c1.B == Approx(8.0));
  CHECK(c1.value() == Approx(2.0));

  const BaseSplit c2 = alpha_split(Field({1.0}), Field({2.0}), ab(2.0));
  CHECK(c2.case_tag == CaseTag::alpha_2);
  CHECK(c2.A == Approx(1.25));
  CHECK(c2.B == Approx(1.0));
  CHECK(c2.value() == Approx(0.25));

  const BaseSplit c3 = alpha_split(Field({1.0}), Field({2.0}), ab(-1.0));
  CHECK(c3.case_tag == CaseTag::alpha_3);
  CHECK(c3.A == Approx(2.5));
  CHECK(c3.B == Approx(2.0));
  CHECK(c3.value() == Approx(0.5));
}

TEST_CASE("alpha split: A - B reproduces the divergence") {
  for (double al : {0.5, 0.25, 2.0, 3.5, -1.0, -0.3}) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const Field p = oracle::random_field(8, 1000 + seed);
      const Field q = oracle::random_field(8, 5000 + seed);
      const BaseSplit s = alpha_split(p, q, ab(al));
      const double direct = oracle::alpha_value(p, q, al);
      CHECK(s.A > 0.0);
      CHECK(s.B > 0.0);
      CHECK(s.value() == Approx(direct).epsilon(1e-12).margin(1e-12));
      CHECK(s.value() >= -1e-12 * (s.A + s.B));
    }
  }
}

TEST_CASE("alpha split: derivatives match finite differences") {
  for (double al : {0.5, 2.0, -1.0}) {
    const Field p = oracle::random_field(8, 11);
    const Field q = oracle::random_field(8, 17);
    check_split_derivatives(
        [&](const Field& pp, const Field& qq) {
          return alpha_split(pp, qq, ab(al));
        },
        p, q);
  }
}

TEST_CASE("alpha split: exclusion zones and shape errors") {
  const Field p({1.0});
  CHECK_THROWS_AS(alpha_split(p, p, ab(0.0)), ParamError);
  CHECK_THROWS_AS(alpha_split(p, p, ab(1.0 + 1e-9)), ParamError);
  CHECK_THROWS_AS(alpha_split(p, Field({1.0, 2.0}), ab(0.5)), ShapeError);
}

TEST_CASE("beta split: frozen cases") {
  const Field p3({3.0}), p1({1.0}), q1({1.0}), q4({4.0});
  const BaseSplit c2 = beta_split(p3, q1, ab(0.5, 2.0));
  CHECK(c2.case_tag == CaseTag::beta_2);
  CHECK(c2.value() == Approx(2.0));  // half squared distance

  const BaseSplit c1 = beta_split(p1, q4, ab(0.5, 0.5));
  CHECK(c1.case_tag == CaseTag::beta_1);
  CHECK(c1.A == Approx(5.0));
  CHECK(c1.B == Approx(4.0));

  const Field ones({1.0, 1.0});
  CHECK(beta_split(ones, ones, ab(0.5, 2.0)).value() ==
        Approx(0.0).margin(1e-14));
}

TEST_CASE("beta split: A - B reproduces the divergence") {
  for (double be : {0.5, 0.2, 2.0, 3.0, -1.0, -0.4}) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const Field p = oracle::random_field(8, 2000 + seed);
      const Field q = oracle::random_field(8, 6000 + seed);
      const BaseSplit s = beta_split(p, q, ab(0.5, be));
      CHECK(s.A > 0.0);
      CHECK(s.B > 0.0);
      CHECK(s.value() >= -1e-12 * (s.A + s.B));
      CHECK(s.value() ==
            Approx(oracle::beta_value(p, q, be)).epsilon(1e-12).margin(1e-12));
    }
  }
}

TEST_CASE("beta split: derivatives match finite differences") {
  for (double be : {0.5, 2.0, -1.0}) {
    const Field p = oracle::random_field(8, 23);
    const Field q = oracle::random_field(8, 29);
    check_split_derivatives(
        [&](const Field& pp, const Field& qq) {
          return beta_split(pp, qq, ab(0.5, be));
        },
        p, q);
  }
}

TEST_CASE("alpha-beta split: all feasible cases") {
  struct Case {
    double alpha, beta;
    CaseTag tag;
  };
  const std::vector<Case> cases = {
      {2.0, 2.0, CaseTag::ab_1},      {1.5, 0.25, CaseTag::ab_2},
      {0.5, 0.25, CaseTag::ab_4},     {-1.0, 3.0, CaseTag::ab_1bis},
      {-1.0, 1.5, CaseTag::ab_3bis},  {-0.5, 0.5, CaseTag::ab_4bis},
  };
  for (const auto& c : cases) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const Field p = oracle::random_field(8, 3000 + seed);
      const Field q = oracle::random_field(8, 7000 + seed);
      const BaseSplit s = alphabeta_split(p, q, ab(c.alpha, c.beta));
      CHECK(s.case_tag == c.tag);
      CHECK(s.A > 0.0);
      CHECK(s.B > 0.0);
      CHECK(s.value() >= -1e-12 * (s.A + s.B));
      CHECK(s.value() == Approx(oracle::alphabeta_value(p, q, c.alpha, c.beta))
                             .epsilon(1e-12)
                             .margin(1e-12));
    }
    const Field p = oracle::random_field(8, 31);
    const Field q = oracle::random_field(8, 37);
    check_split_derivatives(
        [&](const Field& pp, const Field& qq) {
          return alphabeta_split(pp, qq, ab(c.alpha, c.beta));
        },
        p, q);
  }

  const Field one({1.0});
  CHECK(alphabeta_split(one, one, ab(0.5, 2.5)).value() ==
        Approx(0.0).margin(1e-14));
  CHECK_THROWS_AS(alphabeta_split(one, one, ab(0.0, 2.0)), ParamError);
  CHECK_THROWS_AS(alphabeta_split(one, one, ab(0.5, 1.0)), ParamError);
  CHECK_THROWS_AS(alphabeta_split(one, one, ab(0.5, 0.5)), ParamError);
}

TEST_CASE("mean fields") {
  const Field p({4.0}), q({1.0});
  const MeanFields mf = mean_fields(p, q, 0.5);
  CHECK(mf.MG[0] == Approx(2.0));
  CHECK(mf.MA[0] == Approx(2.5));
  CHECK(mf.MH[0] == Approx(1.6));

  const Field r({2.0, 3.0});
  const MeanFields eq = mean_fields(r, r, 0.3);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(eq.MA[i] == Approx(r[i]));
    CHECK(eq.MG[i] == Approx(r[i]));
    CHECK(eq.MH[i] == Approx(r[i]));
  }

  // Derivatives against central differences.
  const auto fdG = fd_gradient(
      [&](const Field& qq) { return mean_fields(p, qq, 0.5).MG[0]; }, q);
  const auto fdH = fd_gradient(
      [&](const Field& qq) { return mean_fields(p, qq, 0.5).MH[0]; }, q);
  const auto fdA = fd_gradient(
      [&](const Field& qq) { return mean_fields(p, qq, 0.5).MA[0]; }, q);
  CHECK(mf.dMG[0] == Approx(fdG[0]).epsilon(1e-6));
  CHECK(mf.dMH[0] == Approx(fdH[0]).epsilon(1e-6));
  CHECK(mf.dMA[0] == Approx(fdA[0]).epsilon(1e-6));

  CHECK_THROWS_AS(mean_fields(p, q, -0.1), ParamError);
  CHECK_THROWS_AS(mean_fields(p, q, 1.1), ParamError);
}

TEST_CASE("mean inequality MH <= MG <= MA") {
  for (double al : {0.1, 0.3, 0.5, 0.8, 0.95}) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const Field p = oracle::random_field(8, 4000 + seed);
      const Field q = oracle::random_field(8, 8000 + seed);
      const MeanFields mf = mean_fields(p, q, al);
      for (std::size_t i = 0; i < p.size(); ++i) {
        CHECK(mf.MH[i] <= mf.MG[i] + 1e-12);
        CHECK(mf.MG[i] <= mf.MA[i] + 1e-12);
      }
    }
  }
}

TEST_CASE("mean splits") {
  const Field p({4.0}), q({1.0});
  CHECK(mean_split(MeanKind::gh, p, q, 0.5).value() == Approx(0.4));
  CHECK(mean_split(MeanKind::ah, p, q, 0.5).value() == Approx(0.9));

  // AG delegates to the alpha split scaled by alpha(1-alpha).
  const BaseSplit agsplit = mean_split(MeanKind::ag, p, q, 0.5);
  CHECK(agsplit.case_tag == CaseTag::mean_ag);
  CHECK(agsplit.A == Approx(2.5));  // sum MA
  CHECK(agsplit.B == Approx(2.0));  // sum MG
  CHECK(agsplit.value() == Approx(oracle::ag_value(p, q, 0.5)));
  CHECK(agsplit.value() == Approx(0.5 * 0.5 * oracle::alpha_value(p, q, 0.5)));

  const Field r({2.0, 5.0});
  for (MeanKind kind : {MeanKind::gh, MeanKind::ag, MeanKind::ah}) {
    CHECK(mean_split(kind, r, r, 0.3).value() == Approx(0.0).margin(1e-14));
  }

  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Field pp = oracle::random_field(6, 100 + seed);
    const Field qq = oracle::random_field(6, 200 + seed);
    CHECK(mean_split(MeanKind::gh, pp, qq, 0.3).value() ==
          Approx(oracle::gh_value(pp, qq, 0.3)).epsilon(1e-12).margin(1e-12));
    CHECK(mean_split(MeanKind::ah, pp, qq, 0.3).value() ==
          Approx(oracle::ah_value(pp, qq, 0.3)).epsilon(1e-12).margin(1e-12));
    CHECK(mean_split(MeanKind::ag, pp, qq, 0.3).value() ==
          Approx(oracle::ag_value(pp, qq, 0.3)).epsilon(1e-12).margin(1e-12));
  }
}

TEST_CASE("F divergence") {
  const Field p({2.0}), q({1.0});
  const auto [v, mf] = f_divergence(p, q, 0.5);
  CHECK(v == Approx(2.0 * std::log(4.0 / 3.0) - 0.5));
  CHECK(mf.Z[0] == Approx(4.0 / 3.0));

  const Field r({1.0, 2.5});
  CHECK(f_divergence(r, r, 0.3).first == Approx(0.0).margin(1e-14));

  // alpha = 0 reduces to Kullback-Leibler including the linear terms.
  const Field pp = oracle::random_field(8, 55);
  const Field qq = oracle::random_field(8, 66);
  double kl = 0.0;
  for (std::size_t i = 0; i < pp.size(); ++i) {
    kl += pp[i] * std::log(pp[i] / qq[i]) + qq[i] - pp[i];
  }
  CHECK(f_divergence(pp, qq, 0.0).first == Approx(kl));

  CHECK_THROWS_AS(f_divergence(p, q, 1.0), ParamError);
}

TEST_CASE("G divergence") {
  const Field p({1.0}), q({3.0});
  CHECK(g_divergence(p, q, 0.5).first == Approx(2.0 * std::log(2.0) - 1.0));

  const Field r({0.7, 1.1});
  CHECK(g_divergence(r, r, 0.4).first == Approx(0.0).margin(1e-14));

  // alpha = 0 reduces to the dual Kullback-Leibler form.
  const Field pp = oracle::random_field(8, 77);
  const Field qq = oracle::random_field(8, 88);
  CHECK(g_divergence(pp, qq, 0.0).first ==
        Approx(oracle::dual_kl_value(pp, qq)));
}

TEST_CASE("F and G divergences are non-negative") {
  for (double al : {0.0, 0.3, 0.7}) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const Field p = oracle::random_field(6, 500 + seed);
      const Field q = oracle::random_field(6, 600 + seed);
      CHECK(f_divergence(p, q, al).first >= -1e-12);
      CHECK(g_divergence(p, q, al).first >= -1e-12);
    }
  }
}

TEST_CASE("dual KL divergence") {
  const Field p({1.0}), q({std::exp(1.0)});
  CHECK(dual_kl(p, q) == Approx(1.0));
  const Field r({2.0, 0.3});
  CHECK(dual_kl(r, r) == Approx(0.0).margin(1e-14));
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const Field pp = oracle::random_field(4, 9000 + seed);
    const Field qq = oracle::random_field(4, 19000 + seed);
    CHECK(dual_kl(pp, qq) >= -1e-12);
  }
  CHECK_THROWS_AS(dual_kl(p, Field({1.0, 2.0})), ShapeError);
}

TEST_CASE("Taneja r,s generalization") {
  const Field p({4.0}), q({1.0});
  CHECK(taneja_rs(p, q, 0.5, 2.0, 2.0) == Approx(0.625));

  const Field r({1.5, 0.4});
  CHECK(taneja_rs(r, r, 0.5, 2.0, 2.0) == Approx(0.0).margin(1e-13));
  CHECK(taneja_rs(p, q, 1.0, 2.0, 3.0) == Approx(0.0).margin(1e-13));

  for (double rr : {0.5, 2.0, -1.0}) {
    for (double ss : {0.5, 2.0, 3.0}) {
      for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const Field pp = oracle::random_field(6, 300 + seed);
        const Field qq = oracle::random_field(6, 400 + seed);
        const double v = taneja_rs(pp, qq, 0.4, rr, ss);
        CHECK(v == Approx(oracle::taneja_value(pp, qq, 0.4, rr, ss))
                       .epsilon(1e-11)
                       .margin(1e-11));
        CHECK(v >= -1e-11);
      }
    }
  }

  CHECK_THROWS_AS(taneja_rs(p, q, 0.5, 1.0, 2.0), ParamError);
  CHECK_THROWS_AS(taneja_rs(p, q, 0.5, 2.0, 1.0), ParamError);
}

TEST_CASE("field validation") {
  CHECK_THROWS_AS(Field({1.0, 0.0}), DomainError);
  CHECK_THROWS_AS(Field({1.0, -2.0}), DomainError);
  CHECK_THROWS_AS(Field(std::vector<double>{}), ShapeError);
}
