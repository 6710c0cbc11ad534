#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "divgrad/invariance.hpp"
#include "divgrad/verify.hpp"
#include "support/oracles.hpp"

using namespace divgrad;
using Catch::Approx;

TEST_CASE("fd_gradient against analytic derivatives") {
  auto sumsq = [](const Field& q) {
    double s = 0.0;
    for (double v : q) s += v * v;
    return s;
  };
  const auto g = fd_gradient(sumsq, Field({1.0, 2.0}));
  CHECK(g[0] == Approx(2.0).epsilon(1e-6));
  CHECK(g[1] == Approx(4.0).epsilon(1e-6));

  auto constant = [](const Field&) { return 7.0; };
  for (double v : fd_gradient(constant, Field({1.0, 2.0, 3.0}))) {
    CHECK(v == Approx(0.0).margin(1e-9));
  }

  auto sumlog = [](const Field& q) {
    double s = 0.0;
    for (double v : q) s += std::log(v);
    return s;
  };
  CHECK(fd_gradient(sumlog, Field({2.0}))[0] == Approx(0.5).epsilon(1e-6));

  CHECK_THROWS_AS(fd_gradient(sumsq, Field({1.0}), FDSpec{-1.0}), ParamError);
}

TEST_CASE("scan_minimize") {
  auto parabola = [](double k) { return (k - 2.0) * (k - 2.0); };
  CHECK(scan_minimize(parabola, 0.5, 10.0) == Approx(2.0).epsilon(1e-7));

  auto monotone = [](double k) { return k; };
  CHECK_THROWS_AS(scan_minimize(monotone, 0.5, 10.0), BracketError);
  auto decreasing = [](double k) { return -k; };
  CHECK_THROWS_AS(scan_minimize(decreasing, 0.5, 10.0), BracketError);

  // The scanned argmin of K -> D_beta(p || K q) matches the closed form.
  const Field p = oracle::random_field(8, 71);
  const Field q = oracle::random_field(8, 72);
  DivergenceParams dp;
  dp.beta = 2.0;
  const double k0 = nominal_factor(Family::beta, p, q, dp).value;
  const double scanned = scan_minimize(
      [&](double k) {
        return oracle::beta_value(p, oracle::scaled(q, k), 2.0);
      },
      k0 / 50.0, k0 * 50.0);
  CHECK(scanned == Approx(k0).epsilon(1e-6));
}
