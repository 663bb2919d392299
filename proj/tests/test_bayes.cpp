#include <cmath>
#include <vector>

#include "doctest.h"
#include "skelshrink/bayes.hpp"
#include "skelshrink/errors.hpp"
#include "skelshrink/prior.hpp"
#include "skelshrink/skellam.hpp"

using namespace skelshrink;

namespace {

// Independent fine-grid trapezoid oracle for posterior expectations,
// deliberately using only pmf() and the raw prior shape.
double trapezoid_posterior(std::int64_t y, double s, const Prior& prior,
                           double (*fn)(double), int nodes = 1000001) {
  const double h = 2.0 * s / (nodes - 1);
  double num = 0.0, den = 0.0;
  for (int i = 0; i < nodes; ++i) {
    const double x = -s + h * i;
    const double lp =
        prior.family == PriorFamily::gaussian
            ? -0.5 * x * x / (prior.sigma_x * prior.sigma_x)
            : -std::sqrt(2.0) * std::fabs(x) / prior.sigma_x;
    const double w = (i == 0 || i == nodes - 1) ? 0.5 : 1.0;
    const double lik = pmf(y, SkellamParams{x, s});
    num += w * fn(x) * lik * std::exp(lp);
    den += w * lik * std::exp(lp);
  }
  return num / den;
}

double id_fn(double x) { return x; }
double sign_fn(double x) { return x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0); }

const Prior kGauss32{PriorFamily::gaussian, std::sqrt(32.0), 100.0};
const Prior kLap32{PriorFamily::laplace, std::sqrt(32.0), 100.0};

}  // namespace

TEST_SUITE_BEGIN("bayes");

TEST_CASE("quadrature integrates the normalized prior to one") {
  for (const auto family : {PriorFamily::gaussian, PriorFamily::laplace}) {
    for (const double s : {10.0, 100.0}) {
      for (const double sx : {0.5, 3.0, 20.0, 500.0}) {
        const Prior prior{family, sx, s};
        const auto q = build_posterior_quadrature(s, sx);
        double total = 0.0;
        for (std::size_t i = 0; i < q.node.size(); ++i) {
          total += q.weight[i] * std::exp(prior_log_density(prior, q.node[i]));
        }
        CHECK(std::fabs(total - 1.0) < 1e-10);
      }
    }
  }
}

TEST_CASE("posterior mean basics") {
  CHECK(posterior_mean(0, 100.0, kGauss32) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(posterior_mean(0, 100.0, kLap32) == doctest::Approx(0.0).epsilon(1e-9));
  for (const std::int64_t y : {1L, 5L, 22L, 60L}) {
    CHECK(posterior_mean(-y, 100.0, kLap32) ==
          doctest::Approx(-posterior_mean(y, 100.0, kLap32)).epsilon(1e-10));
  }
  CHECK_THROWS_AS(posterior_mean(1, 0.0, kGauss32), ParameterDomainError);
}

TEST_CASE("posterior mean against the fine-grid trapezoid oracle") {
  const double v = posterior_mean(10, 100.0, kGauss32);
  // frozen from a high-precision quadrature of the same integrals
  CHECK(std::fabs(v - 2.4292480978479116) < 1e-6);
  CHECK(std::fabs(v - trapezoid_posterior(10, 100.0, kGauss32, id_fn)) < 1e-6);
  const double vl = posterior_mean(7, 40.0, kLap32.rebound(40.0));
  CHECK(std::fabs(vl - trapezoid_posterior(7, 40.0, kLap32.rebound(40.0),
                                           id_fn)) < 1e-6);
}

TEST_CASE("posterior mean converges under node doubling") {
  for (const std::int64_t y : {0L, 3L, 10L, 41L}) {
    const double a = posterior_mean(y, 100.0, kGauss32, 32);
    const double b = posterior_mean(y, 100.0, kGauss32, 64);
    CHECK(std::fabs(a - b) < 1e-8);
    const double c = posterior_mean(y, 10.0, kLap32.rebound(10.0), 32);
    const double d = posterior_mean(y, 10.0, kLap32.rebound(10.0), 64);
    CHECK(std::fabs(c - d) < 1e-8);
  }
}

TEST_CASE("posterior sign gap") {
  CHECK(posterior_sign_gap(0, 100.0, kLap32) ==
        doctest::Approx(0.0).epsilon(1e-9));
  for (const std::int64_t y : {2L, 11L, 30L}) {
    CHECK(posterior_sign_gap(-y, 100.0, kLap32) ==
          doctest::Approx(-posterior_sign_gap(y, 100.0, kLap32)).epsilon(1e-9));
  }
  const double g = posterior_sign_gap(30, 100.0, kLap32);
  CHECK(std::fabs(g - 0.83399665465064385) < 1e-6);  // frozen oracle value
  CHECK(std::fabs(g - trapezoid_posterior(30, 100.0, kLap32, sign_fn)) < 1e-6);
  CHECK(g <= 1.0);
  CHECK(g >= -1.0);
}

TEST_CASE("exact laplace rule composes the sign gap") {
  CHECK(shrink_sb_laplace_exact(0, 100.0, kLap32) == 0.0);
  const double v = shrink_sb_laplace_exact(30, 100.0, kLap32);
  CHECK(std::fabs(v - 9.1500836337339038) < 2e-5);  // frozen composition
  CHECK(shrink_sb_laplace_exact(-30, 100.0, kLap32) ==
        doctest::Approx(-v).epsilon(1e-9));
  CHECK_THROWS_AS(shrink_sb_laplace_exact(3, 100.0, kGauss32),
                  ParameterDomainError);
}

TEST_CASE("linear rule arithmetic") {
  CHECK(shrink_sbg(10, 100.0, 10.0) == doctest::Approx(5.0));
  CHECK(shrink_sbg(10, 100.0, 1e9) == doctest::Approx(10.0).epsilon(1e-6));
  CHECK(shrink_sbg(10, 100.0, 0.0) == 0.0);
  CHECK(shrink_sbg(0, 0.0, 3.0) == 0.0);
}

TEST_CASE("soft threshold rule arithmetic") {
  const double sx = std::sqrt(32.0);
  CHECK(shrink_sbt(10, 100.0, sx) == 0.0);   // threshold 25
  CHECK(shrink_sbt(30, 100.0, sx) == doctest::Approx(5.0));
  CHECK(shrink_sbt(-30, 100.0, sx) == doctest::Approx(-5.0));
  CHECK(shrink_sbt(0, 0.0, sx) == 0.0);
}

TEST_CASE("slope at the origin") {
  const double slope = slope_origin(100.0, kLap32);
  CHECK(slope == doctest::Approx(posterior_mean(1, 100.0, kLap32)));
  // odd symmetry: slope equals the centered difference at the origin
  const double centered = 0.5 * (posterior_mean(1, 100.0, kLap32) -
                                 posterior_mean(-1, 100.0, kLap32));
  CHECK(std::fabs(slope - centered) < 1e-10);
  CHECK(std::fabs(slope - 0.19380362218267517) < 1e-6);  // frozen oracle
  CHECK(slope > 0.0);
  CHECK(slope < 100.0);
}

TEST_CASE("piecewise-linear rule branches") {
  CHECK(shrink_sbl(0, 100.0, kLap32) == 0.0);
  // large |y|: the threshold branch wins and SBL == SBT
  CHECK(shrink_sbl(80, 100.0, kLap32) ==
        doctest::Approx(shrink_sbt(80, 100.0, kLap32.sigma_x)));
  // y = 1: slope branch wins when slope > 1 - threshold
  const double slope = slope_origin(100.0, kLap32);
  CHECK(shrink_sbl(1, 100.0, kLap32) == doctest::Approx(slope));
}

TEST_CASE("score-projection estimate and bound") {
  CHECK(std::fabs(theorem2_estimate(0, 100.0, kGauss32)) < 1e-9);
  const double est = theorem2_estimate(10, 100.0, kGauss32);
  CHECK(std::fabs(est - 2.4085996942252762) < 1e-6);  // frozen oracle
  // the bound dominates the squared gap on a grid
  for (const auto family : {PriorFamily::gaussian, PriorFamily::laplace}) {
    for (const double vx : {8.0, 32.0, 128.0}) {
      const Prior prior{family, std::sqrt(vx), 0.0};
      for (const double s : {10.0, 100.0}) {
        for (std::int64_t y = -2 * static_cast<std::int64_t>(s);
             y <= 2 * static_cast<std::int64_t>(s); y += 17) {
          const Prior pr = prior.rebound(s);
          const double gap = posterior_mean(y, s, pr) -
                             theorem2_estimate(y, s, pr);
          CHECK(gap * gap <= theorem2_bound(y, s, pr) + 1e-12);
        }
      }
    }
  }
}

TEST_CASE("truncated variance closed forms match quadrature") {
  // frozen high-precision references at sigma_x = 6, support = 10
  CHECK(truncated_variance({PriorFamily::gaussian, 6.0, 10.0}) ==
        doctest::Approx(22.801191974644137).epsilon(1e-10));
  CHECK(truncated_variance({PriorFamily::laplace, 6.0, 10.0}) ==
        doctest::Approx(16.662849247618839).epsilon(1e-10));
  // quadrature cross-check at several shapes
  for (const auto family : {PriorFamily::gaussian, PriorFamily::laplace}) {
    for (const double sx : {0.8, 3.0, 12.0}) {
      for (const double s : {5.0, 60.0}) {
        const Prior prior{family, sx, s};
        const auto q = build_posterior_quadrature(s, sx);
        double m2 = 0.0;
        for (std::size_t i = 0; i < q.node.size(); ++i) {
          m2 += q.weight[i] * q.node[i] * q.node[i] *
                std::exp(prior_log_density(prior, q.node[i]));
        }
        CHECK(std::fabs(truncated_variance(prior) - m2) < 1e-8 * m2 + 1e-10);
      }
    }
  }
}

TEST_CASE("truncated variance limits") {
  for (const auto family : {PriorFamily::gaussian, PriorFamily::laplace}) {
    const double sx = 2.5;
    const Prior wide{family, sx, 20.0 * sx};
    CHECK(std::fabs(truncated_variance(wide) - sx * sx) < 1e-6 * sx * sx);
    for (const double sxv : {0.3, 4.0, 70.0}) {
      const double v = truncated_variance({family, sxv, 15.0});
      CHECK(v > 0.0);
      CHECK(v < sxv * sxv);
      CHECK(v < 15.0 * 15.0 / 3.0);
    }
  }
  // uniform limit: sigma_x >> support drives the variance to support^2/3
  CHECK(truncated_variance({PriorFamily::gaussian, 1e8, 9.0}) ==
        doctest::Approx(27.0).epsilon(1e-6));
  CHECK(truncated_variance({PriorFamily::laplace, 1e8, 9.0}) ==
        doctest::Approx(27.0).epsilon(1e-6));
}

TEST_CASE("scale solving inverts the variance map") {
  for (const auto family : {PriorFamily::gaussian, PriorFamily::laplace}) {
    for (const double sx : {0.7, 5.0, 40.0}) {
      const Prior prior{family, sx, 50.0};
      const double target = truncated_variance(prior);
      const double back = solve_scale(target, 50.0, family);
      CHECK(std::fabs(back - sx) < 1e-6 * sx);
    }
  }
  // large-support regime: sigma_x^2 ~ target
  const double sx = solve_scale(32.0, 100.0, PriorFamily::gaussian);
  CHECK(std::fabs(sx - 5.6568542494923802) < 1e-7);  // frozen root
  CHECK(std::fabs(sx * sx - 32.0) < 1e-6 * 32.0);
  CHECK_THROWS_AS(solve_scale(40.0, 10.0, PriorFamily::gaussian),
                  InfeasibleTargetError);  // 40 > 100/3
  CHECK_THROWS_AS(solve_scale(-1.0, 10.0, PriorFamily::gaussian),
                  ParameterDomainError);
}

TEST_CASE("shrinkage rules are sign-equivariant and dominated") {
  const double s = 64.0;
  for (std::int64_t y = -80; y <= 80; y += 7) {
    for (const double sx : {1.0, 6.0, 25.0}) {
      const Prior lp{PriorFamily::laplace, sx, s};
      const double ay = std::fabs(static_cast<double>(y));
      CHECK(shrink_sbg(-y, s, sx) == -shrink_sbg(y, s, sx));
      CHECK(shrink_sbt(-y, s, sx) == -shrink_sbt(y, s, sx));
      CHECK(shrink_sbl(-y, s, lp) == doctest::Approx(-shrink_sbl(y, s, lp)));
      CHECK(std::fabs(shrink_sbg(y, s, sx)) <= ay);
      CHECK(std::fabs(shrink_sbt(y, s, sx)) <= ay);
      CHECK(std::fabs(shrink_sbl(y, s, lp)) <= std::max(ay, s) + 1e-12);
      CHECK(std::fabs(posterior_mean(y, s, lp)) <= s);
    }
  }
}

TEST_CASE("piecewise-linear rule tracks the exact mean better than the threshold") {
  // near the origin SBL matches the posterior-mean slope by construction
  const double s = 100.0;
  double max_sbl = 0.0, max_sbt = 0.0;
  for (std::int64_t y = -60; y <= 60; ++y) {
    const double sb = posterior_mean(y, s, kLap32);
    max_sbl = std::max(max_sbl, std::fabs(shrink_sbl(y, s, kLap32) - sb));
    max_sbt =
        std::max(max_sbt, std::fabs(shrink_sbt(y, s, kLap32.sigma_x) - sb));
  }
  CHECK(max_sbl <= max_sbt);
}

TEST_SUITE_END();
