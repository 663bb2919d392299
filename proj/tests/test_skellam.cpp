#include <cmath>
#include <vector>

#include "doctest.h"
#include "skelshrink/errors.hpp"
#include "skelshrink/skellam.hpp"

using namespace skelshrink;

namespace {

double rel_gap(double a, double b) {
  const double m = std::max(std::fabs(a), std::fabs(b));
  if (m < 1e-300) return 0.0;  // both in underflow territory
  return std::fabs(a - b) / m;
}

SkellamParams params(double x, double s) { return {x, s}; }

}  // namespace

TEST_SUITE_BEGIN("skellam");

TEST_CASE("pmf degenerate point mass") {
  CHECK(pmf(0, params(0, 0)) == 1.0);
  CHECK(pmf(1, params(0, 0)) == 0.0);
  CHECK(pmf(-3, params(0, 0)) == 0.0);
}

TEST_CASE("pmf limiting poisson at the boundary") {
  // mean == variance: all mass on the nonnegative side, Poisson(s)
  const double expect = std::exp(-3.0) * 9.0 / 2.0;
  CHECK(pmf(2, params(3, 3)) == doctest::Approx(expect).epsilon(1e-13));
  CHECK(pmf(-1, params(3, 3)) == 0.0);
  CHECK(pmf(-2, params(-3, 3)) == doctest::Approx(expect).epsilon(1e-13));
  CHECK(pmf(1, params(-3, 3)) == 0.0);
}

TEST_CASE("pmf symmetric value against the frozen series constant") {
  // e^-2 I0(2), series summed to machine tolerance
  CHECK(rel_gap(pmf(0, params(0, 2)), 0.30850832255367104) < 1e-14);
}

TEST_CASE("pmf rejects invalid parameters") {
  CHECK_THROWS_AS(pmf(0, params(4, 3)), ParameterDomainError);
  CHECK_THROWS_AS(pmf(0, params(0, -1)), ParameterDomainError);
  CHECK_THROWS_AS(pmf_series(0, -0.5, 1.0), ParameterDomainError);
}

TEST_CASE("log_pmf matches pmf") {
  CHECK(log_pmf(0, params(0, 0)) == 0.0);
  CHECK(rel_gap(log_pmf(0, params(0, 2)), std::log(0.30850832255367104)) <
        1e-13);
  for (const double s : {0.5, 2.0, 9.0, 33.0}) {
    for (const double x : {0.0, 0.4 * s, -0.7 * s}) {
      for (std::int64_t y = -12; y <= 12; ++y) {
        const double lp = log_pmf(y, params(x, s));
        CHECK(rel_gap(std::exp(lp), pmf(y, params(x, s))) < 1e-12);
      }
    }
  }
}

TEST_CASE("pmf_series basics") {
  CHECK(rel_gap(pmf_series(1, 1.0, 0.0), std::exp(-1.0)) < 1e-14);
  // frozen from the convolution series at machine tolerance
  CHECK(rel_gap(pmf_series(3, 2.0, 1.0), 0.10700541809741398) < 1e-13);
  // reflection: swapping rates mirrors the support
  for (std::int64_t k = 0; k <= 40; ++k) {
    CHECK(pmf_series(-k, 1.7, 4.2) == pmf_series(k, 4.2, 1.7));
  }
}

TEST_CASE("pmf equals series oracle on the conformance grid") {
  for (const double s : {0.5, 1.0, 5.0, 20.0, 50.0}) {
    for (const double xf : {0.0, 0.5, -0.5, 0.99, -0.99}) {
      const double x = xf * s;
      const SkellamParams p = params(x, s);
      for (std::int64_t y = -100; y <= 100; ++y) {
        const double a = pmf(y, p);
        const double b = pmf_series(y, p.plus_rate(), p.minus_rate());
        CHECK(rel_gap(a, b) < 1e-12);
      }
    }
  }
}

TEST_CASE("normalization, mean and variance of truncated sums") {
  for (const double s : {0.25, 1.0, 4.0, 12.0, 30.0}) {
    for (const double xf : {0.0, 0.6, -0.35, 0.95}) {
      const SkellamParams p = params(xf * s, s);
      const std::int64_t w = static_cast<std::int64_t>(40 + 4 * s);
      double total = 0.0, mean = 0.0, var = 0.0;
      for (std::int64_t y = -w; y <= w; ++y) {
        const double v = pmf(y, p);
        total += v;
        mean += static_cast<double>(y) * v;
      }
      for (std::int64_t y = -w; y <= w; ++y) {
        const double d = static_cast<double>(y) - p.mean;
        var += d * d * pmf(y, p);
      }
      CHECK(std::fabs(total - 1.0) < 1e-10);
      CHECK(std::fabs(mean - p.mean) < 1e-8);
      CHECK(std::fabs(var - p.variance) < 1e-8);
    }
  }
}

TEST_CASE("reflection symmetry") {
  for (const double s : {0.5, 3.0, 17.0}) {
    for (const double x : {0.0, 0.3 * s, 0.9 * s}) {
      for (std::int64_t y = -30; y <= 30; ++y) {
        CHECK(rel_gap(pmf(y, params(x, s)), pmf(-y, params(-x, s))) < 1e-12);
      }
    }
  }
}

TEST_CASE("derivative identities are exact rearrangements") {
  for (const double s : {2.0, 9.0, 25.0}) {
    for (const double x : {0.0, 0.4 * s, -0.8 * s}) {
      const SkellamParams p = params(x, s);
      for (std::int64_t y = -15; y <= 15; ++y) {
        const double dm = dpmf_dmean(y, p);
        const double dv = dpmf_dvariance(y, p);
        const double lhs = 0.5 * (pmf(y - 1, p) - pmf(y + 1, p));
        const double rhs = 0.5 * (pmf(y - 1, p) + pmf(y + 1, p)) - pmf(y, p);
        CHECK(rel_gap(dm, lhs) < 1e-12);
        CHECK(rel_gap(dv, rhs) < 1e-12);
      }
    }
  }
}

TEST_CASE("derivatives match numerical differentiation") {
  const double h = 1e-5;
  for (const double s : {3.0, 10.0, 40.0}) {
    for (const double x : {0.0, 0.5 * s, -0.3 * s}) {
      for (const std::int64_t y : {-7L, -1L, 0L, 2L, 9L}) {
        const SkellamParams p = params(x, s);
        const double num_dx =
            (pmf(y, params(x + h, s)) - pmf(y, params(x - h, s))) / (2 * h);
        const double num_ds =
            (pmf(y, params(x, s + h)) - pmf(y, params(x, s - h))) / (2 * h);
        CHECK(std::fabs(dpmf_dmean(y, p) - num_dx) < 1e-6);
        CHECK(std::fabs(dpmf_dvariance(y, p) - num_ds) < 1e-6);
      }
    }
  }
}

TEST_CASE("symmetric case zeroes the mean derivative at the origin") {
  CHECK(dpmf_dmean(0, params(0, 5)) == 0.0);
  const SkellamParams p = params(0, 2);
  CHECK(rel_gap(dpmf_dvariance(0, p), pmf(1, p) - pmf(0, p)) < 1e-13);
}

TEST_CASE("pde residual vanishes to rounding") {
  CHECK(pde_residual(0, params(0, 3)) == 0.0);
  for (const double s : {1.0, 6.0, 21.0, 47.0}) {
    for (const double x : {0.0, 0.45 * s, -0.85 * s}) {
      const SkellamParams p = params(x, s);
      for (std::int64_t y = -20; y <= 20; ++y) {
        CHECK(std::fabs(pde_residual(y, p)) <= 1e-12 * pmf(y, p) + 1e-300);
      }
    }
  }
  // x = 0 reduces the identity to y p(y) == s dp/dx
  const SkellamParams p0 = params(0, 8);
  for (std::int64_t y = -10; y <= 10; ++y) {
    const double r = static_cast<double>(y) * pmf(y, p0) -
                     p0.variance * dpmf_dmean(y, p0);
    CHECK(std::fabs(r) <= 1e-12 * pmf(y, p0) + 1e-300);
  }
}

TEST_CASE("recurrence table agrees with the series in the stable band") {
  const SkellamParams p = params(0, 4);
  const auto table = pmf_table_recurrence(p, 30);
  CHECK(rel_gap(table[2 + 30], pmf_series(2, 2.0, 2.0)) < 1e-10);
  for (std::int64_t y = -30; y <= 30; ++y) {
    CHECK(rel_gap(table[y + 30], pmf(y, p)) < 1e-10);
  }
  // symmetric parameters give a symmetric table
  for (std::int64_t y = 0; y <= 30; ++y) {
    CHECK(rel_gap(table[30 + y], table[30 - y]) < 1e-12);
  }
}

TEST_CASE("recurrence table total mass") {
  for (const double s : {0.5, 2.0, 10.0}) {
    const SkellamParams p = params(0.3 * s, s);
    const std::int64_t w = static_cast<std::int64_t>(20 * (1 + s));
    const auto table = pmf_table_recurrence(p, w);
    double total = 0.0;
    for (const double v : table) total += v;
    CHECK(total >= 1.0 - 1e-10);
    CHECK(total <= 1.0 + 1e-10);
  }
}

TEST_CASE("recurrence table rejects boundary parameters") {
  CHECK_THROWS_AS(pmf_table_recurrence(params(3, 3), 5),
                  DegenerateParameterError);
}

TEST_CASE("recurrence matches pmf inside the stable band at larger variance") {
  for (const double s : {15.0, 50.0}) {
    for (const double x : {0.0, 0.5 * s}) {
      const SkellamParams p = params(x, s);
      const double t_arg = std::sqrt(s * s - x * x);
      const std::int64_t band =
          static_cast<std::int64_t>(std::min(t_arg, 3.0 * std::sqrt(t_arg)));
      const auto table = pmf_table_recurrence(p, band);
      for (std::int64_t y = -band; y <= band; ++y) {
        CHECK(rel_gap(table[y + band], pmf(y, p)) < 1e-10);
      }
    }
  }
}

TEST_CASE("sampler degenerate rates") {
  RngStream rng(1);
  for (int i = 0; i < 100; ++i) {
    const CountPair c = sample(rng, 0.0, 0.0);
    CHECK(c.plus == 0);
    CHECK(c.minus == 0);
  }
  CHECK_THROWS_AS(sample(rng, -1.0, 0.0), ParameterDomainError);
}

TEST_CASE("sampler moments at (6, 2)") {
  RngStream rng(20240811);
  const int n = 1000000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const CountPair c = sample(rng, 6.0, 2.0);
    const double y = static_cast<double>(c.diff());
    CHECK(c.total() >= std::llabs(c.diff()));
    sum += y;
    sum2 += y * y;
  }
  const double mean = sum / n;
  const double var = sum2 / n - mean * mean;
  // Var Y = 8, Var of the mean estimate = 8/n
  CHECK(std::fabs(mean - 4.0) < 3.0 * std::sqrt(8.0 / n));
  // SE of the variance estimate ~ sqrt((m4 - var^2)/n); meaned-batch bound
  CHECK(std::fabs(var - 8.0) < 3.0 * std::sqrt(2.0 * 64.0 / n + 8.0 / n));
}

TEST_CASE("skewness formula and monte carlo") {
  CHECK(skewness(params(0, 5)) == 0.0);
  CHECK(skewness(params(4, 4)) == doctest::Approx(std::pow(4.0, -0.5)));
  CHECK_THROWS_AS(skewness(params(0, 0)), DegenerateParameterError);

  // batch-mean comparison against x / s^(3/2) at (3, 5)
  RngStream rng(777);
  const int batches = 100, per = 10000;
  std::vector<double> g1(batches);
  for (int b = 0; b < batches; ++b) {
    double m1 = 0, m2 = 0, m3 = 0;
    std::vector<double> ys(per);
    for (int i = 0; i < per; ++i) {
      const CountPair c = sample(rng, 4.0, 1.0);
      ys[i] = static_cast<double>(c.diff());
      m1 += ys[i];
    }
    m1 /= per;
    for (int i = 0; i < per; ++i) {
      const double d = ys[i] - m1;
      m2 += d * d;
      m3 += d * d * d;
    }
    m2 /= per;
    m3 /= per;
    g1[b] = m3 / std::pow(m2, 1.5);
  }
  double mean = 0.0;
  for (const double v : g1) mean += v;
  mean /= batches;
  double sd = 0.0;
  for (const double v : g1) sd += (v - mean) * (v - mean);
  sd = std::sqrt(sd / (batches - 1));
  const double expect = skewness(params(3, 5));
  CHECK(std::fabs(mean - expect) < 3.0 * sd / std::sqrt(batches));
}

TEST_CASE("poisson sampler large-mean regime moments") {
  RngStream rng(5150);
  const int n = 400000;
  const double lam = 120.0;  // exercises the rejection path
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double v = static_cast<double>(rng.poisson(lam));
    sum += v;
    sum2 += v * v;
  }
  const double mean = sum / n;
  const double var = sum2 / n - mean * mean;
  CHECK(std::fabs(mean - lam) < 3.0 * std::sqrt(lam / n));
  CHECK(std::fabs(var - lam) < 3.0 * std::sqrt((2.0 * lam * lam + lam) / n));
}

TEST_SUITE_END();
