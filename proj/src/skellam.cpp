#include "skelshrink/skellam.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "skelshrink/errors.hpp"

namespace skelshrink {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kTailCutoff = 1e-17;     // term / running sum stop ratio
constexpr std::int64_t kMaxTerms = 1000000;

// Poisson log-mass k ~ P(rate); rate > 0.
double poisson_log_pmf(std::int64_t k, double rate) {
  if (k < 0) return kNegInf;
  return -rate + static_cast<double>(k) * std::log(rate) -
         log_factorial(k);
}

// Log of the convolution series for strictly positive rates. The summand
// peaks near k* = (y + sqrt(y^2 + 4 xp xm)) / 2; terms are accumulated
// outward from the peak after factoring out the peak magnitude.
double log_series_interior(std::int64_t y, double xp, double xm) {
  if (y < 0) {          // reflection: Pr(Y=y; xp, xm) = Pr(Y=-y; xm, xp)
    std::swap(xp, xm);
    y = -y;
  }
  const double lxp = std::log(xp);
  const double lxm = std::log(xm);
  const std::int64_t k0 = y;
  const auto log_term = [&](std::int64_t k) {
    return static_cast<double>(k) * lxp + static_cast<double>(k - y) * lxm -
           log_factorial(k) - log_factorial(k - y);
  };
  const double kpeak_f =
      0.5 * (static_cast<double>(y) +
             std::sqrt(static_cast<double>(y) * static_cast<double>(y) +
                       4.0 * xp * xm));
  const std::int64_t kpeak = std::max(k0, static_cast<std::int64_t>(kpeak_f));
  const double m = log_term(kpeak);

  double sum = 0.0;
  std::int64_t terms = 0;
  for (std::int64_t k = kpeak; terms < kMaxTerms; ++k, ++terms) {
    const double r = std::exp(log_term(k) - m);
    sum += r;
    if (k > kpeak && r < kTailCutoff * sum) break;
  }
  for (std::int64_t k = kpeak - 1; k >= k0 && terms < kMaxTerms;
       --k, ++terms) {
    const double r = std::exp(log_term(k) - m);
    sum += r;
    if (r < kTailCutoff * sum) break;
  }
  return -(xp + xm) + m + std::log(sum);
}

double log_pmf_rates(std::int64_t y, double xp, double xm) {
  if (xp == 0.0 && xm == 0.0) {
    return y == 0 ? 0.0 : kNegInf;
  }
  if (xm == 0.0) {
    return poisson_log_pmf(y, xp);
  }
  if (xp == 0.0) {
    return poisson_log_pmf(-y, xm);
  }
  return log_series_interior(y, xp, xm);
}

}  // namespace

void SkellamParams::validate() const {
  if (!(variance >= 0.0) || !(std::fabs(mean) <= variance) ||
      !std::isfinite(variance)) {
    throw ParameterDomainError(
        "SkellamParams: requires variance >= 0 and |mean| <= variance");
  }
}

double log_factorial(std::int64_t n) {
  static const std::vector<double> table = [] {
    std::vector<double> t(1 << 20);
    t[0] = 0.0;
    for (std::size_t i = 1; i < t.size(); ++i) {
      t[i] = t[i - 1] + std::log(static_cast<double>(i));
    }
    return t;
  }();
  if (n < 0) return std::numeric_limits<double>::infinity();
  if (static_cast<std::size_t>(n) < table.size()) {
    return table[static_cast<std::size_t>(n)];
  }
  return std::lgamma(static_cast<double>(n) + 1.0);
}

double log_pmf(std::int64_t y, const SkellamParams& p) {
  p.validate();
  return log_pmf_rates(y, p.plus_rate(), p.minus_rate());
}

double pmf(std::int64_t y, const SkellamParams& p) {
  return std::exp(log_pmf(y, p));
}

double pmf_series(std::int64_t y, double plus_rate, double minus_rate) {
  if (!(plus_rate >= 0.0) || !(minus_rate >= 0.0)) {
    throw ParameterDomainError("pmf_series: rates must be nonnegative");
  }
  if (plus_rate == 0.0 && minus_rate == 0.0) {
    return y == 0 ? 1.0 : 0.0;
  }
  if (minus_rate == 0.0) {
    return y >= 0 ? std::exp(poisson_log_pmf(y, plus_rate)) : 0.0;
  }
  if (plus_rate == 0.0) {
    return y <= 0 ? std::exp(poisson_log_pmf(-y, minus_rate)) : 0.0;
  }
  if (y < 0) {  // reflection symmetry of the series
    return pmf_series(-y, minus_rate, plus_rate);
  }
  // term_k = xp^k xm^(k-y) / (k! (k-y)!), built multiplicatively from k = y.
  double term = 1.0;
  for (std::int64_t j = 1; j <= y; ++j) {
    term *= plus_rate / static_cast<double>(j);
  }
  double sum = term;
  double prev = term;
  for (std::int64_t k = y + 1, terms = 0; terms < kMaxTerms; ++k, ++terms) {
    term *= plus_rate * minus_rate /
            (static_cast<double>(k) * static_cast<double>(k - y));
    sum += term;
    if (term <= prev && term < kTailCutoff * sum) break;
    prev = term;
  }
  return std::exp(-(plus_rate + minus_rate)) * sum;
}

std::vector<double> pmf_table_recurrence(const SkellamParams& p,
                                         std::int64_t y_max) {
  p.validate();
  const double x = p.mean;
  const double s = p.variance;
  if (!(std::fabs(x) < s)) {
    throw DegenerateParameterError(
        "pmf_table_recurrence: requires |mean| < variance strictly");
  }
  std::vector<double> table(2 * y_max + 1, 0.0);
  const auto at = [&](std::int64_t y) -> double& { return table[y + y_max]; };
  // The recurrence's companion solution grows like K_y, amplifying anchor
  // rounding by roughly (I_0/I_y)^2; capping the band at 3 sqrt(t) keeps the
  // amplification under ~1e4 so the table stays within 1e-12 of pmf there.
  const double t_arg = std::sqrt(std::max(0.0, s * s - x * x));
  const std::int64_t band = static_cast<std::int64_t>(
      std::min(t_arg, 3.0 * std::sqrt(t_arg)));

  at(0) = pmf(0, p);
  if (y_max >= 1) at(1) = pmf(1, p);
  for (std::int64_t y = 2; y <= y_max; ++y) {
    if (y <= band) {
      at(y) = (-2.0 * static_cast<double>(y - 1) * at(y - 1) +
               (s + x) * at(y - 2)) /
              (s - x);
    } else {
      at(y) = pmf(y, p);
    }
  }
  // Negative side via the mirrored parameters (mean -> -mean).
  if (y_max >= 1) at(-1) = pmf(-1, p);
  for (std::int64_t m = 2; m <= y_max; ++m) {
    if (m <= band) {
      at(-m) = (-2.0 * static_cast<double>(m - 1) * at(-(m - 1)) +
                (s - x) * at(-(m - 2))) /
               (s + x);
    } else {
      at(-m) = pmf(-m, p);
    }
  }
  return table;
}

double dpmf_dmean(std::int64_t y, const SkellamParams& p) {
  return 0.5 * (pmf(y - 1, p) - pmf(y + 1, p));
}

double dpmf_dvariance(std::int64_t y, const SkellamParams& p) {
  return 0.5 * (pmf(y - 1, p) + pmf(y + 1, p)) - pmf(y, p);
}

double pde_residual(std::int64_t y, const SkellamParams& p) {
  const double val = pmf(y, p);
  return (static_cast<double>(y) - p.mean) * val -
         p.variance * dpmf_dmean(y, p) - p.mean * dpmf_dvariance(y, p);
}

CountPair sample(RngStream& rng, double plus_rate, double minus_rate) {
  if (!(plus_rate >= 0.0) || !(minus_rate >= 0.0)) {
    throw ParameterDomainError("sample: rates must be nonnegative");
  }
  CountPair c;
  c.plus = rng.poisson(plus_rate);
  c.minus = rng.poisson(minus_rate);
  return c;
}

double skewness(const SkellamParams& p) {
  p.validate();
  if (p.variance == 0.0) {
    throw DegenerateParameterError("skewness: undefined at variance == 0");
  }
  return p.mean / (p.variance * std::sqrt(p.variance));
}

}  // namespace skelshrink
