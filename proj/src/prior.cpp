#include "skelshrink/prior.hpp"

#include <cmath>
#include <limits>

#include "skelshrink/errors.hpp"

namespace skelshrink {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

// log of the truncated-prior normalizer: integral of the unnormalized
// density exp(-x^2/2s^2) resp. exp(-sqrt2 |x|/s) over [-support, support].
double log_normalizer(const Prior& prior) {
  if (prior.family == PriorFamily::gaussian) {
    const double a = prior.support / prior.sigma_x;
    return std::log(std::sqrt(2.0 * M_PI) * prior.sigma_x *
                    std::erf(a / kSqrt2));
  }
  const double u = kSqrt2 * prior.support / prior.sigma_x;
  // 2 * (sigma/sqrt2) * (1 - e^-u)
  return std::log(kSqrt2 * prior.sigma_x) + std::log(-std::expm1(-u));
}

double gaussian_truncated_variance(double sigma, double support) {
  const double a = support / sigma;
  if (a > 0.25) {
    return sigma * sigma -
           kSqrt2 * support * sigma * std::exp(-0.5 * a * a) /
               (std::sqrt(M_PI) * std::erf(a / kSqrt2));
  }
  // Small-ratio regime: the direct form cancels catastrophically. With
  // sqrt(pi) erf(a/sqrt2) = sqrt2 a (1 - a^2/6 + a^4/40 - a^6/336 + a^8/3456 ...),
  // Var = -sigma^2 expm1(-a^2/2 - log1p(series)).
  const double a2 = a * a;
  const double series =
      -a2 / 6.0 + a2 * a2 / 40.0 - a2 * a2 * a2 / 336.0 +
      a2 * a2 * a2 * a2 / 3456.0;
  return -sigma * sigma * std::expm1(-0.5 * a2 - std::log1p(series));
}

double laplace_truncated_variance(double sigma, double support) {
  const double u = kSqrt2 * support / sigma;
  if (u > 30.0) {
    return sigma * sigma * (1.0 - (u + 0.5 * u * u) * std::exp(-u));
  }
  // Var = sigma^2 (expm1(u) - u - u^2/2) / expm1(u); the numerator is summed
  // as a series when u is small to avoid cancellation.
  double num;
  if (u < 0.5) {
    num = 0.0;
    double term = u * u * u / 6.0;  // j = 3
    for (int j = 3; term > 0.0; ++j) {
      num += term;
      if (term < 1e-20 * num) break;
      term *= u / static_cast<double>(j + 1);
    }
  } else {
    num = std::expm1(u) - u - 0.5 * u * u;
  }
  return sigma * sigma * num / std::expm1(u);
}

}  // namespace

double prior_log_density(const Prior& prior, double x) {
  if (std::fabs(x) > prior.support) {
    return -std::numeric_limits<double>::infinity();
  }
  double lu;
  if (prior.family == PriorFamily::gaussian) {
    lu = -0.5 * x * x / (prior.sigma_x * prior.sigma_x);
  } else {
    lu = -kSqrt2 * std::fabs(x) / prior.sigma_x;
  }
  return lu - log_normalizer(prior);
}

double truncated_variance(const Prior& prior) {
  if (!(prior.sigma_x > 0.0) || !(prior.support > 0.0)) {
    throw ParameterDomainError(
        "truncated_variance: sigma_x and support must be positive");
  }
  return prior.family == PriorFamily::gaussian
             ? gaussian_truncated_variance(prior.sigma_x, prior.support)
             : laplace_truncated_variance(prior.sigma_x, prior.support);
}

double solve_scale(double target_var, double support, PriorFamily family) {
  if (!(support > 0.0) || !(target_var > 0.0)) {
    throw ParameterDomainError("solve_scale: positive target and support required");
  }
  // The truncated variance increases monotonically in sigma_x and saturates
  // at support^2/3 (uniform limit); targets at or beyond that are infeasible.
  const double lo0 = 1e-9 * support;
  const double hi0 = 1e9 * support;
  const auto var_at = [&](double sigma) {
    return truncated_variance({family, sigma, support});
  };
  if (target_var >= support * support / 3.0 || var_at(hi0) < target_var) {
    throw InfeasibleTargetError(
        "solve_scale: target variance not attainable under this support");
  }
  double lo = std::log(lo0), hi = std::log(hi0);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (var_at(std::exp(mid)) < target_var) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo < 1e-14) break;
  }
  return std::exp(0.5 * (lo + hi));
}

}  // namespace skelshrink
