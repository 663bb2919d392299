#include "skelshrink/rng.hpp"

#include <cmath>

#include "skelshrink/errors.hpp"

namespace skelshrink {

double RngStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = 0.0;
  do {
    u1 = uniform();
  } while (u1 <= 0.0);
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * M_PI * u2;
  spare_ = r * std::sin(a);
  has_spare_ = true;
  return r * std::cos(a);
}

std::int64_t RngStream::poisson(double mean) {
  if (mean < 0.0 || !std::isfinite(mean)) {
    throw ParameterDomainError("poisson: mean must be finite and nonnegative");
  }
  if (mean == 0.0) return 0;

  if (mean < 30.0) {
    // Inversion by sequential search. The cap guards against the cumulative
    // saturating just below u through rounding.
    const std::int64_t cap =
        static_cast<std::int64_t>(mean + 40.0 * std::sqrt(mean) + 60.0);
    const double u = uniform();
    double p = std::exp(-mean);
    double cum = p;
    std::int64_t k = 0;
    while (u > cum && k < cap) {
      ++k;
      p *= mean / static_cast<double>(k);
      cum += p;
    }
    return k;
  }

  // Transformed rejection with squeeze (Hormann's PTRS).
  const double slam = std::sqrt(mean);
  const double loglam = std::log(mean);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double invalpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    const double u = uniform() - 0.5;
    const double v = uniform();
    const double us = 0.5 - std::fabs(u);
    const double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= vr) {
      return static_cast<std::int64_t>(kf);
    }
    if (kf < 0.0 || (us < 0.013 && v > us)) {
      continue;
    }
    const std::int64_t k = static_cast<std::int64_t>(kf);
    const double lhs = std::log(v * invalpha / (a / (us * us) + b));
    const double rhs =
        kf * loglam - mean - std::lgamma(kf + 1.0);
    if (lhs <= rhs) {
      return k;
    }
  }
}

}  // namespace skelshrink
