#pragma once

#include <cstdint>
#include <vector>

#include "skelshrink/rng.hpp"

namespace skelshrink {

// Parameters of a Skellam law: mean x and variance s of a difference of two
// independent Poisson counts with rates (s+x)/2 and (s-x)/2.
struct SkellamParams {
  double mean = 0.0;      // x, in counts
  double variance = 0.0;  // s, in counts

  double plus_rate() const { return 0.5 * (variance + mean); }
  double minus_rate() const { return 0.5 * (variance - mean); }

  // Throws ParameterDomainError unless variance >= 0 and |mean| <= variance.
  void validate() const;
};

// A pair of observed Poisson counts; diff() is the Skellam variate, total()
// its empirical variance proxy. total() >= |diff()| and both share parity.
struct CountPair {
  std::int64_t plus = 0;
  std::int64_t minus = 0;

  std::int64_t diff() const { return plus - minus; }
  std::int64_t total() const { return plus + minus; }
};

// Cached log-factorial; exact lgamma fallback beyond the table.
double log_factorial(std::int64_t n);

// Pr(Y = y) under SkellamParams p. Evaluated by log-space summation of the
// Poisson convolution series; the degenerate boundaries (variance == 0,
// |mean| == variance) reduce to a point mass resp. one-sided Poisson laws.
double pmf(std::int64_t y, const SkellamParams& p);

// ln Pr(Y = y); -inf where the mass is exactly zero.
double log_pmf(std::int64_t y, const SkellamParams& p);

// Direct linear-space evaluation of the convolution series in the Poisson
// rates. Serves as the module's internal oracle for pmf; accurate for
// moderate variance (underflows below ~1e-300 rather than switching scale).
double pmf_series(std::int64_t y, double plus_rate, double minus_rate);

// Table of pmf over y = -y_max..y_max (index y + y_max) built with the
// three-term recurrence in y where it is stable and from pmf outside that
// band. The forward recurrence is the dominant-solution kind and diverges
// for |y| beyond roughly sqrt(variance^2 - mean^2), hence the hybrid fill.
// Requires |mean| < variance strictly (DegenerateParameterError otherwise).
std::vector<double> pmf_table_recurrence(const SkellamParams& p,
                                         std::int64_t y_max);

// Partial derivatives of the pmf in mean and variance, via the exact
// finite-difference identities on the y-axis.
double dpmf_dmean(std::int64_t y, const SkellamParams& p);
double dpmf_dvariance(std::int64_t y, const SkellamParams& p);

// Residual of (y - x) p = s dp/dx + x dp/ds; a consistency diagnostic that
// is zero up to rounding for any valid interior parameters.
double pde_residual(std::int64_t y, const SkellamParams& p);

// Draw a count pair with independent Poisson components.
CountPair sample(RngStream& rng, double plus_rate, double minus_rate);

// mean / variance^(3/2); requires variance > 0.
double skewness(const SkellamParams& p);

}  // namespace skelshrink
