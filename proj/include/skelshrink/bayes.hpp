#pragma once

#include <cstdint>
#include <vector>

#include "skelshrink/prior.hpp"

namespace skelshrink {

// Quadrature over [-support, support] for posterior expectations: composite
// Gauss-Legendre, 16 nodes per panel, with panels graded so that both the
// full interval and a refinement window around the origin (where a narrow
// prior concentrates) are covered. Zero is always a panel boundary so that
// integrands with a kink or sign split there stay panel-smooth.
struct PosteriorQuadrature {
  std::vector<double> node;
  std::vector<double> weight;
};

PosteriorQuadrature build_posterior_quadrature(double support,
                                               double prior_scale,
                                               int panels = 32);

// E(X | Y = y; s) under the truncated prior rebound to [-s, s], with the
// Skellam likelihood at variance s. Log-space accumulation; nodes far from
// the likelihood window around y contribute below machine tail and are
// skipped. Throws ExtremeObservationError if the evidence underflows.
double posterior_mean(std::int64_t y, double s, const Prior& prior);
double posterior_mean(std::int64_t y, double s, const Prior& prior,
                      int panels);

// Pr(X > 0 | Y) - Pr(X < 0 | Y), in [-1, 1].
double posterior_sign_gap(std::int64_t y, double s, const Prior& prior);

// Bayes point estimate under the truncated Laplace prior:
// y - (sqrt2 s / sigma_x) * posterior_sign_gap.
double shrink_sb_laplace_exact(std::int64_t y, double s, const Prior& prior);

// Linear shrinkage sigma_x^2 y / (s + sigma_x^2).
double shrink_sbg(std::int64_t y, double s, double sigma_x);

// Soft threshold at sqrt2 s / sigma_x.
double shrink_sbt(std::int64_t y, double s, double sigma_x);

// E(X | Y = 1; s): the shrinkage slope at the origin. Memoized on
// (family, sigma_x, s); safe for concurrent callers.
double slope_origin(double s, const Prior& prior);

// Piecewise-linear rule: sgn(y) max(|y| - sqrt2 s / sigma_x, slope |y|).
double shrink_sbl(std::int64_t y, double s, const Prior& prior);

// Score-projection estimate y - s E(d/dx ln p(y|X;s) | Y) and the
// Cauchy-Schwarz bound on its squared gap to the posterior mean.
double theorem2_estimate(std::int64_t y, double s, const Prior& prior);
double theorem2_bound(std::int64_t y, double s, const Prior& prior);

}  // namespace skelshrink
