#pragma once

namespace skelshrink {

enum class PriorFamily { gaussian, laplace };

// Zero-mean generalized Gaussian (exponent 2 or 1) with scale sigma_x,
// truncated to [-support, support] and renormalized.
struct Prior {
  PriorFamily family = PriorFamily::laplace;
  double sigma_x = 1.0;
  double support = 1.0;

  Prior rebound(double s) const { return {family, sigma_x, s}; }
};

// Normalized log-density of the truncated prior at x (|x| <= support).
double prior_log_density(const Prior& prior, double x);

// Variance of the truncated prior, closed form. Always in (0, sigma_x^2) and
// below support^2 / 3; evaluated in cancellation-free form for support far
// above or below sigma_x.
double truncated_variance(const Prior& prior);

// Solve truncated_variance(sigma_x) == target_var for sigma_x at the given
// support (monotone bisection). target_var must lie in the attainable range
// (0, support^2 / 3); InfeasibleTargetError otherwise.
double solve_scale(double target_var, double support, PriorFamily family);

}  // namespace skelshrink
