#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace skelshrink {

// A per-coefficient shrinkage rule expressed through its perturbation
// theta(y, t) with estimate y + theta. theta must be total over all integer
// y and t >= 0, including the shifted arguments (y -/+ 1, t - 1) the risk
// estimate evaluates; at t = 0 the shift is clamped back to 0 (the matching
// risk weights vanish there, so the clamp never affects the value).
struct ShrinkageRule {
  std::function<double(std::int64_t y, std::int64_t t)> theta;
};

ShrinkageRule soft_threshold_rule(std::int64_t tau);
ShrinkageRule sh_rule(double sigma_x);
ShrinkageRule haar_fisz_soft_rule(double tau);

struct RiskEstimate {
  double value = 0.0;
  std::vector<double> contributions;
};

// Unbiased l2 risk estimate of y + theta(y, t) over one subband:
// per coordinate theta^2 + t + 2 y theta - (t+y) theta(y-1, t-1)
//                + (t-y) theta(y+1, t-1).
// Requires t >= |y| with matching parity componentwise.
RiskEstimate ure(const ShrinkageRule& rule,
                 const std::vector<std::int64_t>& y,
                 const std::vector<std::int64_t>& t);

// Closed-form risk of integer-threshold soft thresholding; agrees with
// ure(soft_threshold_rule(tau)) exactly (integer arithmetic throughout).
double ss_objective(std::int64_t tau, const std::vector<std::int64_t>& y,
                    const std::vector<std::int64_t>& t);

// Minimize ss_objective over tau in {0, ..., max|y|+1}; ties toward the
// smaller threshold.
std::pair<std::int64_t, RiskEstimate> optimize_ss(
    const std::vector<std::int64_t>& y, const std::vector<std::int64_t>& t);

// Adjusted-threshold perturbation: kill y when |y| < sqrt2 t / sigma_x,
// otherwise pull back by the threshold.
double sh_theta(std::int64_t y, std::int64_t t, double sigma_x);

// Literal transcription of the tabulated closed-form risk for the adjusted
// threshold rule (with its c/d singularity corrections). Diagnostic only:
// it deviates from the exact estimate away from the threshold, so all
// optimization goes through ure(), which is authoritative.
double sh_objective_closed(double sigma_x, const std::vector<std::int64_t>& y,
                           const std::vector<std::int64_t>& t);

// Minimize ure(sh_rule(sigma_x)) over ln sigma_x in [ln 0.1, ln 1e3]:
// 50-point log-grid seed plus golden-section refinement to 1e-4 relative;
// returns the best value seen over every evaluated candidate.
std::pair<double, RiskEstimate> optimize_sh(
    const std::vector<std::int64_t>& y, const std::vector<std::int64_t>& t);

// Variance-stabilized soft threshold scaled by sqrt(t).
double hf_theta(std::int64_t y, std::int64_t t, double tau);

// Scan tau over the breakpoints {|y_i|/sqrt(t_i)} (plus 0, midpoints and a
// beyond-max candidate), minimizing ure(haar_fisz_soft_rule(tau)).
std::pair<double, RiskEstimate> optimize_hf(
    const std::vector<std::int64_t>& y, const std::vector<std::int64_t>& t);

// Gaussian-noise risk estimate of soft thresholding at tau:
// N sigma^2 + sum min(y_i^2, tau^2) - 2 sigma^2 #{|y_i| < tau}.
double sure_gaussian(double tau, const std::vector<double>& coeffs,
                     double sigma2);

}  // namespace skelshrink
