#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "skelshrink/haar.hpp"
#include "skelshrink/prior.hpp"

namespace skelshrink {

enum class Method {
  identity,
  ss,
  sb,
  sbg,
  sbt,
  sbl,
  sh,
  hf_ure,
  anscombe_univ_hard,
  anscombe_univ_soft,
  anscombe_sure,
  haarfisz_sure,
};

Method method_from_name(const std::string& name);  // UsageError if unknown
std::string method_name(Method m);

struct DenoiseConfig {
  Method method = Method::ss;
  int levels = 3;
  haar::Mode mode = haar::Mode::undecimated;
  PriorFamily prior_family = PriorFamily::laplace;
  // 2D: estimate subband parameters jointly across the three orientations
  // of a level instead of separately.
  bool pool_orientations = false;
  // When set, bypasses empirical-Bayes / risk optimization and uses this
  // prior scale everywhere (Bayes rules and SH).
  std::optional<double> fixed_sigma_x;
  std::uint64_t seed = 0;  // bookkeeping only; denoising is deterministic
};

struct SubbandStats {
  double var_x_hat = 0.0;
  double sigma_x = 0.0;
  std::size_t n = 0;
};

// Moment estimate of the prior variance, clamped below at 1e-6:
// max(eps, mean(y_i^2 - t_i)).
double estimate_prior_var(const std::vector<std::int64_t>& y,
                          const std::vector<std::int64_t>& t);

// The observed scaling coefficient is the plug-in for the latent one.
double plug_in_s(std::int64_t t);

// Full denoiser: decompose, resolve per-subband parameters, shrink each
// wavelet coefficient with its plug-in scale, reconstruct, clamp at zero.
// Deterministic in (g, cfg). The coarse scaling band is never shrunk.
haar::RealSignal denoise(const haar::CountSignal& g, const DenoiseConfig& cfg);

// Per-subband parameter summary of the last resolve step, for reporting.
haar::RealSignal denoise(const haar::CountSignal& g, const DenoiseConfig& cfg,
                         std::string* resolved_params);

}  // namespace skelshrink
