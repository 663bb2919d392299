#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "skelshrink/haar.hpp"
#include "skelshrink/rng.hpp"

namespace skelshrink {

// One of the six prototype intensity shapes, sampled at n midpoints of
// [0, 1] and affinely rescaled to [0.02 * peak, peak].
struct TestFunctionSpec {
  std::string name;  // smooth | blocks | bumps | angles | spikes | bursts
  int n = 1024;
  double peak = 8.0;
};

std::vector<double> make_test_function(const TestFunctionSpec& spec);

// Independent Poisson counts g_i ~ P(f_i), deterministic per seed.
haar::CountSignal poissonize(const std::vector<double>& f, std::uint64_t seed);
haar::CountSignal poissonize_image(const std::vector<double>& f, int rows,
                                   int cols, std::uint64_t seed);

// Scale f so that 10 log10(sum f^2 / sum f) hits the target (the aggregate
// form of the per-sample SNR growth of Poisson data).
std::vector<double> scale_to_snr(const std::vector<double>& f,
                                 double target_db);

// (mse, output SNR dB); perfect reconstruction reports +inf SNR.
std::pair<double, double> metrics(const std::vector<double>& f_true,
                                  const std::vector<double>& f_hat);

}  // namespace skelshrink
