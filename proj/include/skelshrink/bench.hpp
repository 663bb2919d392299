#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "skelshrink/pipeline.hpp"
#include "skelshrink/prior.hpp"
#include "skelshrink/rng.hpp"

namespace skelshrink {

// Univariate experiment: latent coefficients drawn from the truncated prior
// at a fixed scaling coefficient, observed through the Poisson split.
struct UnivariateDrawSpec {
  PriorFamily family = PriorFamily::gaussian;
  double var_x = 32.0;
  double s = 100.0;
  int n = 10000;
};

struct SquaredErrorStats {
  double mean = 0.0;
  double median = 0.0;
  double stddev = 0.0;
};

// Draw from the truncated prior on [-support, support] (deterministic).
double draw_truncated_prior(RngStream& rng, PriorFamily family, double sigma_x,
                            double support);

// Applies each requested estimator to one simulated population and reports
// statistics of the per-draw squared errors. Bayes rules receive the true
// sigma_x; SS and SH optimize their parameter over the drawn population.
// The observed scaling coefficient is plugged in for s everywhere.
std::vector<std::pair<Method, SquaredErrorStats>> run_univariate_bench(
    const UnivariateDrawSpec& spec, const std::vector<Method>& methods,
    std::uint64_t seed);

struct SignalBenchSpec {
  std::string fn = "bumps";
  int n = 1024;
  double peak = 8.0;
  int trials = 20;
  int levels = 3;
  haar::Mode mode = haar::Mode::undecimated;
  PriorFamily family = PriorFamily::laplace;
  std::uint64_t seed0 = 1;
};

struct BenchRecord {
  std::string signal;
  std::uint64_t seed = 0;
  std::string method;
  int levels = 0;
  std::string param;
  double mse = 0.0;
  double snr_out_db = 0.0;
  double runtime_ms = 0.0;
};

// One record per (trial seed, method): Poisson-corrupt the prototype signal,
// denoise, score. Trials use seeds seed0, seed0+1, ...
std::vector<BenchRecord> run_signal_bench(const SignalBenchSpec& spec,
                                          const std::vector<Method>& methods);

// CSV with header signal,seed,method,levels,param,mse,snr_out_db,runtime_ms.
std::string records_to_csv(const std::vector<BenchRecord>& records);
void write_csv(const std::string& path,
               const std::vector<BenchRecord>& records);

// Single-column count/real CSV helpers for the CLI.
std::vector<std::int64_t> read_counts_csv(const std::string& path);
void write_reals_csv(const std::string& path, const std::vector<double>& v);

}  // namespace skelshrink
