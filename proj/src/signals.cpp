#include "skelshrink/signals.hpp"

#include <cmath>
#include <limits>

#include "skelshrink/errors.hpp"

namespace skelshrink {

namespace {

// Fixture tables for the prototype shapes: exact breakpoints and amplitudes
// of the piecewise constructions. Qualitative stand-ins for the classical
// benchmark suite, frozen here so every run sees identical signals.

constexpr double kBlockPos[] = {0.10, 0.13, 0.15, 0.23, 0.25, 0.40,
                                0.44, 0.65, 0.76, 0.78, 0.81};
constexpr double kBlockAmp[] = {4.0, -5.0, 3.0, -4.0, 5.0, -4.2,
                                2.1, 4.3, -3.1, 2.1, -4.2};

constexpr double kBumpAmp[] = {4.0, 5.0, 3.0, 4.0, 5.0, 4.2,
                               2.1, 4.3, 3.1, 5.1, 4.2};
constexpr double kBumpWidth[] = {0.005, 0.005, 0.006, 0.01, 0.01, 0.03,
                                 0.01,  0.01,  0.005, 0.008, 0.005};

constexpr double kAngleKnot[] = {0.0, 0.15, 0.30, 0.45, 0.60, 0.75, 0.90, 1.0};
constexpr double kAngleVal[] = {0.20, 1.00, 0.45, 0.90, 0.30, 0.75, 0.15, 0.50};

constexpr double kSpikeCenter[] = {0.20, 0.35, 0.55, 0.70, 0.85};
constexpr double kSpikeWidth[] = {0.004, 0.003, 0.006, 0.004, 0.008};
constexpr double kSpikeAmp[] = {1.0, 0.9, 1.2, 0.8, 1.1};

constexpr double kBurstCenter[] = {0.25, 0.55, 0.80};
constexpr double kBurstWidth[] = {0.030, 0.040, 0.025};
constexpr double kBurstFreq[] = {40.0, 60.0, 80.0};
constexpr double kBurstAmp[] = {1.0, 0.9, 1.1};

double raw_value(const std::string& name, double u) {
  if (name == "smooth") {
    return std::sin(M_PI * u);
  }
  if (name == "blocks") {
    double v = 0.0;
    for (std::size_t j = 0; j < std::size(kBlockPos); ++j) {
      if (u >= kBlockPos[j]) v += kBlockAmp[j];
    }
    return v;
  }
  if (name == "bumps") {
    double v = 0.0;
    for (std::size_t j = 0; j < std::size(kBlockPos); ++j) {
      const double r = (u - kBlockPos[j]) / kBumpWidth[j];
      v += kBumpAmp[j] * std::pow(1.0 + std::fabs(r), -4.0);
    }
    return v;
  }
  if (name == "angles") {
    for (std::size_t j = 0; j + 1 < std::size(kAngleKnot); ++j) {
      if (u <= kAngleKnot[j + 1]) {
        const double w =
            (u - kAngleKnot[j]) / (kAngleKnot[j + 1] - kAngleKnot[j]);
        return kAngleVal[j] + w * (kAngleVal[j + 1] - kAngleVal[j]);
      }
    }
    return kAngleVal[std::size(kAngleVal) - 1];
  }
  if (name == "spikes") {
    double v = 0.1;
    for (std::size_t j = 0; j < std::size(kSpikeCenter); ++j) {
      const double r = (u - kSpikeCenter[j]) / kSpikeWidth[j];
      v += kSpikeAmp[j] * std::exp(-0.5 * r * r);
    }
    return v;
  }
  if (name == "bursts") {
    double v = 0.0;
    for (std::size_t j = 0; j < std::size(kBurstCenter); ++j) {
      const double d = u - kBurstCenter[j];
      const double env = std::exp(-0.5 * d * d / (kBurstWidth[j] * kBurstWidth[j]));
      v += kBurstAmp[j] * env *
           0.5 * (1.0 + std::cos(2.0 * M_PI * kBurstFreq[j] * d));
    }
    return v;
  }
  throw UsageError("unknown test function: " + name);
}

}  // namespace

std::vector<double> make_test_function(const TestFunctionSpec& spec) {
  if (spec.n < 64) {
    throw UsageError("make_test_function: n must be >= 64");
  }
  if (!(spec.peak > 0.0)) {
    throw UsageError("make_test_function: peak must be positive");
  }
  std::vector<double> raw(spec.n);
  double mn = std::numeric_limits<double>::infinity();
  double mx = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < spec.n; ++i) {
    const double u = (i + 0.5) / spec.n;
    raw[i] = raw_value(spec.name, u);
    mn = std::min(mn, raw[i]);
    mx = std::max(mx, raw[i]);
  }
  std::vector<double> f(spec.n);
  const double range = mx > mn ? mx - mn : 1.0;
  for (int i = 0; i < spec.n; ++i) {
    // peak at the maximum exactly; 0.02 * peak at the minimum
    f[i] = spec.peak - 0.98 * spec.peak * (mx - raw[i]) / range;
  }
  return f;
}

haar::CountSignal poissonize(const std::vector<double>& f,
                             std::uint64_t seed) {
  RngStream rng(seed);
  std::vector<std::int64_t> g(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!(f[i] >= 0.0)) {
      throw ParameterDomainError("poissonize: intensities must be nonnegative");
    }
    g[i] = rng.poisson(f[i]);
  }
  return haar::CountSignal::vector(std::move(g));
}

haar::CountSignal poissonize_image(const std::vector<double>& f, int rows,
                                   int cols, std::uint64_t seed) {
  auto sig = poissonize(f, seed);
  return haar::CountSignal::image(std::move(sig.data), rows, cols);
}

std::vector<double> scale_to_snr(const std::vector<double>& f,
                                 double target_db) {
  double sum = 0.0, sum2 = 0.0;
  for (const double v : f) {
    sum += v;
    sum2 += v * v;
  }
  if (!(sum2 > 0.0)) {
    throw UsageError("scale_to_snr: signal is identically zero");
  }
  const double alpha = std::pow(10.0, target_db / 10.0) * sum / sum2;
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = alpha * f[i];
  return out;
}

std::pair<double, double> metrics(const std::vector<double>& f_true,
                                  const std::vector<double>& f_hat) {
  if (f_true.size() != f_hat.size() || f_true.empty()) {
    throw ParameterDomainError("metrics: shape mismatch");
  }
  double err2 = 0.0, sig2 = 0.0;
  for (std::size_t i = 0; i < f_true.size(); ++i) {
    const double d = f_hat[i] - f_true[i];
    err2 += d * d;
    sig2 += f_true[i] * f_true[i];
  }
  const double mse = err2 / static_cast<double>(f_true.size());
  const double snr = err2 > 0.0
                         ? 10.0 * std::log10(sig2 / err2)
                         : std::numeric_limits<double>::infinity();
  return {mse, snr};
}

}  // namespace skelshrink
