#include "skelshrink/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "skelshrink/bayes.hpp"
#include "skelshrink/errors.hpp"
#include "skelshrink/risk.hpp"
#include "skelshrink/signals.hpp"
#include "skelshrink/skellam.hpp"

namespace skelshrink {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

SquaredErrorStats stats_of(std::vector<double> se) {
  SquaredErrorStats out;
  const std::size_t n = se.size();
  double sum = 0.0;
  for (const double v : se) sum += v;
  out.mean = sum / static_cast<double>(n);
  double ss = 0.0;
  for (const double v : se) ss += (v - out.mean) * (v - out.mean);
  out.stddev = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0;
  std::sort(se.begin(), se.end());
  out.median = n % 2 == 1 ? se[n / 2] : 0.5 * (se[n / 2 - 1] + se[n / 2]);
  return out;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

}  // namespace

double draw_truncated_prior(RngStream& rng, PriorFamily family, double sigma_x,
                            double support) {
  if (family == PriorFamily::gaussian) {
    for (;;) {
      const double v = sigma_x * rng.normal();
      if (std::fabs(v) <= support) return v;
    }
  }
  const double beta = sigma_x / kSqrt2;
  const double u = rng.uniform();
  const double mag = -beta * std::log1p(-u * (1.0 - std::exp(-support / beta)));
  return rng.uniform() < 0.5 ? -mag : mag;
}

std::vector<std::pair<Method, SquaredErrorStats>> run_univariate_bench(
    const UnivariateDrawSpec& spec, const std::vector<Method>& methods,
    std::uint64_t seed) {
  if (!(spec.var_x > 0.0) || !(spec.s > 0.0) || spec.n < 1) {
    throw ParameterDomainError("run_univariate_bench: invalid draw spec");
  }
  const double sigma_x = std::sqrt(spec.var_x);
  RngStream rng(seed);

  std::vector<double> x(spec.n);
  std::vector<std::int64_t> y(spec.n), t(spec.n);
  for (int i = 0; i < spec.n; ++i) {
    x[i] = draw_truncated_prior(rng, spec.family, sigma_x, spec.s);
    const CountPair c =
        sample(rng, 0.5 * (spec.s + x[i]), 0.5 * (spec.s - x[i]));
    y[i] = c.diff();
    t[i] = c.total();
  }

  std::vector<std::pair<Method, SquaredErrorStats>> results;
  for (const Method m : methods) {
    std::vector<double> se(spec.n);
    switch (m) {
      case Method::sb: {
        const Prior prior{spec.family, sigma_x, 0.0};
        std::map<std::pair<std::int64_t, std::int64_t>, double> memo;
        for (int i = 0; i < spec.n; ++i) {
          double xhat = 0.0;
          if (t[i] > 0) {
            const auto key = std::make_pair(y[i], t[i]);
            const auto it = memo.find(key);
            if (it != memo.end()) {
              xhat = it->second;
            } else {
              const double s = static_cast<double>(t[i]);
              xhat = posterior_mean(y[i], s, prior.rebound(s));
              memo.emplace(key, xhat);
            }
          }
          se[i] = (xhat - x[i]) * (xhat - x[i]);
        }
        break;
      }
      case Method::sbg:
        for (int i = 0; i < spec.n; ++i) {
          const double xhat =
              shrink_sbg(y[i], static_cast<double>(t[i]), sigma_x);
          se[i] = (xhat - x[i]) * (xhat - x[i]);
        }
        break;
      case Method::sbt:
        for (int i = 0; i < spec.n; ++i) {
          const double xhat =
              shrink_sbt(y[i], static_cast<double>(t[i]), sigma_x);
          se[i] = (xhat - x[i]) * (xhat - x[i]);
        }
        break;
      case Method::sbl: {
        if (spec.family != PriorFamily::laplace) {
          throw UsageError("run_univariate_bench: SBL requires laplace prior");
        }
        const Prior prior{PriorFamily::laplace, sigma_x, 0.0};
        for (int i = 0; i < spec.n; ++i) {
          const double s = static_cast<double>(t[i]);
          const double xhat =
              t[i] > 0 ? shrink_sbl(y[i], s, prior.rebound(s)) : 0.0;
          se[i] = (xhat - x[i]) * (xhat - x[i]);
        }
        break;
      }
      case Method::ss: {
        const auto [tau, est] = optimize_ss(y, t);
        for (int i = 0; i < spec.n; ++i) {
          const double ay = static_cast<double>(std::llabs(y[i]));
          const double mag = std::max(ay - static_cast<double>(tau), 0.0);
          const double xhat = y[i] >= 0 ? mag : -mag;
          se[i] = (xhat - x[i]) * (xhat - x[i]);
        }
        break;
      }
      case Method::sh: {
        const auto [sig, est] = optimize_sh(y, t);
        for (int i = 0; i < spec.n; ++i) {
          const double xhat =
              static_cast<double>(y[i]) + sh_theta(y[i], t[i], sig);
          se[i] = (xhat - x[i]) * (xhat - x[i]);
        }
        break;
      }
      default:
        throw UsageError("run_univariate_bench: unsupported method " +
                         method_name(m));
    }
    results.emplace_back(m, stats_of(std::move(se)));
  }
  return results;
}

std::vector<BenchRecord> run_signal_bench(const SignalBenchSpec& spec,
                                          const std::vector<Method>& methods) {
  const auto f = make_test_function({spec.fn, spec.n, spec.peak});
  std::vector<BenchRecord> records;
  for (int trial = 0; trial < spec.trials; ++trial) {
    const std::uint64_t seed = spec.seed0 + static_cast<std::uint64_t>(trial);
    const auto g = poissonize(f, seed);
    for (const Method m : methods) {
      DenoiseConfig cfg;
      cfg.method = m;
      cfg.levels = spec.levels;
      cfg.mode = spec.mode;
      cfg.prior_family = spec.family;
      cfg.seed = seed;
      std::string param;
      const auto t0 = std::chrono::steady_clock::now();
      const auto fhat = denoise(g, cfg, &param);
      const auto t1 = std::chrono::steady_clock::now();
      const auto [mse, snr] = metrics(f, fhat.data);
      BenchRecord rec;
      rec.signal = spec.fn;
      rec.seed = seed;
      rec.method = method_name(m);
      rec.levels = spec.levels;
      rec.param = param;
      rec.mse = mse;
      rec.snr_out_db = snr;
      rec.runtime_ms =
          std::chrono::duration<double, std::milli>(t1 - t0).count();
      records.push_back(std::move(rec));
    }
  }
  return records;
}

std::string records_to_csv(const std::vector<BenchRecord>& records) {
  std::string out = "signal,seed,method,levels,param,mse,snr_out_db,runtime_ms\n";
  for (const auto& r : records) {
    out += r.signal;
    out += ',';
    out += std::to_string(r.seed);
    out += ',';
    out += r.method;
    out += ',';
    out += std::to_string(r.levels);
    out += ',';
    out += r.param;
    out += ',';
    out += format_double(r.mse);
    out += ',';
    out += format_double(r.snr_out_db);
    out += ',';
    out += format_double(r.runtime_ms);
    out += '\n';
  }
  return out;
}

void write_csv(const std::string& path,
               const std::vector<BenchRecord>& records) {
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    throw FormatError("write_csv: cannot open " + path);
  }
  f << records_to_csv(records);
  if (!f) {
    throw FormatError("write_csv: write failed for " + path);
  }
}

std::vector<std::int64_t> read_counts_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) {
    throw FormatError("read_counts_csv: cannot open " + path);
  }
  std::vector<std::int64_t> v;
  std::string line;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    try {
      v.push_back(std::stoll(line));
    } catch (const std::exception&) {
      throw FormatError("read_counts_csv: bad line '" + line + "' in " + path);
    }
  }
  if (v.empty()) {
    throw FormatError("read_counts_csv: no data in " + path);
  }
  return v;
}

void write_reals_csv(const std::string& path, const std::vector<double>& v) {
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    throw FormatError("write_reals_csv: cannot open " + path);
  }
  for (const double x : v) {
    f << format_double(x) << '\n';
  }
}

}  // namespace skelshrink
