#include "skelshrink/stabilize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "skelshrink/errors.hpp"
#include "skelshrink/risk.hpp"

namespace skelshrink {

double anscombe(double g) {
  if (!(g >= 0.0)) {
    throw ParameterDomainError("anscombe: counts must be nonnegative");
  }
  return 2.0 * std::sqrt(g + 0.375);
}

std::vector<double> anscombe(const std::vector<std::int64_t>& g) {
  std::vector<double> z(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    z[i] = anscombe(static_cast<double>(g[i]));
  }
  return z;
}

double anscombe_inv(double z) {
  const double h = 0.5 * z;
  return h * h - 0.375;
}

std::vector<double> anscombe_inv(const std::vector<double>& z) {
  std::vector<double> g(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) g[i] = anscombe_inv(z[i]);
  return g;
}

double haar_fisz_fwd(std::int64_t y, std::int64_t t) {
  if (t == 0) return 0.0;
  return static_cast<double>(y) / std::sqrt(static_cast<double>(t));
}

StabilizedField haar_fisz_fwd(const std::vector<std::int64_t>& y,
                              const std::vector<std::int64_t>& t) {
  StabilizedField f;
  f.provenance = Stabilizer::haar_fisz;
  f.scale = t;
  f.values.resize(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    f.values[i] = haar_fisz_fwd(y[i], t[i]);
  }
  return f;
}

double haar_fisz_inv(double z, std::int64_t t) {
  return z * std::sqrt(static_cast<double>(t));
}

std::vector<double> haar_fisz_inv(const StabilizedField& field) {
  std::vector<double> y(field.values.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    y[i] = haar_fisz_inv(field.values[i], field.scale[i]);
  }
  return y;
}

double universal_threshold(std::int64_t n, double sigma) {
  if (n < 2) {
    throw ParameterDomainError("universal_threshold: n must be >= 2");
  }
  return sigma * std::sqrt(2.0 * std::log(static_cast<double>(n)));
}

double sureshrink_threshold(const std::vector<double>& coeffs, double sigma) {
  if (!(sigma > 0.0)) {
    throw ParameterDomainError("sureshrink_threshold: sigma must be positive");
  }
  const double cap =
      coeffs.size() >= 2
          ? universal_threshold(static_cast<std::int64_t>(coeffs.size()), sigma)
          : 0.0;
  std::vector<double> cand{0.0};
  for (const double c : coeffs) {
    const double a = std::fabs(c);
    if (a <= cap) cand.push_back(a);
  }
  cand.push_back(cap);
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

  double best_tau = 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (const double tau : cand) {
    const double v = sure_gaussian(tau, coeffs, sigma * sigma);
    if (v < best) {
      best = v;
      best_tau = tau;
    }
  }
  return best_tau;
}

}  // namespace skelshrink
