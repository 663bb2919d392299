#include "skelshrink/bayes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <tuple>

#include "skelshrink/errors.hpp"
#include "skelshrink/skellam.hpp"

namespace skelshrink {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Nodes/weights of the n-point Gauss-Legendre rule on [-1, 1], Newton
// iteration from Chebyshev initial guesses.
void gauss_legendre_unit(int n, std::vector<double>& x,
                         std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::fabs(dz) < 1e-15) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    w[n - 1 - i] = w[i];
  }
}

int even_at_least(double v) {
  int n = static_cast<int>(std::ceil(v));
  if (n % 2 != 0) ++n;
  return std::max(n, 2);
}

// Unnormalized log prior (the normalizer cancels in every posterior ratio).
double raw_log_prior(const Prior& prior, double x) {
  if (prior.family == PriorFamily::gaussian) {
    return -0.5 * x * x / (prior.sigma_x * prior.sigma_x);
  }
  return -kSqrt2 * std::fabs(x) / prior.sigma_x;
}

struct NodeEval {
  double x;
  double w;
  double rel;      // exp(log posterior integrand - max), unweighted
  double lp0;      // log pmf(y; x, s)
  double lprior;   // raw log prior at x
};

// Evaluates the posterior integrand at the quadrature nodes that can
// contribute. A cheap Gaussian surrogate of the likelihood screens nodes
// first; the Skellam tail is lighter than the Gaussian's, so the surrogate
// only over-admits. Returns the log maximum M of the exact integrand.
double posterior_nodes(std::int64_t y, double s, const Prior& prior,
                       int panels, std::vector<NodeEval>& out) {
  if (!(s > 0.0)) {
    throw ParameterDomainError("posterior: scaling coefficient must be > 0");
  }
  if (!(prior.sigma_x > 0.0)) {
    throw ParameterDomainError("posterior: prior scale must be > 0");
  }
  const PosteriorQuadrature q =
      build_posterior_quadrature(s, prior.sigma_x, panels);
  const std::size_t n = q.node.size();
  const double yd = static_cast<double>(y);

  std::vector<double> lprior(n), surrogate(n);
  double smax = kNegInf;
  for (std::size_t i = 0; i < n; ++i) {
    lprior[i] = raw_log_prior(prior, q.node[i]);
    const double d = yd - q.node[i];
    surrogate[i] = lprior[i] - 0.5 * d * d / s;
    smax = std::max(smax, surrogate[i]);
  }

  const SkellamParams base{0.0, s};
  out.clear();
  out.reserve(n);
  double m = kNegInf;
  for (std::size_t i = 0; i < n; ++i) {
    if (surrogate[i] < smax - 60.0) continue;
    SkellamParams p = base;
    p.mean = q.node[i];
    const double lp0 = log_pmf(y, p);
    const double L = lp0 + lprior[i];
    out.push_back({q.node[i], q.weight[i], L, lp0, lprior[i]});
    m = std::max(m, L);
  }
  if (!std::isfinite(m)) {
    throw ExtremeObservationError("posterior: evidence underflow");
  }
  for (auto& e : out) {
    e.rel = std::exp(e.rel - m);  // rel held L until now
  }
  return m;
}

struct SlopeKey {
  int family;
  double sigma_x;
  double s;
  bool operator<(const SlopeKey& o) const {
    return std::tie(family, sigma_x, s) < std::tie(o.family, o.sigma_x, o.s);
  }
};

}  // namespace

PosteriorQuadrature build_posterior_quadrature(double support,
                                               double prior_scale,
                                               int panels) {
  if (!(support > 0.0)) {
    throw ParameterDomainError("quadrature: support must be positive");
  }
  static thread_local std::vector<double> gx, gw;
  if (gx.empty()) gauss_legendre_unit(16, gx, gw);

  const int base = std::max(2, panels / 2);
  const int p_uniform = std::max(base, even_at_least(std::sqrt(support) / 2.0));
  const int p_refined = base;
  const double window =
      std::min(support, std::max(10.0 * prior_scale,
                                 2.0 * support / p_uniform));

  std::vector<double> bp;
  if (window >= support * (1.0 - 1e-12)) {
    const int p = p_uniform + p_refined;
    for (int i = 0; i <= p; ++i) {
      bp.push_back(-support + 2.0 * support * i / p);
    }
  } else {
    for (int i = 0; i <= p_uniform; ++i) {
      bp.push_back(-support + 2.0 * support * i / p_uniform);
    }
    for (int j = 0; j <= p_refined; ++j) {
      bp.push_back(-window + 2.0 * window * j / p_refined);
    }
    std::sort(bp.begin(), bp.end());
    bp.erase(std::unique(bp.begin(), bp.end(),
                         [&](double a, double b) {
                           return std::fabs(a - b) < 1e-12 * support;
                         }),
             bp.end());
  }

  PosteriorQuadrature q;
  for (std::size_t k = 0; k + 1 < bp.size(); ++k) {
    const double mid = 0.5 * (bp[k] + bp[k + 1]);
    const double half = 0.5 * (bp[k + 1] - bp[k]);
    for (std::size_t i = 0; i < gx.size(); ++i) {
      q.node.push_back(mid + half * gx[i]);
      q.weight.push_back(half * gw[i]);
    }
  }
  return q;
}

double posterior_mean(std::int64_t y, double s, const Prior& prior,
                      int panels) {
  // The prior is symmetric, so the expectation is odd in y; canonicalizing
  // makes the identities exact in floating point as well.
  if (y == 0) {
    posterior_mean(1, s, prior, panels);  // still validates parameters
    return 0.0;
  }
  if (y < 0) return -posterior_mean(-y, s, prior, panels);
  std::vector<NodeEval> nodes;
  posterior_nodes(y, s, prior, panels, nodes);
  double num = 0.0, den = 0.0;
  for (const auto& e : nodes) {
    num += e.w * e.rel * e.x;
    den += e.w * e.rel;
  }
  if (den <= 0.0) {
    throw ExtremeObservationError("posterior_mean: evidence underflow");
  }
  return std::clamp(num / den, -s, s);
}

double posterior_mean(std::int64_t y, double s, const Prior& prior) {
  return posterior_mean(y, s, prior, 32);
}

double posterior_sign_gap(std::int64_t y, double s, const Prior& prior) {
  std::vector<NodeEval> nodes;
  posterior_nodes(y, s, prior, 32, nodes);
  double num = 0.0, den = 0.0;
  for (const auto& e : nodes) {
    num += e.w * e.rel * (e.x > 0.0 ? 1.0 : (e.x < 0.0 ? -1.0 : 0.0));
    den += e.w * e.rel;
  }
  if (den <= 0.0) {
    throw ExtremeObservationError("posterior_sign_gap: evidence underflow");
  }
  return std::clamp(num / den, -1.0, 1.0);
}

double shrink_sb_laplace_exact(std::int64_t y, double s, const Prior& prior) {
  if (prior.family != PriorFamily::laplace) {
    throw ParameterDomainError("shrink_sb_laplace_exact: laplace prior required");
  }
  if (s == 0.0) return 0.0;
  return static_cast<double>(y) -
         (kSqrt2 * s / prior.sigma_x) * posterior_sign_gap(y, s, prior);
}

double shrink_sbg(std::int64_t y, double s, double sigma_x) {
  if (s == 0.0) return 0.0;
  const double v = sigma_x * sigma_x;
  return v * static_cast<double>(y) / (s + v);
}

double shrink_sbt(std::int64_t y, double s, double sigma_x) {
  if (s == 0.0) return 0.0;
  const double ay = std::fabs(static_cast<double>(y));
  const double thr = kSqrt2 * s / sigma_x;
  const double mag = std::max(ay - thr, 0.0);
  return y >= 0 ? mag : -mag;
}

double slope_origin(double s, const Prior& prior) {
  static std::map<SlopeKey, double> memo;
  static std::mutex mutex;
  const SlopeKey key{static_cast<int>(prior.family),
                     std::round(prior.sigma_x * 1e10) / 1e10, s};
  {
    std::lock_guard<std::mutex> lock(mutex);
    const auto it = memo.find(key);
    if (it != memo.end()) return it->second;
  }
  const double v = posterior_mean(1, s, prior);
  std::lock_guard<std::mutex> lock(mutex);
  memo.emplace(key, v);
  return v;
}

double shrink_sbl(std::int64_t y, double s, const Prior& prior) {
  if (prior.family != PriorFamily::laplace) {
    throw ParameterDomainError("shrink_sbl: laplace prior required");
  }
  if (s == 0.0 || y == 0) return 0.0;
  const double ay = std::fabs(static_cast<double>(y));
  const double thr = kSqrt2 * s / prior.sigma_x;
  const double mag = std::max(ay - thr, slope_origin(s, prior) * ay);
  return y >= 0 ? mag : -mag;
}

double theorem2_estimate(std::int64_t y, double s, const Prior& prior) {
  std::vector<NodeEval> nodes;
  posterior_nodes(y, s, prior, 32, nodes);
  double num = 0.0, den = 0.0;
  for (const auto& e : nodes) {
    SkellamParams p{e.x, s};
    const double lpm = log_pmf(y - 1, p);
    const double lpp = log_pmf(y + 1, p);
    // w * (pmf(y-1) - pmf(y+1)) / 2 * prior, in the common scale of rel
    num += e.w * 0.5 *
           (std::exp(lpm - e.lp0) - std::exp(lpp - e.lp0)) * e.rel;
    den += e.w * e.rel;
  }
  if (den <= 0.0) {
    throw ExtremeObservationError("theorem2_estimate: evidence underflow");
  }
  return static_cast<double>(y) - s * num / den;
}

double theorem2_bound(std::int64_t y, double s, const Prior& prior) {
  std::vector<NodeEval> nodes;
  posterior_nodes(y, s, prior, 32, nodes);
  double den = 0.0, x2 = 0.0, curv = 0.0;
  for (const auto& e : nodes) {
    SkellamParams p{e.x, s};
    const double lpm = log_pmf(y - 1, p);
    const double lpp = log_pmf(y + 1, p);
    const double q = std::max({lpm, e.lp0, lpp});
    const double delta =
        0.5 * (std::exp(lpm - q) + std::exp(lpp - q)) - std::exp(e.lp0 - q);
    den += e.w * e.rel;
    x2 += e.w * e.rel * e.x * e.x;
    // [d/ds ln p]^2 = delta^2 exp(2(q - lp0)) at this node
    curv += e.w * e.rel * delta * delta * std::exp(2.0 * (q - e.lp0));
  }
  if (den <= 0.0) {
    throw ExtremeObservationError("theorem2_bound: evidence underflow");
  }
  return (x2 / den) * (curv / den);
}

}  // namespace skelshrink
