#include "skelshrink/risk.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>

#include "skelshrink/errors.hpp"

namespace skelshrink {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

double sgn(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

void check_pairs(const std::vector<std::int64_t>& y,
                 const std::vector<std::int64_t>& t) {
  if (y.size() != t.size()) {
    throw MalformedPyramidError("risk: y/t length mismatch");
  }
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (t[i] < std::llabs(y[i]) || ((t[i] + y[i]) & 1) != 0) {
      throw MalformedPyramidError("risk: (y, t) violates dominance or parity");
    }
  }
}

}  // namespace

ShrinkageRule soft_threshold_rule(std::int64_t tau) {
  return {[tau](std::int64_t y, std::int64_t) -> double {
    const double ay = static_cast<double>(std::llabs(y));
    const double td = static_cast<double>(tau);
    if (ay >= td) return -sgn(static_cast<double>(y)) * td;
    return -static_cast<double>(y);
  }};
}

ShrinkageRule sh_rule(double sigma_x) {
  return {[sigma_x](std::int64_t y, std::int64_t t) {
    return sh_theta(y, t, sigma_x);
  }};
}

ShrinkageRule haar_fisz_soft_rule(double tau) {
  return {[tau](std::int64_t y, std::int64_t t) {
    return hf_theta(y, t, tau);
  }};
}

RiskEstimate ure(const ShrinkageRule& rule, const std::vector<std::int64_t>& y,
                 const std::vector<std::int64_t>& t) {
  check_pairs(y, t);
  RiskEstimate est;
  est.contributions.resize(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    const std::int64_t yi = y[i];
    const std::int64_t ti = t[i];
    const std::int64_t tm = std::max<std::int64_t>(ti - 1, 0);
    const double th = rule.theta(yi, ti);
    const double c = th * th + static_cast<double>(ti) +
                     2.0 * static_cast<double>(yi) * th -
                     static_cast<double>(ti + yi) * rule.theta(yi - 1, tm) +
                     static_cast<double>(ti - yi) * rule.theta(yi + 1, tm);
    est.contributions[i] = c;
    est.value += c;
  }
  return est;
}

double ss_objective(std::int64_t tau, const std::vector<std::int64_t>& y,
                    const std::vector<std::int64_t>& t) {
  check_pairs(y, t);
  if (tau == 0) {
    // tau = 0 is the identity rule; an untouched coordinate risks exactly t.
    double sum = 0.0;
    for (const auto ti : t) sum += static_cast<double>(ti);
    return sum;
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const std::int64_t ay = std::llabs(y[i]);
    if (ay > tau) {
      sum += static_cast<double>(t[i]);
    } else if (ay < tau) {
      sum -= static_cast<double>(t[i]);
    }
    sum += static_cast<double>(std::min(ay * ay, tau * tau));
    if (ay == tau) sum -= static_cast<double>(tau);
  }
  return sum;
}

std::pair<std::int64_t, RiskEstimate> optimize_ss(
    const std::vector<std::int64_t>& y, const std::vector<std::int64_t>& t) {
  check_pairs(y, t);
  if (y.empty()) {
    throw ParameterDomainError("optimize_ss: empty subband");
  }
  std::int64_t ymax = 0;
  for (const auto yi : y) {
    ymax = std::max<std::int64_t>(ymax, std::llabs(yi));
  }

  // Incremental sweep over integer tau using tallies grouped by |y|;
  // every partial sum is an exact integer, so the swept objective is
  // bit-identical to ss_objective at each candidate.
  std::vector<double> t_at(ymax + 1, 0.0);    // sum of t over |y| == a
  std::vector<double> n_at(ymax + 1, 0.0);    // count of |y| == a
  std::vector<double> y2_at(ymax + 1, 0.0);   // sum of y^2 over |y| == a
  double t_total = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const std::int64_t a = std::llabs(y[i]);
    t_at[a] += static_cast<double>(t[i]);
    n_at[a] += 1.0;
    y2_at[a] += static_cast<double>(a) * static_cast<double>(a);
    t_total += static_cast<double>(t[i]);
  }

  std::int64_t best_tau = 0;
  double best = t_total;  // tau = 0: identity
  double t_above = t_total;  // sum t over |y| > tau
  double t_below = 0.0;      // sum t over |y| < tau
  double y2_below = 0.0;     // sum y^2 over |y| < tau
  double n_below = 0.0;      // count |y| < tau
  const double n_total = static_cast<double>(y.size());
  for (std::int64_t tau = 1; tau <= ymax + 1; ++tau) {
    // shift the |y| == tau-1 group from "above" into "below"
    if (tau - 1 <= ymax) {
      t_above -= t_at[tau - 1];
      t_below += t_at[tau - 1];
      y2_below += y2_at[tau - 1];
      n_below += n_at[tau - 1];
    }
    const double t_eq = tau <= ymax ? t_at[tau] : 0.0;
    const double n_eq = tau <= ymax ? n_at[tau] : 0.0;
    const double n_above = n_total - n_below - n_eq;
    const double tau2 = static_cast<double>(tau) * static_cast<double>(tau);
    // sgn term (+t above, -t below, ties 0), min term, tie term
    const double objective =
        (t_above - t_eq - t_below) + y2_below + tau2 * (n_above + n_eq) -
        static_cast<double>(tau) * n_eq;
    if (objective < best) {
      best = objective;
      best_tau = tau;
    }
  }
  auto est = ure(soft_threshold_rule(best_tau), y, t);
  return {best_tau, std::move(est)};
}

double sh_theta(std::int64_t y, std::int64_t t, double sigma_x) {
  const double thr = kSqrt2 / sigma_x * static_cast<double>(t);
  const double yd = static_cast<double>(y);
  if (std::fabs(yd) >= thr) return -sgn(yd) * thr;
  return -yd;
}

double sh_objective_closed(double sigma_x, const std::vector<std::int64_t>& y,
                           const std::vector<std::int64_t>& t) {
  check_pairs(y, t);
  const double sig = sigma_x / kSqrt2;
  double sum = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double ti = static_cast<double>(t[i]);
    const double ay = static_cast<double>(std::llabs(y[i]));
    const double tt = (ti - 1.0) / sig;  // shifted threshold
    const double thr = ti / sig;
    sum += sgn(ay - tt) * ti + std::min(ay * ay, thr * thr);
    if (ay > thr) sum -= 2.0 * thr;
    if (ay == std::ceil(tt - 1.0)) {
      const double c = ti * (std::ceil(tt) - tt) -
                       std::ceil(tt - 1.0) * std::ceil(tt - 1.0) +
                       (tt - 1.0) * std::ceil(tt - 1.0);
      sum += c;
    }
    if (ay == std::floor(tt + 1.0)) {
      const double f1 = std::floor(tt + 1.0);
      double d = ti * (std::floor(tt) - tt);
      if (thr >= f1) {
        d += -f1 * f1 + (tt - 1.0) * f1;
      } else {
        d += f1 * f1 - (tt - 1.0) * f1;
      }
      sum += d;
    }
  }
  return sum;
}

std::pair<double, RiskEstimate> optimize_sh(
    const std::vector<std::int64_t>& y, const std::vector<std::int64_t>& t) {
  check_pairs(y, t);
  if (y.empty()) {
    throw ParameterDomainError("optimize_sh: empty subband");
  }
  const auto objective = [&](double sigma) {
    return ure(sh_rule(sigma), y, t).value;
  };

  double best_sigma = 0.1;
  double best = std::numeric_limits<double>::infinity();
  const double llo = std::log(0.1), lhi = std::log(1e3);
  constexpr int kGrid = 50;
  int best_idx = 0;
  for (int i = 0; i < kGrid; ++i) {
    const double lg = llo + (lhi - llo) * i / (kGrid - 1);
    const double v = objective(std::exp(lg));
    if (v < best) {
      best = v;
      best_sigma = std::exp(lg);
      best_idx = i;
    }
  }
  double a = llo + (lhi - llo) * std::max(0, best_idx - 1) / (kGrid - 1);
  double b = llo + (lhi - llo) * std::min(kGrid - 1, best_idx + 1) / (kGrid - 1);
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - gr * (b - a);
  double d = a + gr * (b - a);
  double fc = objective(std::exp(c));
  double fd = objective(std::exp(d));
  const auto consider = [&](double lx, double v) {
    if (v < best) {
      best = v;
      best_sigma = std::exp(lx);
    }
  };
  consider(c, fc);
  consider(d, fd);
  while (b - a > 1e-4) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = objective(std::exp(c));
      consider(c, fc);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = objective(std::exp(d));
      consider(d, fd);
    }
  }
  auto est = ure(sh_rule(best_sigma), y, t);
  return {best_sigma, std::move(est)};
}

double hf_theta(std::int64_t y, std::int64_t t, double tau) {
  const double yd = static_cast<double>(y);
  const double ay = std::fabs(yd);
  const double cut = std::sqrt(static_cast<double>(t)) * tau;
  const double xhat = sgn(yd) * std::max(ay - cut, 0.0);
  return xhat - yd;
}

std::pair<double, RiskEstimate> optimize_hf(
    const std::vector<std::int64_t>& y, const std::vector<std::int64_t>& t) {
  check_pairs(y, t);
  if (y.empty()) {
    throw ParameterDomainError("optimize_hf: empty subband");
  }
  std::vector<double> ratios;
  ratios.reserve(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (t[i] > 0) {
      ratios.push_back(static_cast<double>(std::llabs(y[i])) /
                       std::sqrt(static_cast<double>(t[i])));
    }
  }
  std::sort(ratios.begin(), ratios.end());
  ratios.erase(std::unique(ratios.begin(), ratios.end()), ratios.end());
  // Cap the scan; large subbands keep a deterministic quantile subset.
  constexpr std::size_t kMaxBreaks = 1024;
  if (ratios.size() > kMaxBreaks) {
    std::vector<double> kept;
    kept.reserve(kMaxBreaks);
    const double step = static_cast<double>(ratios.size()) / kMaxBreaks;
    for (std::size_t j = 0; j < kMaxBreaks; ++j) {
      kept.push_back(ratios[static_cast<std::size_t>(j * step)]);
    }
    kept.push_back(ratios.back());
    ratios = std::move(kept);
  }
  std::vector<double> cand{0.0};
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    cand.push_back(ratios[i]);
    if (i + 1 < ratios.size()) {
      cand.push_back(0.5 * (ratios[i] + ratios[i + 1]));
    }
  }
  cand.push_back((ratios.empty() ? 0.0 : ratios.back()) + 1.0);

  double best_tau = 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (const double tau : cand) {
    const double v = ure(haar_fisz_soft_rule(tau), y, t).value;
    if (v < best) {
      best = v;
      best_tau = tau;
    }
  }
  auto est = ure(haar_fisz_soft_rule(best_tau), y, t);
  return {best_tau, std::move(est)};
}

double sure_gaussian(double tau, const std::vector<double>& coeffs,
                     double sigma2) {
  if (!(sigma2 > 0.0)) {
    throw ParameterDomainError("sure_gaussian: sigma^2 must be positive");
  }
  double sum = static_cast<double>(coeffs.size()) * sigma2;
  for (const double c : coeffs) {
    sum += std::min(c * c, tau * tau);
    if (std::fabs(c) < tau) sum -= 2.0 * sigma2;
  }
  return sum;
}

}  // namespace skelshrink
