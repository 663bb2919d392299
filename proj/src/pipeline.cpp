#include "skelshrink/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "skelshrink/bayes.hpp"
#include "skelshrink/errors.hpp"
#include "skelshrink/risk.hpp"
#include "skelshrink/stabilize.hpp"

namespace skelshrink {

namespace {

constexpr double kVarFloor = 1e-6;

struct MethodTag {
  Method method;
  const char* name;
};

constexpr MethodTag kMethods[] = {
    {Method::identity, "identity"},
    {Method::ss, "SS"},
    {Method::sb, "SB"},
    {Method::sbg, "SBG"},
    {Method::sbt, "SBT"},
    {Method::sbl, "SBL"},
    {Method::sh, "SH"},
    {Method::hf_ure, "HF_URE"},
    {Method::anscombe_univ_hard, "ANSCOMBE_UNIV_HARD"},
    {Method::anscombe_univ_soft, "ANSCOMBE_UNIV_SOFT"},
    {Method::anscombe_sure, "ANSCOMBE_SURE"},
    {Method::haarfisz_sure, "HAARFISZ_SURE"},
};

bool is_anscombe(Method m) {
  return m == Method::anscombe_univ_hard || m == Method::anscombe_univ_soft ||
         m == Method::anscombe_sure;
}

// The Bayes approximations are tied to the prior shape they were derived
// from; only the exact posterior mean is family-configurable.
PriorFamily rule_family(Method m, PriorFamily configured) {
  if (m == Method::sbg) return PriorFamily::gaussian;
  if (m == Method::sbt || m == Method::sbl) return PriorFamily::laplace;
  return configured;
}

double soft(double v, double tau) {
  const double mag = std::max(std::fabs(v) - tau, 0.0);
  return v >= 0.0 ? mag : -mag;
}

std::string format_param(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), fmt, v);
  return buf;
}

// Resolve sigma_x for a Bayes-family subband: moment estimate of the prior
// variance, then the implicit-variance equation at the subband's mean scale.
// Falls back to sqrt of the raw moment when the target saturates the
// attainable range (wide-support limit, where the two coincide).
double resolve_sigma(const std::vector<std::int64_t>& y,
                     const std::vector<std::int64_t>& t, PriorFamily family) {
  const double var_hat = estimate_prior_var(y, t);
  double s_bar = 0.0;
  for (const auto ti : t) s_bar += static_cast<double>(ti);
  s_bar /= static_cast<double>(t.size());
  if (!(s_bar > 0.0)) return std::sqrt(var_hat);
  try {
    return solve_scale(var_hat, s_bar, family);
  } catch (const InfeasibleTargetError&) {
    return std::sqrt(var_hat);
  }
}

struct GroupRef {
  std::vector<std::size_t> band_index;  // indices into level's band vector
};

void shrink_skellam_group(Method method, const DenoiseConfig& cfg,
                          const std::vector<haar::Band<std::int64_t>*>& bands,
                          std::vector<haar::Band<double>*> out,
                          std::string& param) {
  std::vector<std::int64_t> y, t;
  for (const auto* b : bands) {
    y.insert(y.end(), b->detail.begin(), b->detail.end());
    t.insert(t.end(), b->scale.begin(), b->scale.end());
  }
  if (y.empty()) {
    param = "empty";
    return;
  }

  const auto apply = [&](auto&& rule) {
    for (std::size_t bi = 0; bi < bands.size(); ++bi) {
      const auto& src = *bands[bi];
      auto& dst = *out[bi];
      for (std::size_t i = 0; i < src.detail.size(); ++i) {
        dst.detail[i] = rule(src.detail[i], src.scale[i]);
      }
    }
  };

  switch (method) {
    case Method::ss: {
      const auto [tau, est] = optimize_ss(y, t);
      param = "tau=" + std::to_string(tau);
      apply([tau = tau](std::int64_t yi, std::int64_t) {
        return soft(static_cast<double>(yi), static_cast<double>(tau));
      });
      break;
    }
    case Method::sh: {
      double sigma;
      if (cfg.fixed_sigma_x) {
        sigma = *cfg.fixed_sigma_x;
      } else {
        sigma = optimize_sh(y, t).first;
      }
      param = "sigma=" + format_param("%.6g", sigma);
      apply([sigma](std::int64_t yi, std::int64_t ti) {
        return static_cast<double>(yi) + sh_theta(yi, ti, sigma);
      });
      break;
    }
    case Method::hf_ure: {
      const auto [tau, est] = optimize_hf(y, t);
      param = "tau=" + format_param("%.6g", tau);
      apply([tau = tau](std::int64_t yi, std::int64_t ti) {
        return static_cast<double>(yi) + hf_theta(yi, ti, tau);
      });
      break;
    }
    case Method::haarfisz_sure: {
      std::vector<double> z(y.size());
      for (std::size_t i = 0; i < y.size(); ++i) {
        z[i] = haar_fisz_fwd(y[i], t[i]);
      }
      const double tau = sureshrink_threshold(z, 1.0);
      param = "tau=" + format_param("%.6g", tau);
      apply([tau](std::int64_t yi, std::int64_t ti) {
        return haar_fisz_inv(soft(haar_fisz_fwd(yi, ti), tau), ti);
      });
      break;
    }
    case Method::sb:
    case Method::sbg:
    case Method::sbt:
    case Method::sbl: {
      const PriorFamily family = rule_family(method, cfg.prior_family);
      const double sigma = cfg.fixed_sigma_x ? *cfg.fixed_sigma_x
                                             : resolve_sigma(y, t, family);
      param = "sigma=" + format_param("%.6g", sigma);
      if (method == Method::sbg) {
        apply([sigma](std::int64_t yi, std::int64_t ti) {
          return shrink_sbg(yi, plug_in_s(ti), sigma);
        });
      } else if (method == Method::sbt) {
        apply([sigma](std::int64_t yi, std::int64_t ti) {
          return shrink_sbt(yi, plug_in_s(ti), sigma);
        });
      } else if (method == Method::sbl) {
        const Prior prior{PriorFamily::laplace, sigma, 0.0};
        apply([prior](std::int64_t yi, std::int64_t ti) {
          if (ti == 0) return 0.0;
          return shrink_sbl(yi, plug_in_s(ti), prior.rebound(plug_in_s(ti)));
        });
      } else {
        const Prior prior{family, sigma, 0.0};
        std::map<std::pair<std::int64_t, std::int64_t>, double> memo;
        apply([&](std::int64_t yi, std::int64_t ti) {
          if (ti == 0) return 0.0;
          const auto key = std::make_pair(yi, ti);
          const auto it = memo.find(key);
          if (it != memo.end()) return it->second;
          const double s = plug_in_s(ti);
          const double v = posterior_mean(yi, s, prior.rebound(s));
          memo.emplace(key, v);
          return v;
        });
      }
      break;
    }
    default:
      throw UsageError("shrink_skellam_group: not a coefficient-domain method");
  }
}

haar::RealSignal denoise_anscombe(const haar::CountSignal& g,
                                  const DenoiseConfig& cfg,
                                  std::string* resolved) {
  haar::RealSignal z;
  z.data = anscombe(g.data);
  z.rows = g.rows;
  z.cols = g.cols;
  z.ndim = g.ndim;
  auto pyr = haar::decompose(z, cfg.levels, cfg.mode);

  std::string params;
  for (int k = 1; k <= cfg.levels; ++k) {
    // Unnormalized Haar gain on unit-variance input: each coefficient sums
    // 2^k (1D) resp. 4^k (2D) samples.
    const double sigma_k =
        g.ndim == 1 ? std::sqrt(std::pow(2.0, k)) : std::pow(2.0, k);
    for (auto& band : pyr.detail[static_cast<std::size_t>(k - 1)]) {
      double tau;
      if (cfg.method == Method::anscombe_sure) {
        tau = sureshrink_threshold(band.detail, sigma_k);
      } else {
        tau = universal_threshold(
            std::max<std::int64_t>(2, static_cast<std::int64_t>(band.detail.size())),
            sigma_k);
      }
      if (!params.empty()) params += ";";
      params += "k" + std::to_string(k) + ":tau=" + format_param("%.6g", tau);
      for (auto& v : band.detail) {
        if (cfg.method == Method::anscombe_univ_hard) {
          v = std::fabs(v) >= tau ? v : 0.0;
        } else {
          v = soft(v, tau);
        }
      }
    }
  }
  auto rec = haar::reconstruct(pyr);
  for (auto& v : rec.data) {
    v = std::max(0.0, anscombe_inv(v));
  }
  if (resolved) *resolved = params;
  return rec;
}

}  // namespace

Method method_from_name(const std::string& name) {
  for (const auto& tag : kMethods) {
    if (name == tag.name) return tag.method;
  }
  throw UsageError("unknown method: " + name);
}

std::string method_name(Method m) {
  for (const auto& tag : kMethods) {
    if (tag.method == m) return tag.name;
  }
  return "?";
}

double estimate_prior_var(const std::vector<std::int64_t>& y,
                          const std::vector<std::int64_t>& t) {
  if (y.empty() || y.size() != t.size()) {
    throw ParameterDomainError("estimate_prior_var: nonempty matched arrays required");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    sum += static_cast<double>(y[i]) * static_cast<double>(y[i]) -
           static_cast<double>(t[i]);
  }
  return std::max(kVarFloor, sum / static_cast<double>(y.size()));
}

double plug_in_s(std::int64_t t) {
  if (t < 0) {
    throw ParameterDomainError("plug_in_s: t must be nonnegative");
  }
  return static_cast<double>(t);
}

haar::RealSignal denoise(const haar::CountSignal& g, const DenoiseConfig& cfg,
                         std::string* resolved_params) {
  if (cfg.levels < 1) {
    throw UsageError("denoise: levels must be >= 1");
  }
  if (cfg.method == Method::identity) {
    haar::RealSignal out;
    out.data.assign(g.data.begin(), g.data.end());
    out.rows = g.rows;
    out.cols = g.cols;
    out.ndim = g.ndim;
    if (resolved_params) *resolved_params = "";
    return out;
  }
  if (is_anscombe(cfg.method)) {
    return denoise_anscombe(g, cfg, resolved_params);
  }

  auto pyr = haar::decompose(g, cfg.levels, cfg.mode);
  auto real = haar::to_real(pyr);

  std::string params;
  for (int k = 0; k < cfg.levels; ++k) {
    auto& bands = pyr.detail[static_cast<std::size_t>(k)];
    auto& rbands = real.detail[static_cast<std::size_t>(k)];
    std::vector<GroupRef> groups;
    if (cfg.pool_orientations || bands.size() == 1) {
      GroupRef all;
      for (std::size_t i = 0; i < bands.size(); ++i) {
        all.band_index.push_back(i);
      }
      groups.push_back(std::move(all));
    } else {
      for (std::size_t i = 0; i < bands.size(); ++i) {
        groups.push_back(GroupRef{{i}});
      }
    }
    static const char* kOrient[] = {"lh", "hl", "hh"};
    for (const auto& group : groups) {
      std::vector<haar::Band<std::int64_t>*> in;
      std::vector<haar::Band<double>*> out;
      for (const auto bi : group.band_index) {
        in.push_back(&bands[bi]);
        out.push_back(&rbands[bi]);
      }
      std::string p;
      shrink_skellam_group(cfg.method, cfg, in, out, p);
      if (!params.empty()) params += ";";
      params += "k" + std::to_string(k + 1);
      if (groups.size() > 1) params += kOrient[group.band_index[0] % 3];
      params += ":" + p;
    }
  }

  auto rec = haar::reconstruct(real);
  for (auto& v : rec.data) v = std::max(0.0, v);
  if (resolved_params) *resolved_params = params;
  return rec;
}

haar::RealSignal denoise(const haar::CountSignal& g,
                         const DenoiseConfig& cfg) {
  return denoise(g, cfg, nullptr);
}

}  // namespace skelshrink
