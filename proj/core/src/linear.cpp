#include "sigmalab/linear.hpp"

#include <fftw3.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "sigmalab/fft.hpp"
#include "sigmalab/quadrature.hpp"

namespace sigmalab {

namespace {
constexpr double kPi = 3.141592653589793238462643;
constexpr double kE = 2.718281828459045235360287;
}  // namespace

std::string to_string(Zone z) {
  switch (z) {
    case Zone::Full: return "full";
    case Zone::Low: return "low";
    case Zone::Mid: return "mid";
    case Zone::High: return "high";
  }
  return "?";
}

std::function<double(double)> linear_symbol(double t, const DerivativeSpec& d, Zone zone,
                                            const ModelParams& params,
                                            const CutoffConfig& cfg) {
  params.validate();
  cfg.validate();
  d.validate();
  if (t < 0.0) throw std::domain_error("linear_symbol: t must be >= 0");
  return [t, d, zone, params, cfg](double rho) {
    const Propagator2x2 p = propagator(t, rho, params);
    double m = d.ell == 0 ? p.e1 : p.de1;
    if (d.power() != 0.0) m *= std::pow(rho, d.power());
    switch (zone) {
      case Zone::Full: break;
      case Zone::Low: m *= phi0(rho, cfg); break;
      case Zone::Mid: m *= phi1(rho, cfg, params); break;
      case Zone::High: m *= phi_inf(rho, cfg, params); break;
    }
    return m;
  };
}

std::function<double(double)> linear_symbol_envelope(double t, const DerivativeSpec& d,
                                                     const ModelParams& params) {
  params.validate();
  d.validate();
  return [t, d, params](double rho) {
    const double beta = 0.5 * std::pow(rho, 2.0 * params.theta);
    const double c = std::pow(rho, 2.0 * params.sigma);
    const double z = beta * beta - c;
    double rate;  // Re lambda_plus
    if (z < 0.0) {
      rate = -beta;
    } else {
      const double den = beta + std::sqrt(z);
      rate = den > 0.0 ? -c / den : 0.0;
    }
    const double decay = std::exp(rate * t);
    // |e1| <= t e^{rate t}; |de1| <= (1 + 2 beta t) e^{rate t}
    const double entry = (d.ell == 0 ? t : 1.0 + 2.0 * beta * t) * decay;
    return std::pow(rho, d.power()) * entry;
  };
}

std::function<double(double)> linear_symbol_phase(double t, const ModelParams& params) {
  params.validate();
  return [t, params](double rho) {
    if (rho <= 0.0) return 0.0;
    const double x = std::pow(rho, 2.0 * params.theta - params.sigma);
    if (!(x < 2.0)) return 0.0;
    return t * std::pow(rho, params.sigma) * std::sqrt(1.0 - 0.25 * x * x);
  };
}

Field solve_linear(const Field& u1, double t, const DerivativeSpec& d, Zone zone,
                   const ModelParams& params, const CutoffConfig& cfg) {
  return apply_multiplier(u1, linear_symbol(t, d, zone, params, cfg));
}

double solve_linear_radial_l2(const RadialProfile& u1, int n, double t,
                              const DerivativeSpec& d, Zone zone, const ModelParams& params,
                              const CutoffConfig& cfg, double rel_tol) {
  const auto sym = linear_symbol(t, d, zone, params, cfg);
  const auto env = linear_symbol_envelope(t, d, params);
  const auto phase = linear_symbol_phase(t, params);
  // sharpen the envelope with the zone's support so the tail bound hits zero
  const double ninf = cfg.resolved_n_inf(params);
  const double eps0 = cfg.eps0;
  auto zoned_env = [env, zone, ninf, eps0](double rho) {
    switch (zone) {
      case Zone::Full: break;
      case Zone::Low:
        if (rho >= eps0) return 0.0;
        break;
      case Zone::Mid:
        if (rho <= 0.5 * eps0 || rho >= 2.0 * ninf) return 0.0;
        break;
      case Zone::High:
        if (rho <= ninf) return 0.0;
        break;
    }
    return env(rho);
  };
  return radial_l2_norm(u1, sym, n, zoned_env, phase, rel_tol);
}

void DecaySeries::validate() const {
  if (times.size() != values.size())
    throw std::invalid_argument("DecaySeries: times/values size mismatch");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (i > 0 && !(times[i] > times[i - 1]))
      throw std::invalid_argument("DecaySeries: times must be strictly increasing");
    if (!std::isfinite(values[i]) || values[i] < 0.0)
      throw std::invalid_argument("DecaySeries: values must be finite and nonnegative");
  }
}

double box_validity_tmax(double box_length, const ModelParams& params) {
  params.validate();
  if (!(box_length > 0.0)) throw std::domain_error("box_validity_tmax: box_length > 0");
  if (params.theta == 0.0) return kInf;  // no low-frequency damping floor to outrun
  return std::pow(box_length / (2.0 * kPi), 2.0 * params.theta);
}

namespace {

std::string norm_label(const NormSpec& s) {
  char buf[128];
  const char* q = s.q == kInf ? "inf" : nullptr;
  if (q)
    std::snprintf(buf, sizeof buf, "Linf b=%g beta=%d ell=%d zone=%s", s.deriv.b,
                  s.deriv.beta_len, s.deriv.ell, to_string(s.zone).c_str());
  else
    std::snprintf(buf, sizeof buf, "L%g b=%g beta=%d ell=%d zone=%s", s.q, s.deriv.b,
                  s.deriv.beta_len, s.deriv.ell, to_string(s.zone).c_str());
  return buf;
}

}  // namespace

DecaySeries decay_series(const Field& u1, const NormSpec& spec,
                         const std::vector<double>& times, const ModelParams& params,
                         const CutoffConfig& cfg) {
  DecaySeries out;
  out.label = norm_label(spec);
  out.validity_tmax = box_validity_tmax(u1.grid().box_length, params);
  out.times = times;
  out.values.reserve(times.size());
  for (double t : times) {
    if (t > out.validity_tmax) out.window_warning = true;
    const Field u = solve_linear(u1, t, spec.deriv, spec.zone, params, cfg);
    out.values.push_back(lp_norm(u, spec.q));
  }
  if (out.window_warning)
    std::fprintf(stderr, "decay_series: samples beyond box validity t <= %.3g\n",
                 out.validity_tmax);
  out.validate();
  return out;
}

DecaySeries decay_series_radial(const RadialProfile& u1, int n, const NormSpec& spec,
                                const std::vector<double>& times, const ModelParams& params,
                                const CutoffConfig& cfg, double rel_tol) {
  if (spec.q != 2.0)
    throw std::domain_error("decay_series_radial: the Plancherel path computes L2 only");
  DecaySeries out;
  out.label = norm_label(spec);
  out.times = times;
  out.values.reserve(times.size());
  for (double t : times)
    out.values.push_back(
        solve_linear_radial_l2(u1, n, t, spec.deriv, spec.zone, params, cfg, rel_tol));
  out.validate();
  return out;
}

RateFit fit_rate(const DecaySeries& s, double t_min, double t_max, FitModel model) {
  if (!(t_min < t_max)) throw std::invalid_argument("fit_rate: degenerate window");
  std::vector<double> x, y, z;
  for (std::size_t i = 0; i < s.times.size(); ++i) {
    const double t = s.times[i];
    const double v = s.values[i];
    if (t < t_min || t > t_max || !(v > 0.0) || !std::isfinite(v)) continue;
    x.push_back(std::log1p(t));
    y.push_back(std::log(v));
    z.push_back(std::log(std::log(kE + t)));
  }
  const std::size_t m = x.size();
  if (m < 8) throw std::invalid_argument("fit_rate: need at least 8 usable samples in window");

  RateFit fit;
  fit.t_min = t_min;
  fit.t_max = t_max;

  double mean_y = 0.0;
  for (double v : y) mean_y += v;
  mean_y /= static_cast<double>(m);
  double ss_tot = 0.0;
  for (double v : y) ss_tot += (v - mean_y) * (v - mean_y);

  double ss_res = 0.0;
  if (model == FitModel::Power) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < m; ++i) {
      sx += x[i];
      sy += y[i];
      sxx += x[i] * x[i];
      sxy += x[i] * y[i];
    }
    const double den = m * sxx - sx * sx;
    if (den == 0.0) throw std::invalid_argument("fit_rate: degenerate regressor");
    fit.slope = (m * sxy - sx * sy) / den;
    const double icept = (sy - fit.slope * sx) / m;
    for (std::size_t i = 0; i < m; ++i) {
      const double r = y[i] - (icept + fit.slope * x[i]);
      ss_res += r * r;
    }
  } else {
    // regressors (1, log(1+t), log log(e+t)); 3x3 normal equations
    double a[3][4] = {};
    for (std::size_t i = 0; i < m; ++i) {
      const double r[3] = {1.0, x[i], z[i]};
      for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < 3; ++k) a[j][k] += r[j] * r[k];
        a[j][3] += r[j] * y[i];
      }
    }
    for (int col = 0; col < 3; ++col) {  // gaussian elimination, partial pivot
      int piv = col;
      for (int r = col + 1; r < 3; ++r)
        if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
      std::swap(a[piv], a[col]);
      if (a[col][col] == 0.0) throw std::invalid_argument("fit_rate: degenerate regressors");
      for (int r = 0; r < 3; ++r) {
        if (r == col) continue;
        const double fctr = a[r][col] / a[col][col];
        for (int k = col; k < 4; ++k) a[r][k] -= fctr * a[col][k];
      }
    }
    const double icept = a[0][3] / a[0][0];
    fit.slope = a[1][3] / a[1][1];
    fit.log_coefficient = a[2][3] / a[2][2];
    for (std::size_t i = 0; i < m; ++i) {
      const double r = y[i] - (icept + fit.slope * x[i] + fit.log_coefficient * z[i]);
      ss_res += r * r;
    }
  }
  fit.r_squared = ss_tot > 0.0 ? std::max(0.0, 1.0 - ss_res / ss_tot) : 1.0;
  return fit;
}

std::vector<DyadicRow> dyadic_piece_norms(double t, int k_min, int k_max,
                                          const ModelParams& params,
                                          const CutoffConfig& cfg) {
  params.validate();
  cfg.validate();
  if (!(t > 0.0)) throw std::domain_error("dyadic_piece_norms: t must be positive");
  if (k_min > k_max) throw std::invalid_argument("dyadic_piece_norms: empty k range");

  std::vector<DyadicRow> rows;
  for (int k = k_min; k <= k_max; ++k) {
    DyadicRow row;
    row.k = k;
    const double lo = std::ldexp(1.0, k - 1);
    const double hi = std::ldexp(1.0, k + 1);

    // eta sampling resolving both the cutoff edges and the sinc oscillation
    const double sm1 = params.sigma - 1.0;
    const double slope_bound =
        2.0 * params.sigma *
        std::max(std::pow(lo, sm1), std::pow(hi, sm1));  // max |d omega_tilde / d eta|
    double deta = std::min(kPi / (4.0 * slope_bound + 16.0), (hi - lo) / 4096.0);
    std::size_t M = static_cast<std::size_t>(std::ceil(hi / deta));
    M = std::min<std::size_t>(M, (1u << 22));
    deta = hi / static_cast<double>(M);

    std::vector<double> g(M + 1);
    double sup = 0.0;
    for (std::size_t j = 0; j <= M; ++j) {
      const double eta = j * deta;
      double v = 0.0;
      if (eta > lo && eta < hi) {
        v = psi_dyadic(k, eta) * rescaled_low_symbol(t, eta, params, cfg);
      }
      g[j] = v;
      sup = std::max(sup, std::abs(v));
    }
    row.sup_value = sup;
    row.zero = sup == 0.0;
    row.sup_ratio = sup / std::pow(2.0, -params.sigma * k);

    if (!row.zero) {
      // sup of the 1-D inverse transform via a type-I cosine transform:
      // x-resolution pi/(M deta) with Nyquist pi/deta past the stationary point
      std::vector<double> y(M + 1);
      {
        std::lock_guard<std::mutex> lock(fftw_planner_mutex());
        fftw_plan plan = fftw_plan_r2r_1d(static_cast<int>(M + 1), g.data(), y.data(),
                                          FFTW_REDFT00, FFTW_ESTIMATE);
        if (!plan) throw std::runtime_error("dyadic_piece_norms: planner failed");
        fftw_execute(plan);
        fftw_destroy_plan(plan);
      }
      double inv_sup = 0.0;
      for (std::size_t l = 0; l <= M; ++l) inv_sup = std::max(inv_sup, std::abs(y[l]));
      inv_sup *= deta / (2.0 * kPi);
      row.inv_sup = inv_sup;
      const double model = std::pow(2.0, k * (1.0 - params.sigma - 0.5 * params.sigma));
      row.inv_ratio = inv_sup / model;
    }
    rows.push_back(row);
  }
  return rows;
}

SplitEnvelopes split_envelopes(const EstimateSpec& es, const ModelParams& params) {
  es.validate();
  params.validate();
  const double n = params.n;
  const double sig = params.sigma;
  const double th = params.theta;
  const double dpq = es.dpq();
  const double reg = es.beta_len + es.b;
  SplitEnvelopes r;
  r.split_exponent = 1.0 - (n / sig) * dpq - reg / sig - es.ell;
  if (th > 0.0)
    r.unsplit_exponent =
        sig / (2.0 * th) - (n / (2.0 * th)) * dpq - reg / (2.0 * th) - (sig / (2.0 * th)) * es.ell;
  else
    r.unsplit_exponent = kInf;  // no diffusive block to split off
  // Integrability gate for the single-block route: the Hoelder step needs
  // |xi|^{reg - sigma} in L^r near zero, 1/r = 1/p - 1/q.
  r.direct_applies = es.ell >= 1 || (dpq > 0.0 ? reg + n * dpq > sig : reg >= sig);
  r.split_tighter = r.split_exponent < r.unsplit_exponent - 1e-12;
  return r;
}

SplitCompareResult split_compare(const Field& u1, const std::vector<double>& times,
                                 const EstimateSpec& es, const ModelParams& params,
                                 const CutoffConfig& cfg, double budget) {
  SplitCompareResult out;
  out.envelopes = split_envelopes(es, params);

  NormSpec ns;
  ns.q = es.q;
  ns.deriv.beta_len = es.beta_len;
  ns.deriv.b = es.b;
  ns.deriv.ell = es.ell;
  ns.zone = Zone::Low;
  out.measured = decay_series(u1, ns, times, params, cfg);

  // Measure against the tightest envelope that is actually attained: the
  // single-block value only counts when its integrability gate holds.
  const double expo =
      out.envelopes.direct_applies
          ? std::min(out.envelopes.split_exponent, out.envelopes.unsplit_exponent)
          : out.envelopes.split_exponent;
  double worst = 0.0;
  if (!out.measured.values.empty() && out.measured.values.front() > 0.0) {
    const double anchor =
        out.measured.values.front() / std::pow(1.0 + out.measured.times.front(), expo);
    for (std::size_t i = 0; i < out.measured.times.size(); ++i) {
      const double env = anchor * std::pow(1.0 + out.measured.times[i], expo);
      if (env > 0.0) worst = std::max(worst, out.measured.values[i] / env);
    }
  }
  out.worst_excess = worst;
  out.measured_below = worst > 0.0 && worst <= budget;
  return out;
}

HighFreqFit high_freq_decay(const RadialProfile& u1, int n, const std::vector<double>& times,
                            const DerivativeSpec& d, const ModelParams& params,
                            const CutoffConfig& cfg) {
  HighFreqFit out;
  NormSpec ns;
  ns.q = 2.0;
  ns.deriv = d;
  ns.zone = Zone::High;
  out.series = decay_series_radial(u1, n, ns, times, params, cfg);

  // log-linear fit of ln(value) against t on the usable part of the series
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t m = 0;
  for (std::size_t i = 0; i < out.series.times.size(); ++i) {
    const double v = out.series.values[i];
    if (!(v > 1e-280) || !std::isfinite(v)) continue;
    const double xi = out.series.times[i];
    const double yi = std::log(v);
    sx += xi;
    sy += yi;
    sxx += xi * xi;
    sxy += xi * yi;
    ++m;
  }
  if (m < 3) throw std::runtime_error("high_freq_decay: series underflowed, shrink the window");
  const double den = m * sxx - sx * sx;
  if (den == 0.0) throw std::runtime_error("high_freq_decay: degenerate time grid");
  out.c_fit = -(m * sxy - sx * sy) / den;

  const double ninf = cfg.resolved_n_inf(params);
  double floor = kInf;
  const double hi = std::max(1e4, 1e3 * ninf);
  for (int j = 0; j <= 512; ++j) {
    const double rho = ninf * std::pow(hi / ninf, j / 512.0);
    floor = std::min(floor, std::abs(lambda_pm(rho, params).first.real()));
  }
  out.spectral_floor = floor;
  out.ratio = floor > 0.0 ? out.c_fit / floor : kInf;
  return out;
}

SingularConvolutionCheck lemma_singular_convolution(double nu, double mu,
                                                    const std::vector<double>& times) {
  if (!(nu < 1.0 && mu > 1.0))
    throw std::domain_error("lemma_singular_convolution: need nu < 1 < mu");
  SingularConvolutionCheck out;
  out.times = times;
  out.ratios.reserve(times.size());
  for (double t : times) {
    if (!(t > 0.0)) throw std::domain_error("lemma_singular_convolution: t must be positive");
    const double scale = std::pow(1.0 + t, -nu);
    double integral = 0.0;
    const double split = std::max(0.0, t - 1.0);
    if (split > 0.0) {
      integral += adaptive_simpson(
          [t, nu, mu](double s) {
            return std::pow(t - s, -nu) * std::pow(1.0 + s, -mu);
          },
          0.0, split, 1e-9 * scale);
    }
    // near s = t substitute u = (t-s)^{1-nu}; the Jacobian absorbs the singularity
    const double one_m = 1.0 - nu;
    const double U = std::pow(t - split, one_m);
    integral += adaptive_simpson(
        [t, mu, one_m](double u) {
          const double s = t - std::pow(u, 1.0 / one_m);
          return std::pow(1.0 + s, -mu) / one_m;
        },
        0.0, U, 1e-9 * scale);
    out.ratios.push_back(integral / scale);
  }
  out.sup_ratio = *std::max_element(out.ratios.begin(), out.ratios.end());
  return out;
}

}  // namespace sigmalab
