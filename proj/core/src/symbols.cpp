#include "sigmalab/symbols.hpp"

#include <cmath>

namespace sigmalab {

double sinc(double x) {
  const double ax = std::abs(x);
  if (ax < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0);
  }
  return std::sin(x) / x;
}

// C-infinity ramp: 0 for x <= 0, 1 for x >= 1, built from exp(-1/x).
static double smooth_ramp(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / x);
  const double b = std::exp(-1.0 / (1.0 - x));
  return a / (a + b);
}

// 1 below r0, smooth transition, exactly 0 above r1.
static double step_down(double r, double r0, double r1) {
  return 1.0 - smooth_ramp((r - r0) / (r1 - r0));
}

double CutoffConfig::resolved_n_inf(const ModelParams& params) const {
  validate();
  params.validate();
  if (n_inf > 0.0) return n_inf;
  const double gap = 2.0 * params.theta - params.sigma;
  if (gap > 0.0) return std::max(8.0, 4.0 * std::pow(2.0, 1.0 / gap));
  return 8.0;  // double root sits below |xi| = 1, any threshold >= 8 clears it
}

double omega(double xi_abs, const ModelParams& params) {
  params.validate();
  if (xi_abs < 0.0) throw std::domain_error("omega: |xi| must be >= 0");
  if (xi_abs == 0.0) return 0.0;
  const double x = std::pow(xi_abs, 2.0 * params.theta - params.sigma);
  if (!(x < 2.0))
    throw std::domain_error("omega: |xi|^{2 theta - sigma} >= 2, outside oscillatory regime");
  return std::pow(xi_abs, params.sigma) * std::sqrt(1.0 - 0.25 * x * x);
}

std::pair<std::complex<double>, std::complex<double>> lambda_pm(double xi_abs,
                                                                const ModelParams& params) {
  params.validate();
  if (xi_abs < 0.0) throw std::domain_error("lambda_pm: |xi| must be >= 0");
  const double beta = 0.5 * std::pow(xi_abs, 2.0 * params.theta);
  const double c = std::pow(xi_abs, 2.0 * params.sigma);
  const double z = beta * beta - c;
  if (z < 0.0) {
    const double w = std::sqrt(-z);
    return {{-beta, w}, {-beta, -w}};
  }
  const double d = std::sqrt(z);
  if (beta + d == 0.0) return {{0.0, 0.0}, {0.0, 0.0}};
  // -c/(beta+d) is the cancellation-free form of -beta+d.
  return {{-c / (beta + d), 0.0}, {-beta - d, 0.0}};
}

Propagator2x2 propagator(double t, double xi_abs, const ModelParams& params) {
  params.validate();
  if (xi_abs < 0.0) throw std::domain_error("propagator: |xi| must be >= 0");
  return propagator_bc(t, 0.5 * std::pow(xi_abs, 2.0 * params.theta),
                       std::pow(xi_abs, 2.0 * params.sigma));
}

Propagator2x2 propagator_bc(double t, double beta, double c) {
  if (t < 0.0) throw std::domain_error("propagator: t must be >= 0");
  const double z = beta * beta - c;

  Propagator2x2 p;
  if (z < 0.0) {
    // conjugate roots -beta +- i w: damped oscillation
    const double w = std::sqrt(-z);
    const double env = std::exp(-beta * t);
    const double s = t * sinc(w * t);  // sin(w t)/w
    const double cs = std::cos(w * t);
    p.e1 = env * s;
    p.e0 = env * (cs + beta * s);
    p.de1 = env * (cs - beta * s);
    p.de0 = -c * p.e1;
    return p;
  }
  const double d = std::sqrt(z);
  if (d == 0.0) {
    const double env = std::exp(-beta * t);
    p.e1 = env * t;
    p.e0 = env * (1.0 + beta * t);
    p.de1 = env * (1.0 - beta * t);
    p.de0 = -c * p.e1;
    return p;
  }
  // real roots; everything expressed through the slow root and 1 - e^{-2dt}
  const double lp = (beta + d) > 0.0 ? -c / (beta + d) : 0.0;
  const double lm = -beta - d;
  const double ep = std::exp(lp * t);
  const double em = -std::expm1(-2.0 * d * t);  // in [0,1), exact for small dt
  const double inv2d = 0.5 / d;
  p.e1 = ep * em * inv2d;
  p.e0 = ep * (1.0 + (beta - d) * em * inv2d);
  p.de1 = ep * (1.0 + lm * em * inv2d);
  p.de0 = -c * p.e1;
  return p;
}

double khat(double t, double xi_abs, const ModelParams& params) {
  return propagator(t, xi_abs, params).e1;
}

double khat_sinc_form(double t, double xi_abs, const ModelParams& params) {
  const double w = omega(xi_abs, params);  // throws outside the oscillatory regime
  const double beta = 0.5 * std::pow(xi_abs, 2.0 * params.theta);
  return t * std::exp(-beta * t) * sinc(t * w);
}

double khat_exp_form(double t, double xi_abs, const ModelParams& params) {
  params.validate();
  const std::complex<double> one(1.0, 0.0);
  const double x = 4.0 * std::pow(xi_abs, 2.0 * params.sigma - 4.0 * params.theta);
  const std::complex<double> root = std::sqrt(one - x);
  const double half = 0.5 * std::pow(xi_abs, 2.0 * params.theta);
  const std::complex<double> lp = -half * (one - root);
  const std::complex<double> lm = -half * (one + root);
  if (lp == lm) return t * std::exp(lp.real() * t);  // exact double root only
  return ((std::exp(lp * t) - std::exp(lm * t)) / (lp - lm)).real();
}

namespace {
// 20-point Gauss-Legendre rule on [-1, 1], symmetric half tabulated.
constexpr int kGlHalf = 10;
constexpr double kGlNode[kGlHalf] = {
    0.0765265211334973, 0.2277858511416451, 0.3737060887154195, 0.5108670019508271,
    0.6360536807265150, 0.7463319064601508, 0.8391169718222188, 0.9122344282513259,
    0.9639719272779138, 0.9931285991850949};
constexpr double kGlWeight[kGlHalf] = {
    0.1527533871307258, 0.1491729864726037, 0.1420961093183820, 0.1316886384491766,
    0.1181945319615184, 0.1019301198172404, 0.0832767415767048, 0.0626720483341091,
    0.0406014298003869, 0.0176140071391521};
}  // namespace

DuhamelWeights duhamel_weights(double h, double xi_abs, const ModelParams& params) {
  params.validate();
  if (xi_abs < 0.0) throw std::domain_error("duhamel_weights: |xi| must be >= 0");
  return duhamel_weights_bc(h, 0.5 * std::pow(xi_abs, 2.0 * params.theta),
                            std::pow(xi_abs, 2.0 * params.sigma));
}

DuhamelWeights duhamel_weights_bc(double h, double beta, double c) {
  if (!(h > 0.0)) throw std::domain_error("duhamel_weights: h must be positive");

  const Propagator2x2 p = propagator_bc(h, beta, c);

  double i0, i1;  // int_0^h khat, int_0^h tau khat
  if (c * h * h >= 1e-4) {
    // integrate the ODE for khat once (and once against tau) in closed form
    i0 = (1.0 - p.e0) / c;
    i1 = (p.e1 - h * p.de1 - 2.0 * beta * h * p.e1 + 2.0 * beta * i0) / c;
  } else {
    // near-degenerate elastic term: closed form would divide by c, integrate instead
    const int panels = std::min(64, 1 + static_cast<int>(beta * h / 6.0));
    const double ph = h / panels;
    i0 = 0.0;
    i1 = 0.0;
    for (int pn = 0; pn < panels; ++pn) {
      const double mid = (pn + 0.5) * ph;
      for (int j = 0; j < kGlHalf; ++j) {
        for (int sgn = -1; sgn <= 1; sgn += 2) {
          const double tau = mid + sgn * 0.5 * ph * kGlNode[j];
          const double k = propagator_bc(tau, beta, c).e1;
          const double wq = 0.5 * ph * kGlWeight[j];
          i0 += wq * k;
          i1 += wq * tau * k;
        }
      }
    }
  }

  DuhamelWeights w;
  w.w1 = i1 / h;
  w.w2 = i0 - i1 / h;
  w.v2 = i0 / h;
  w.v1 = p.e1 - w.v2;
  return w;
}

double phi0(double xi_abs, const CutoffConfig& cfg) {
  cfg.validate();
  return step_down(xi_abs, 0.5 * cfg.eps0, cfg.eps0);
}

double phi_inf(double xi_abs, const CutoffConfig& cfg, const ModelParams& params) {
  const double ninf = cfg.resolved_n_inf(params);
  return smooth_ramp((xi_abs - ninf) / ninf);
}

double phi1(double xi_abs, const CutoffConfig& cfg, const ModelParams& params) {
  return 1.0 - phi0(xi_abs, cfg) - phi_inf(xi_abs, cfg, params);
}

double chi_unit(double r) { return step_down(r, 1.0, 2.0); }

double psi_dyadic(int k, double r) {
  const double rs = std::ldexp(r, -k);
  // step 1 below 1/2, 0 above 1, dilated by 2: telescoping unit partition
  return step_down(0.5 * rs, 0.5, 1.0) - step_down(rs, 0.5, 1.0);
}

int k0_of_t(double t, const ModelParams& params, const CutoffConfig& cfg) {
  params.validate();
  cfg.validate();
  if (!(t > 0.0)) throw std::domain_error("k0_of_t: t must be positive");
  const double x = cfg.eps0 * std::pow(t, 1.0 / params.sigma);
  int k = static_cast<int>(std::floor(std::log2(x)));
  while (std::ldexp(1.0, k + 1) <= x * (1.0 + 1e-12)) ++k;
  while (std::ldexp(1.0, k) > x * (1.0 + 1e-12)) --k;
  return k;
}

double omega_tilde(double t, double eta_abs, const ModelParams& params,
                   const CutoffConfig& cfg) {
  params.validate();
  cfg.validate();
  if (!(t > 0.0)) throw std::domain_error("omega_tilde: t must be positive");
  if (eta_abs < 0.0) throw std::domain_error("omega_tilde: |eta| must be >= 0");
  const double sup = cfg.eps0 * std::pow(t, 1.0 / params.sigma);
  if (eta_abs > sup * (1.0 + 1e-12))
    throw std::domain_error("omega_tilde: |eta| outside the rescaled low zone");
  if (eta_abs == 0.0) return 0.0;
  const double u = std::pow(t, 2.0 - 4.0 * params.theta / params.sigma) *
                   std::pow(eta_abs, 4.0 * params.theta - 2.0 * params.sigma);
  const double rad = 1.0 - 0.25 * u;
  if (rad < 0.0)
    throw std::domain_error("omega_tilde: rescaled frequency outside oscillatory regime");
  return std::pow(eta_abs, params.sigma) * std::sqrt(rad);
}

double rescaled_low_symbol(double t, double eta_abs, const ModelParams& params,
                           const CutoffConfig& cfg) {
  const double lead = 1.0 - chi_unit(eta_abs);
  if (lead == 0.0) return 0.0;
  const double rho = std::pow(t, -1.0 / params.sigma) * eta_abs;
  const double cut = phi0(rho, cfg);
  if (cut == 0.0) return 0.0;
  return lead * cut * sinc(omega_tilde(t, eta_abs, params, cfg));
}

}  // namespace sigmalab
