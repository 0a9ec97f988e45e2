#include "selftest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "sigmalab/quadrature.hpp"
#include "sigmalab/symbols.hpp"

namespace cli {
namespace {

using sigmalab::ModelParams;

struct Y {
  double u, v;
};

// One RK4 step of u' = v, v' = -2 beta v - c u.
Y rk4_step(double beta, double c, const Y& y, double h) {
  auto f = [&](const Y& s) { return Y{s.v, -2.0 * beta * s.v - c * s.u}; };
  const Y k1 = f(y);
  const Y k2 = f({y.u + 0.5 * h * k1.u, y.v + 0.5 * h * k1.v});
  const Y k3 = f({y.u + 0.5 * h * k2.u, y.v + 0.5 * h * k2.v});
  const Y k4 = f({y.u + h * k3.u, y.v + h * k3.v});
  return {y.u + h / 6.0 * (k1.u + 2.0 * k2.u + 2.0 * k3.u + k4.u),
          y.v + h / 6.0 * (k1.v + 2.0 * k2.v + 2.0 * k3.v + k4.v)};
}

Y rk4_run(double beta, double c, Y y, double t, int steps) {
  const double h = t / steps;
  for (int i = 0; i < steps; ++i) y = rk4_step(beta, c, y, h);
  return y;
}

// Fixed-step RK4 at N and 2N steps, Richardson-extrapolated one order past 4.
Y oracle(double beta, double c, const Y& y0, double t) {
  // Resolve both time scales: the oscillation sqrt(c) and the damping 2 beta.
  const double rate = std::sqrt(c) + 2.0 * beta;
  int steps = 64;
  const double need = 8.0 * t * rate;
  while (steps < need && steps < (1 << 22)) steps *= 2;
  const Y a = rk4_run(beta, c, y0, t, steps);
  const Y b = rk4_run(beta, c, y0, t, 2 * steps);
  return {b.u + (b.u - a.u) / 15.0, b.v + (b.v - a.v) / 15.0};
}

struct Check {
  const char* name;
  double worst = 0.0;
  double tol = 0.0;
  bool pass() const { return worst <= tol; }
};

void report(const Check& c) {
  std::printf("[selftest] %-28s %s  (worst %.3e, tol %.1e)\n", c.name,
              c.pass() ? "ok" : "FAILED", c.worst, c.tol);
}

}  // namespace

int run_selftest(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  // Parameter sampler biased toward the interesting window around the double
  // root |xi|^{2 theta - sigma} = 2.
  auto sample = [&](ModelParams& p, double& xi, double& t) {
    p.sigma = 0.5 + 3.0 * unif(rng);
    p.theta = p.sigma * (0.5 + 0.5 * unif(rng));  // noneffective band
    xi = std::exp(std::log(1e-2) + (std::log(30.0) - std::log(1e-2)) * unif(rng));
    t = std::exp(std::log(0.05) + (std::log(50.0) - std::log(0.05)) * unif(rng));
  };

  Check kernel{"kernel vs ODE oracle", 0.0, 2e-6};
  Check prop{"propagator vs ODE oracle", 0.0, 2e-6};
  Check wronsk{"Wronskian identity", 0.0, 1e-10};
  Check rows{"quadrature row sums", 0.0, 1e-10};
  Check part{"zone partition of unity", 0.0, 1e-12};
  Check dyad{"dyadic telescoping", 0.0, 1e-12};

  for (int i = 0; i < 200; ++i) {
    ModelParams p;
    double xi, t;
    sample(p, xi, t);
    const double beta = 0.5 * std::pow(xi, 2.0 * p.theta);
    const double c = std::pow(xi, 2.0 * p.sigma);
    // Skip regimes where the fixed-step oracle itself would need > 2^22 steps.
    if (t * (std::sqrt(c) + 2.0 * beta) > 2e5) {
      --i;
      continue;
    }

    const Y ku = oracle(beta, c, {0.0, 1.0}, t);
    const double k_ref = ku.u;
    const double k_got = sigmalab::khat(t, xi, p);
    const double k_scale = std::max(std::abs(k_ref), 1e-3 * t);
    kernel.worst = std::max(kernel.worst, std::abs(k_got - k_ref) / k_scale);

    const sigmalab::Propagator2x2 m = sigmalab::propagator(t, xi, p);
    const Y e0 = oracle(beta, c, {1.0, 0.0}, t);
    const double scale0 = std::max({std::abs(e0.u), std::abs(e0.v), 1e-6});
    const double scale1 = std::max({std::abs(ku.u), std::abs(ku.v), 1e-6});
    prop.worst = std::max({prop.worst, std::abs(m.e0 - e0.u) / scale0,
                           std::abs(m.de0 - e0.v) / scale0, std::abs(m.e1 - ku.u) / scale1,
                           std::abs(m.de1 - ku.v) / scale1});

    // Deep in the overdamped regime the determinant is a difference of two
    // products each e^{2 lambda_plus t} while the true value is e^{-2 beta t};
    // once the cancellation exceeds ~1e6 the identity is unverifiable in
    // doubles, so such draws are skipped rather than pretending to test them.
    const double det_ref = std::exp(-2.0 * beta * t);
    const double det_terms = std::abs(m.e0 * m.de1) + std::abs(m.e1 * m.de0);
    if (det_ref > 1e-280 && det_terms <= 1e6 * det_ref)
      wronsk.worst = std::max(wronsk.worst, std::abs(m.det() - det_ref) / det_ref);

    // Constant forcing from rest over one step lands on integral(e1) and e1.
    const double h = 0.1 + 2.0 * unif(rng);
    const sigmalab::Propagator2x2 mh = sigmalab::propagator_bc(h, beta, c);
    const sigmalab::DuhamelWeights w = sigmalab::duhamel_weights_bc(h, beta, c);
    // The closed form (1 - e0)/c loses all its digits when c h^2 is tiny;
    // integrate the slowly varying e1 directly there instead.
    const double u_const =
        c * h * h >= 1e-4
            ? (1.0 - mh.e0) / c
            : sigmalab::adaptive_simpson(
                  [beta, c](double s) { return sigmalab::propagator_bc(s, beta, c).e1; }, 0.0, h,
                  1e-15 * h * h);
    // Relative to the magnitude of the summed terms: near an oscillation zero
    // the row sum itself cancels and eps-level noise is expected.
    const double u_scale = std::max({u_const, std::abs(w.w1) + std::abs(w.w2), 1e-12});
    const double v_scale = std::max({std::abs(mh.e1), std::abs(w.v1) + std::abs(w.v2), 1e-12});
    rows.worst = std::max({rows.worst, std::abs(w.w1 + w.w2 - u_const) / u_scale,
                           std::abs(w.v1 + w.v2 - mh.e1) / v_scale});

    const sigmalab::CutoffConfig cut;
    const double r = std::exp(std::log(1e-3) + (std::log(100.0) - std::log(1e-3)) * unif(rng));
    const double s =
        sigmalab::phi0(r, cut) + sigmalab::phi1(r, cut, p) + sigmalab::phi_inf(r, cut, p);
    part.worst = std::max(part.worst, std::abs(s - 1.0));

    double dsum = 0.0;
    for (int k = -40; k <= 20; ++k) dsum += sigmalab::psi_dyadic(k, r);
    dyad.worst = std::max(dyad.worst, std::abs(dsum - 1.0));
  }

  int failures = 0;
  for (const Check* c : {&kernel, &prop, &wronsk, &rows, &part, &dyad}) {
    report(*c);
    failures += c->pass() ? 0 : 1;
  }
  std::printf("[selftest] %s\n", failures == 0 ? "all checks passed" : "FAILURES detected");
  return failures == 0 ? 0 : 1;
}

}  // namespace cli
