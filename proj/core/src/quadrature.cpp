#include "sigmalab/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace sigmalab {

namespace {

double simpson_rec(const std::function<double(double)>& f, double a, double fa, double b,
                   double fb, double m, double fm, double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double err = left + right - whole;
  if (std::abs(err) <= 15.0 * tol) return left + right + err / 15.0;
  if (depth <= 0) throw std::runtime_error("adaptive_simpson: depth limit reached");
  return simpson_rec(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

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

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, int max_depth) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fb = f(b), fm = f(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_rec(f, a, fa, b, fb, m, fm, whole, abs_tol, max_depth);
}

double gauss_legendre_20(const std::function<double(double)>& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double s = 0.0;
  for (int j = 0; j < kGlHalf; ++j)
    s += kGlWeight[j] * (f(mid - half * kGlNode[j]) + f(mid + half * kGlNode[j]));
  return half * s;
}

double integrate_oscillatory(const std::function<double(double)>& f, double rho_max,
                             const std::function<double(double)>& phase,
                             const std::function<double(double)>& envelope,
                             const OscIntegralOptions& opt) {
  if (!(rho_max > 0.0)) return 0.0;
  const double coarse = opt.coarse_panel > 0.0 ? opt.coarse_panel : rho_max / 64.0;

  double total = 0.0;
  double env_peak = 0.0;
  // Seed the tolerance scale with a coarse scan: integrands whose support
  // starts away from zero (zone cutoffs, |xi|^b weights) would otherwise see
  // a zero scale on their first live panel and the recursion could never meet
  // the implied absolute tolerance.
  if (envelope) {
    for (int i = 0; i <= 256; ++i)
      env_peak = std::max(env_peak, envelope(rho_max * i / 256.0));
  }
  double rho = 0.0;
  const double pi = 3.141592653589793238462643;

  while (rho < rho_max) {
    if (envelope) env_peak = std::max(env_peak, envelope(rho));
    // shrink until the phase advance across the panel is below half a cycle
    double w = std::min(coarse, rho_max - rho);
    if (phase) {
      const double ph_a = phase(rho);
      for (int i = 0; i < 120; ++i) {
        const double adv = std::abs(phase(rho + w) - ph_a);
        if (adv <= pi) break;
        // jump straight toward the pi target instead of plain halving
        w *= std::max(0.25, 0.9 * pi / adv);
      }
    }
    const double a = rho;
    const double b = rho + w;
    // tolerance allocated per unit length against the running total's scale
    const double tol_here =
        opt.rel_tol * std::max(std::abs(total), env_peak * std::min(rho_max, 1.0) * 1e-3) *
            (w / rho_max) +
        1e-300;
    total += adaptive_simpson(f, a, b, tol_here);
    rho = b;

    if (envelope) {
      const double env = envelope(rho);
      env_peak = std::max(env_peak, env);
      // stop once the crude tail bound cannot move the result
      if (env_peak > 0.0 && env < 1e-3 * env_peak) {
        const double tail = env * (rho_max - rho);
        if (tail < opt.rel_tol * std::abs(total)) break;
      }
    }
  }
  return total;
}

}  // namespace sigmalab
