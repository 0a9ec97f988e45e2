#pragma once

#include <functional>

namespace sigmalab {

/// Adaptive Simpson on [a, b] to absolute tolerance. Throws if the recursion
/// depth limit is hit before the tolerance is met.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, int max_depth = 48);

/// Fixed 20-point Gauss-Legendre panel on [a, b].
double gauss_legendre_20(const std::function<double(double)>& f, double a, double b);

/// Integral of f over [0, rho_max] where f may oscillate with a known phase
/// function: each panel is shrunk until the phase advances by at most pi across
/// it before the adaptive rule sees it, so oscillation cannot alias into a
/// smooth-looking sample pattern. `envelope` must eventually dominate |f| and
/// decrease; once the bound shows the remaining tail is below tolerance the
/// march stops.
struct OscIntegralOptions {
  double rel_tol = 1e-8;
  double coarse_panel = 0.0;  // 0 = rho_max / 64
};
double integrate_oscillatory(const std::function<double(double)>& f, double rho_max,
                             const std::function<double(double)>& phase,
                             const std::function<double(double)>& envelope,
                             const OscIntegralOptions& opt = {});

}  // namespace sigmalab
