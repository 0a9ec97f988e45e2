#pragma once

#include <complex>
#include <utility>

#include "sigmalab/params.hpp"

namespace sigmalab {

/// sin(x)/x, series near zero.
double sinc(double x);

/// Frequency cutoffs splitting the symbol into low / intermediate / high zones,
/// plus tolerances shared by the zone-dependent diagnostics.
struct CutoffConfig {
  double eps0 = 0.25;  // low zone ends at |xi| = eps0, plateau up to eps0/2
  double n_inf = 0.0;  // high zone starts at n_inf; 0 = derive from params

  void validate() const {
    if (!(eps0 > 0.0 && eps0 < 1.0)) throw std::domain_error("CutoffConfig: need 0 < eps0 < 1");
    if (n_inf < 0.0) throw std::domain_error("CutoffConfig: n_inf must be >= 0");
  }

  /// Effective high-zone threshold: max(8, 4 * 2^{1/(2 theta - sigma)}) keeps the
  /// transition band past the double root of the characteristic polynomial.
  double resolved_n_inf(const ModelParams& params) const;
};

/// Dispersion omega(|xi|) = |xi|^sigma sqrt(1 - |xi|^{4 theta - 2 sigma}/4) of the
/// oscillatory regime |xi|^{2 theta - sigma} < 2. Throws outside that regime.
double omega(double xi_abs, const ModelParams& params);

/// Characteristic roots of lambda^2 + |xi|^{2 theta} lambda + |xi|^{2 sigma} = 0,
/// returned as (lambda_plus, lambda_minus) with lambda_plus the root of smaller |Re|
/// (ties broken toward positive imaginary part).
std::pair<std::complex<double>, std::complex<double>> lambda_pm(double xi_abs,
                                                                const ModelParams& params);

/// Exact solution operator of the frequency ODE
///   w'' + |xi|^{2 theta} w' + |xi|^{2 sigma} w = 0
/// mapping (w, w')(0) to (w, w')(t):  [e0 e1; de0 de1].
struct Propagator2x2 {
  double e0 = 1.0, e1 = 0.0;
  double de0 = 0.0, de1 = 1.0;
  double det() const { return e0 * de1 - e1 * de0; }
};

Propagator2x2 propagator(double t, double xi_abs, const ModelParams& params);

/// Fast path for per-mode tables: the caller has already evaluated
/// beta = |xi|^{2 theta}/2 and c = |xi|^{2 sigma} once per lattice point.
Propagator2x2 propagator_bc(double t, double beta, double c);

/// Fundamental-solution symbol (zero data on w, unit data on w'): e1 entry above.
double khat(double t, double xi_abs, const ModelParams& params);

/// The two printed closed forms, exposed for cross-checking the dispatcher.
/// Sinc form is only defined in the oscillatory regime; the exponential form is
/// ill-conditioned at the double root and meant for overlap comparisons.
double khat_sinc_form(double t, double xi_abs, const ModelParams& params);
double khat_exp_form(double t, double xi_abs, const ModelParams& params);

/// Quadrature weights of the exponential two-point Duhamel rule over one step h:
///   w(h) = e0 w0 + e1 w0' + w1 f(0) + w2 f(h)
///   w'(h) = de0 w0 + de1 w0' + v1 f(0) + v2 f(h)
/// exact whenever f is linear in time on the step.
struct DuhamelWeights {
  double w1 = 0.0, w2 = 0.0;
  double v1 = 0.0, v2 = 0.0;
};

DuhamelWeights duhamel_weights(double h, double xi_abs, const ModelParams& params);

/// Fast path mirroring propagator_bc; same weights from precomputed (beta, c).
DuhamelWeights duhamel_weights_bc(double h, double beta, double c);

/// Smooth radial partition 1 = phi0 + phi1 + phi_inf (low / middle / high zone).
double phi0(double xi_abs, const CutoffConfig& cfg);
double phi_inf(double xi_abs, const CutoffConfig& cfg, const ModelParams& params);
double phi1(double xi_abs, const CutoffConfig& cfg, const ModelParams& params);

/// Smooth bump equal to 1 on [0,1] and 0 on [2,inf), used by the rescaled symbol.
double chi_unit(double r);

/// Dyadic Littlewood-Paley factor psi_k(r) = psi(2^{-k} r), supported in
/// [2^{k-1}, 2^{k+1}], with sum_k psi_k = 1 away from the origin.
double psi_dyadic(int k, double r);

/// Largest k with 2^k <= eps0 * t^{1/sigma}: index of the last dyadic block inside
/// the rescaled low zone.
int k0_of_t(double t, const ModelParams& params, const CutoffConfig& cfg);

/// Rescaled dispersion omega_tilde(t, eta) = t * omega(t^{-1/sigma} eta) in closed
/// form, defined for |eta| <= eps0 t^{1/sigma}.
double omega_tilde(double t, double eta_abs, const ModelParams& params,
                   const CutoffConfig& cfg);

/// Rescaled low-zone multiplier (1 - chi(eta)) phi0(t^{-1/sigma} eta) sinc(omega_tilde).
double rescaled_low_symbol(double t, double eta_abs, const ModelParams& params,
                           const CutoffConfig& cfg);

}  // namespace sigmalab
