#include "sigmalab/radial.hpp"

#include <cmath>
#include <stdexcept>

#include "sigmalab/quadrature.hpp"

namespace sigmalab {

namespace {
constexpr double kPi = 3.141592653589793238462643;
}

double RadialProfile::support_radius(int n, double abs_tol) const {
  if (!envelope) throw std::domain_error("RadialProfile: envelope metadata required");
  // march outward in octaves until the one-octave tail bound drops under tol
  double rho = 1.0;
  while (rho < 1e12) {
    const double e = envelope(rho);
    const double tail = e * e * std::pow(2.0 * rho, n - 1) * rho;
    if (tail < abs_tol && e * e < abs_tol) return 2.0 * rho;
    rho *= 2.0;
  }
  throw std::domain_error("RadialProfile: envelope does not decay");
}

RadialProfile gaussian_profile(int n, double amplitude, double width) {
  if (!(amplitude > 0.0 && width > 0.0))
    throw std::domain_error("gaussian_profile: amplitude and width must be positive");
  const double mass = amplitude * std::pow(2.0 * kPi * width * width, 0.5 * n);
  const double w2 = width * width;
  RadialProfile p;
  p.fhat = [mass, w2](double rho) { return mass * std::exp(-0.5 * w2 * rho * rho); };
  p.envelope = p.fhat;
  return p;
}

double sphere_surface(int n) {
  if (n < 1) throw std::domain_error("sphere_surface: n must be >= 1");
  return 2.0 * std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n);
}

double radial_l2_norm(const RadialProfile& profile,
                      const std::function<double(double)>& multiplier, int n,
                      const std::function<double(double)>& multiplier_envelope,
                      const std::function<double(double)>& local_phase,
                      double rel_tol) {
  if (!profile.fhat) throw std::domain_error("radial_l2_norm: profile callable required");
  if (n < 1) throw std::domain_error("radial_l2_norm: n must be >= 1");

  // truncation radius from the profile envelope alone; the multiplier envelope
  // then sharpens the early-stop inside the march
  const double peak = profile.envelope ? profile.envelope(0.0) : 1.0;
  const double rho_max = profile.support_radius(n, 1e-26 * std::max(1.0, peak * peak));

  auto integrand = [&](double rho) {
    const double v = multiplier(rho) * profile.fhat(rho);
    return v * v * std::pow(rho, n - 1);
  };
  auto envelope = [&](double rho) {
    double e = profile.envelope(rho);
    if (multiplier_envelope) e *= multiplier_envelope(rho);
    return e * e * std::pow(std::max(rho, 1.0), n - 1);
  };

  OscIntegralOptions opt;
  opt.rel_tol = rel_tol;
  const double integral =
      integrate_oscillatory(integrand, rho_max, local_phase, envelope, opt);
  const double measure = sphere_surface(n) * std::pow(2.0 * kPi, -n);
  return std::sqrt(std::max(0.0, measure * integral));
}

}  // namespace sigmalab
