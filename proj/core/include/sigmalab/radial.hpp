#pragma once

#include <functional>

#include "sigmalab/params.hpp"

namespace sigmalab {

/// Radial frequency profile rho -> uhat1(rho) with the envelope metadata the
/// quadrature needs to truncate its tail. The envelope must dominate |profile|
/// and be nonincreasing past its peak; for Gaussian data it is exact.
struct RadialProfile {
  std::function<double(double)> fhat;
  std::function<double(double)> envelope;

  /// Radius beyond which envelope^2 * rho^{n-1} integrates below abs_tol.
  double support_radius(int n, double abs_tol) const;
};

/// Exact transform profile of amplitude * e^{-|x|^2/(2 width^2)} in dimension n:
/// amplitude (2 pi width^2)^{n/2} e^{-width^2 rho^2 / 2}.
RadialProfile gaussian_profile(int n, double amplitude, double width);

/// Surface measure of the unit sphere S^{n-1}.
double sphere_surface(int n);

/// L2(R^n) norm of m(rho) * profile(rho) through the radial Plancherel integral
///   ( (2 pi)^{-n} |S^{n-1}| Int_0^inf |m uhat1|^2 rho^{n-1} drho )^{1/2}.
/// `multiplier_envelope` bounds |m| (used with the profile envelope to truncate),
/// `local_phase` is the oscillation phase of m in rho (empty = non-oscillatory).
double radial_l2_norm(const RadialProfile& profile,
                      const std::function<double(double)>& multiplier, int n,
                      const std::function<double(double)>& multiplier_envelope = {},
                      const std::function<double(double)>& local_phase = {},
                      double rel_tol = 1e-8);

}  // namespace sigmalab
