#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "sigmalab/grid.hpp"
#include "sigmalab/params.hpp"

namespace sigmalab {

/// Real scalar field sampled on a Grid, with a lazily computed half-spectrum
/// cache. The spectral convention is the continuum transform of samples placed
/// on [-L/2, L/2)^n:
///   uhat(xi_k) = dx^n * sum_j u(x_j) e^{-i x_j xi_k},
///   u(x_j)    = L^-n  * sum_k uhat(xi_k) e^{+i x_j xi_k},
/// so analytic Fourier pairs carry over with no extra factors.
class Field {
 public:
  Field() = default;
  explicit Field(const Grid& g);

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return vals_.size(); }

  const double* data() const { return vals_.data(); }
  /// Mutable access invalidates the spectral cache.
  double* mutable_data() {
    freq_ok_ = false;
    return vals_.data();
  }
  double operator[](std::size_t i) const { return vals_[i]; }

  /// Half-spectrum samples in the continuum convention (cached).
  const std::vector<std::complex<double>>& to_frequency() const;

  /// Inverse of to_frequency; checks that the spectrum is consistent with a real
  /// field (imaginary residue below 1e-10 of the field scale) and drops it.
  static Field from_frequency(const Grid& g, const std::vector<std::complex<double>>& freq);

 private:
  Grid grid_;
  std::vector<double> vals_;
  mutable std::vector<std::complex<double>> freq_;
  mutable bool freq_ok_ = false;
};

/// Pointwise multiplication by a radial frequency symbol m(|xi|).
/// Throws if the symbol is non-finite at any lattice point.
Field apply_multiplier(const Field& f, const std::function<double(double)>& m);

/// Riemann-sum Lebesgue norm; p = params.hpp's kInf gives the max norm.
double lp_norm(const Field& f, double p);

/// L2 norm straight from a half spectrum via Parseval (no inverse transform).
double spectral_l2_norm(const Grid& g, const std::vector<std::complex<double>>& freq);

/// Centered Gaussian data amplitude * e^{-|x|^2 / (2 width^2)}.
/// Widths below 3 dx are accepted but warned about on stderr (once per call).
Field gaussian_data(const Grid& g, double amplitude, double width);

/// Riesz-potential symbol |xi|^{-a} with the zero mode mapped to 0.
std::function<double(double)> riesz_multiplier(double a);

/// Sharp 2/3-rule mask: zeroes every bin whose signed mode exceeds N/3 on any
/// axis. Applied in place to a half spectrum.
void apply_dealias(const Grid& g, std::vector<std::complex<double>>& freq);

/// Flat little-endian snapshot: int64 n, int64 points_per_axis, float64 L,
/// then row-major float64 samples.
void save_field(const Field& f, const std::string& path);
Field load_field(const std::string& path);

}  // namespace sigmalab
