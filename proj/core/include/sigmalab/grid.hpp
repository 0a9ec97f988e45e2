#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>

namespace sigmalab {

/// Uniform periodic lattice on [-L/2, L/2)^n, n in {1,2,3}. Samples are row-major
/// with the last axis fastest; the frequency layout is the real-transform
/// half-spectrum (last axis truncated to N/2+1 bins).
struct Grid {
  int n = 1;
  int points_per_axis = 64;
  double box_length = 100.0;

  void validate() const {
    if (n < 1 || n > 3) throw std::domain_error("Grid: dimension must be 1, 2, or 3");
    const int N = points_per_axis;
    if (N < 4 || (N & (N - 1)) != 0)
      throw std::domain_error("Grid: points_per_axis must be a power of two >= 4");
    if (!(box_length > 0.0)) throw std::domain_error("Grid: box_length must be positive");
  }

  double dx() const { return box_length / points_per_axis; }
  double fundamental() const { return 6.283185307179586476925287 / box_length; }
  double nyquist() const { return 3.141592653589793238462643 * points_per_axis / box_length; }
  double cell_volume() const {
    double v = 1.0;
    for (int a = 0; a < n; ++a) v *= dx();
    return v;
  }
  double box_volume() const {
    double v = 1.0;
    for (int a = 0; a < n; ++a) v *= box_length;
    return v;
  }

  std::size_t total_points() const {
    std::size_t s = 1;
    for (int a = 0; a < n; ++a) s *= static_cast<std::size_t>(points_per_axis);
    return s;
  }
  /// Number of stored half-spectrum bins.
  std::size_t spectral_points() const {
    std::size_t s = static_cast<std::size_t>(points_per_axis) / 2 + 1;
    for (int a = 1; a < n; ++a) s *= static_cast<std::size_t>(points_per_axis);
    return s;
  }

  /// Physical coordinate of sample index j along one axis.
  double coord(int j) const { return -0.5 * box_length + j * dx(); }

  /// Signed integer mode of storage index k along a full (non-truncated) axis.
  int signed_mode(int k) const { return k <= points_per_axis / 2 ? k : k - points_per_axis; }

  bool operator==(const Grid& o) const {
    return n == o.n && points_per_axis == o.points_per_axis && box_length == o.box_length;
  }
};

/// Visits every stored half-spectrum bin: f(flat, xi_abs2, last_axis_index).
/// xi_abs2 is |xi|^2; the Hermitian double-count weight is 2 unless the last-axis
/// index is 0 or N/2. Inlined because it sits on the per-step hot path.
template <class F>
void for_each_mode(const Grid& g, F&& f) {
  const int N = g.points_per_axis;
  const int H = N / 2 + 1;
  const double k0 = g.fundamental();
  std::size_t flat = 0;
  if (g.n == 1) {
    for (int k = 0; k < H; ++k, ++flat) {
      const double x = k0 * k;
      f(flat, x * x, k);
    }
    return;
  }
  if (g.n == 2) {
    for (int k1 = 0; k1 < N; ++k1) {
      const double x1 = k0 * g.signed_mode(k1);
      for (int k = 0; k < H; ++k, ++flat) {
        const double x = k0 * k;
        f(flat, x1 * x1 + x * x, k);
      }
    }
    return;
  }
  for (int k1 = 0; k1 < N; ++k1) {
    const double x1 = k0 * g.signed_mode(k1);
    for (int k2 = 0; k2 < N; ++k2) {
      const double x2 = k0 * g.signed_mode(k2);
      for (int k = 0; k < H; ++k, ++flat) {
        const double x = k0 * k;
        f(flat, x1 * x1 + x2 * x2 + x * x, k);
      }
    }
  }
}

/// Parseval weight of a half-spectrum bin given its last-axis index.
inline double hermitian_weight(const Grid& g, int last_axis_index) {
  return (last_axis_index == 0 || last_axis_index == g.points_per_axis / 2) ? 1.0 : 2.0;
}

}  // namespace sigmalab
