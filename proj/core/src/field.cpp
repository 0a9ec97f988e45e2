#include "sigmalab/field.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>

#include "sigmalab/fft.hpp"

static_assert(std::endian::native == std::endian::little,
              "field snapshots assume a little-endian host");

namespace sigmalab {

namespace {

// Phase (-1)^{k1+...+k_last} aligning FFTW's index-0 origin with the box center.
// Parity of the signed mode equals parity of the storage index (N is even).
template <class F>
void for_each_bin_sign(const Grid& g, F&& f) {
  const int N = g.points_per_axis;
  const int H = N / 2 + 1;
  std::size_t flat = 0;
  if (g.n == 1) {
    for (int k = 0; k < H; ++k, ++flat) f(flat, (k & 1) ? -1.0 : 1.0);
    return;
  }
  if (g.n == 2) {
    for (int k1 = 0; k1 < N; ++k1)
      for (int k = 0; k < H; ++k, ++flat) f(flat, ((k1 + k) & 1) ? -1.0 : 1.0);
    return;
  }
  for (int k1 = 0; k1 < N; ++k1)
    for (int k2 = 0; k2 < N; ++k2)
      for (int k = 0; k < H; ++k, ++flat) f(flat, ((k1 + k2 + k) & 1) ? -1.0 : 1.0);
}

}  // namespace

Field::Field(const Grid& g) : grid_(g) {
  g.validate();
  vals_.assign(g.total_points(), 0.0);
}

const std::vector<std::complex<double>>& Field::to_frequency() const {
  if (!freq_ok_) {
    freq_.resize(grid_.spectral_points());
    FftPlan::get(grid_).forward(vals_.data(), freq_.data());
    const double scale = grid_.cell_volume();
    for_each_bin_sign(grid_, [&](std::size_t flat, double sign) { freq_[flat] *= sign * scale; });
    freq_ok_ = true;
  }
  return freq_;
}

Field Field::from_frequency(const Grid& g, const std::vector<std::complex<double>>& freq) {
  g.validate();
  if (freq.size() != g.spectral_points())
    throw std::invalid_argument("from_frequency: spectrum size does not match grid");

  // Undo the centering phase; FFTW's c2r supplies the conjugate half implicitly.
  std::vector<std::complex<double>> work(freq);
  for_each_bin_sign(g, [&](std::size_t flat, double sign) { work[flat] *= sign; });

  // Bins that are their own conjugate partner must be real for a real field.
  // Check the residue against the spectrum scale, then drop it.
  double scale = 0.0;
  for (const auto& v : work) scale = std::max(scale, std::abs(v));
  const int N = g.points_per_axis;
  const int H = N / 2 + 1;
  double residue = 0.0;
  auto self_conjugate = [N](int k) { return k == 0 || k == N / 2; };
  if (g.n == 1) {
    residue = std::max(std::abs(work[0].imag()), std::abs(work[H - 1].imag()));
    work[0].imag(0.0);
    work[H - 1].imag(0.0);
  } else {
    // pair (k1, k2, k) <-> (N-k1, N-k2, k) on the k in {0, N/2} planes
    const int n2 = g.n == 3 ? N : 1;
    for (int k1 = 0; k1 < N; ++k1)
      for (int k2 = 0; k2 < n2; ++k2)
        for (int k : {0, N / 2}) {
          const int m1 = (N - k1) % N;
          const int m2 = (N - k2) % N;
          const std::size_t a = (static_cast<std::size_t>(k1) * n2 + k2) * H + k;
          const std::size_t b = (static_cast<std::size_t>(m1) * n2 + m2) * H + k;
          if (b < a) continue;
          const std::complex<double> asym = 0.5 * (work[a] - std::conj(work[b]));
          residue = std::max(residue, std::abs(asym));
          const std::complex<double> sym = 0.5 * (work[a] + std::conj(work[b]));
          work[a] = sym;
          work[b] = std::conj(sym);
          if (self_conjugate(k1) && self_conjugate(k2)) {
            work[a].imag(0.0);
            work[b].imag(0.0);
          }
        }
  }
  if (residue > 1e-10 * std::max(scale, 1e-300))
    throw std::runtime_error("from_frequency: spectrum is not that of a real field");

  Field out(g);
  FftPlan::get(g).backward(work.data(), out.vals_.data());
  const double scale_inv = 1.0 / g.box_volume();
  for (auto& v : out.vals_) v *= scale_inv;
  return out;
}

Field apply_multiplier(const Field& f, const std::function<double(double)>& m) {
  std::vector<std::complex<double>> freq = f.to_frequency();
  bool bad = false;
  for_each_mode(f.grid(), [&](std::size_t flat, double xi2, int) {
    const double v = m(std::sqrt(xi2));
    if (!std::isfinite(v)) bad = true;
    freq[flat] *= v;
  });
  if (bad) throw std::domain_error("apply_multiplier: symbol not finite on the lattice");
  return Field::from_frequency(f.grid(), freq);
}

double lp_norm(const Field& f, double p) {
  const std::size_t n = f.size();
  const double* v = f.data();
  if (p == kInf) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(v[i]));
    return m;
  }
  if (!(p >= 1.0)) throw std::domain_error("lp_norm: p must be in [1, inf]");
  double s = 0.0;
  if (p == 2.0) {
    for (std::size_t i = 0; i < n; ++i) s += v[i] * v[i];
  } else if (p == 1.0) {
    for (std::size_t i = 0; i < n; ++i) s += std::abs(v[i]);
  } else {
    for (std::size_t i = 0; i < n; ++i) s += std::pow(std::abs(v[i]), p);
  }
  return std::pow(f.grid().cell_volume() * s, 1.0 / p);
}

double spectral_l2_norm(const Grid& g, const std::vector<std::complex<double>>& freq) {
  if (freq.size() != g.spectral_points())
    throw std::invalid_argument("spectral_l2_norm: spectrum size does not match grid");
  double s = 0.0;
  for_each_mode(g, [&](std::size_t flat, double, int last) {
    s += hermitian_weight(g, last) * std::norm(freq[flat]);
  });
  return std::sqrt(s / g.box_volume());
}

Field gaussian_data(const Grid& g, double amplitude, double width) {
  g.validate();
  if (!(amplitude >= 0.0 && width > 0.0))
    throw std::domain_error("gaussian_data: amplitude must be nonnegative, width positive");
  if (amplitude > 0.0 && width < 3.0 * g.dx())
    std::fprintf(stderr,
                 "gaussian_data: width %.3g under-resolved on dx %.3g (< 3 cells)\n",
                 width, g.dx());

  Field out(g);
  double* v = out.mutable_data();
  const int N = g.points_per_axis;
  const double inv2s2 = 0.5 / (width * width);
  std::vector<double> axis(N);
  for (int j = 0; j < N; ++j) {
    const double x = g.coord(j);
    axis[j] = x * x;
  }
  std::size_t flat = 0;
  if (g.n == 1) {
    for (int j = 0; j < N; ++j, ++flat) v[flat] = amplitude * std::exp(-axis[j] * inv2s2);
  } else if (g.n == 2) {
    for (int j1 = 0; j1 < N; ++j1)
      for (int j = 0; j < N; ++j, ++flat)
        v[flat] = amplitude * std::exp(-(axis[j1] + axis[j]) * inv2s2);
  } else {
    for (int j1 = 0; j1 < N; ++j1)
      for (int j2 = 0; j2 < N; ++j2)
        for (int j = 0; j < N; ++j, ++flat)
          v[flat] = amplitude * std::exp(-(axis[j1] + axis[j2] + axis[j]) * inv2s2);
  }
  return out;
}

std::function<double(double)> riesz_multiplier(double a) {
  return [a](double rho) { return rho == 0.0 ? 0.0 : std::pow(rho, -a); };
}

void apply_dealias(const Grid& g, std::vector<std::complex<double>>& freq) {
  if (freq.size() != g.spectral_points())
    throw std::invalid_argument("apply_dealias: spectrum size does not match grid");
  const int N = g.points_per_axis;
  const int H = N / 2 + 1;
  const int keep = N / 3;  // zero everything with |mode| > N/3 on any axis
  std::size_t flat = 0;
  auto cut = [keep](int m) { return m > keep || m < -keep; };
  if (g.n == 1) {
    for (int k = 0; k < H; ++k, ++flat)
      if (cut(k)) freq[flat] = 0.0;
    return;
  }
  if (g.n == 2) {
    for (int k1 = 0; k1 < N; ++k1) {
      const bool c1 = cut(g.signed_mode(k1));
      for (int k = 0; k < H; ++k, ++flat)
        if (c1 || cut(k)) freq[flat] = 0.0;
    }
    return;
  }
  for (int k1 = 0; k1 < N; ++k1) {
    const bool c1 = cut(g.signed_mode(k1));
    for (int k2 = 0; k2 < N; ++k2) {
      const bool c12 = c1 || cut(g.signed_mode(k2));
      for (int k = 0; k < H; ++k, ++flat)
        if (c12 || cut(k)) freq[flat] = 0.0;
    }
  }
}

void save_field(const Field& f, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("save_field: cannot open " + path);
  const std::int64_t n = f.grid().n;
  const std::int64_t ppa = f.grid().points_per_axis;
  const double L = f.grid().box_length;
  os.write(reinterpret_cast<const char*>(&n), sizeof n);
  os.write(reinterpret_cast<const char*>(&ppa), sizeof ppa);
  os.write(reinterpret_cast<const char*>(&L), sizeof L);
  os.write(reinterpret_cast<const char*>(f.data()),
           static_cast<std::streamsize>(f.size() * sizeof(double)));
  if (!os) throw std::runtime_error("save_field: short write to " + path);
}

Field load_field(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("load_field: cannot open " + path);
  std::int64_t n = 0, ppa = 0;
  double L = 0.0;
  is.read(reinterpret_cast<char*>(&n), sizeof n);
  is.read(reinterpret_cast<char*>(&ppa), sizeof ppa);
  is.read(reinterpret_cast<char*>(&L), sizeof L);
  if (!is) throw std::runtime_error("load_field: truncated header in " + path);
  Grid g;
  g.n = static_cast<int>(n);
  g.points_per_axis = static_cast<int>(ppa);
  g.box_length = L;
  g.validate();
  Field out(g);
  is.read(reinterpret_cast<char*>(out.mutable_data()),
          static_cast<std::streamsize>(g.total_points() * sizeof(double)));
  if (!is) throw std::runtime_error("load_field: truncated samples in " + path);
  return out;
}

}  // namespace sigmalab
