#include "sigmalab/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <memory>
#include <mutex>

namespace sigmalab {

std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftPlan::Impl {
  std::size_t real_size = 0;
  std::size_t spec_size = 0;
  double* rbuf = nullptr;
  fftw_complex* cbuf = nullptr;
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
};

FftPlan::FftPlan(const Grid& g) : impl_(new Impl) {
  g.validate();
  impl_->real_size = g.total_points();
  impl_->spec_size = g.spectral_points();
  impl_->rbuf = fftw_alloc_real(impl_->real_size);
  impl_->cbuf = fftw_alloc_complex(impl_->spec_size);

  int dims[3] = {g.points_per_axis, g.points_per_axis, g.points_per_axis};
  std::lock_guard<std::mutex> lock(fftw_planner_mutex());
  impl_->fwd = fftw_plan_dft_r2c(g.n, dims, impl_->rbuf, impl_->cbuf, FFTW_ESTIMATE);
  impl_->bwd = fftw_plan_dft_c2r(g.n, dims, impl_->cbuf, impl_->rbuf, FFTW_ESTIMATE);
  if (!impl_->fwd || !impl_->bwd) throw std::runtime_error("FftPlan: planner failed");
}

FftPlan::~FftPlan() {
  std::lock_guard<std::mutex> lock(fftw_planner_mutex());
  if (impl_->fwd) fftw_destroy_plan(impl_->fwd);
  if (impl_->bwd) fftw_destroy_plan(impl_->bwd);
  fftw_free(impl_->rbuf);
  fftw_free(impl_->cbuf);
  delete impl_;
}

void FftPlan::forward(const double* in, std::complex<double>* out) {
  std::memcpy(impl_->rbuf, in, impl_->real_size * sizeof(double));
  fftw_execute(impl_->fwd);
  // std::complex<double> is layout-compatible with double[2] by [complex.numbers]
  std::memcpy(reinterpret_cast<double*>(out), impl_->cbuf,
              impl_->spec_size * sizeof(fftw_complex));
}

void FftPlan::backward(const std::complex<double>* in, double* out) {
  std::memcpy(impl_->cbuf, reinterpret_cast<const double*>(in),
              impl_->spec_size * sizeof(fftw_complex));
  fftw_execute(impl_->bwd);
  std::memcpy(out, impl_->rbuf, impl_->real_size * sizeof(double));
}

FftPlan& FftPlan::get(const Grid& g) {
  struct Key {
    int n, N;
    bool operator<(const Key& o) const { return n != o.n ? n < o.n : N < o.N; }
  };
  // box_length does not enter the plan, only the shape does
  thread_local std::map<Key, std::unique_ptr<FftPlan>> cache;
  const Key key{g.n, g.points_per_axis};
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, std::unique_ptr<FftPlan>(new FftPlan(g))).first;
  return *it->second;
}

}  // namespace sigmalab
