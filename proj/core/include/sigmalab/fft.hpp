#pragma once

#include <complex>
#include <cstddef>
#include <mutex>

#include "sigmalab/grid.hpp"

namespace sigmalab {

/// FFTW's planner is a global; every plan create/destroy in the process must
/// hold this (executions on private buffers need no lock).
std::mutex& fftw_planner_mutex();

/// Real-to-half-spectrum transform pair for one grid shape, with the buffers it
/// was planned on. Plans are cached per thread (the planner itself is serialized
/// internally); one instance must not be executed from two threads at once.
class FftPlan {
 public:
  /// Thread-local cached plan for this shape.
  static FftPlan& get(const Grid& g);

  /// Unnormalized forward DFT of N^n real samples into the half spectrum.
  void forward(const double* in, std::complex<double>* out);
  /// Unnormalized inverse of the half spectrum into N^n real samples.
  void backward(const std::complex<double>* in, double* out);

  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;
  ~FftPlan();

 private:
  explicit FftPlan(const Grid& g);
  struct Impl;
  Impl* impl_;
};

}  // namespace sigmalab
