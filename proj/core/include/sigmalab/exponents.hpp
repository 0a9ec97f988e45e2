#pragma once

#include "sigmalab/params.hpp"

namespace sigmalab {

/// Tolerances for the admissibility classifiers.
struct ExponentConfig {
  double equality_tol = 1e-12;  // |value - threshold| below this counts as equality
  double delta_margin = 1e-3;   // opening of strict inequalities at p/q endpoints
};

/// Critical power for the |u|^{1+alpha} problem, 2*sigma/(n - sigma). Needs n > sigma.
double alpha0(const ModelParams& params);

/// Critical power for the |u_t|^{1+alpha} problem, sigma/n.
double alpha1(const ModelParams& params);

/// Positive root of n^2 - (3*sigma - 2)*n - 2*sigma = 0, the largest dimension
/// for which the sup-norm estimate closes the critical fixed-point argument.
double nbar(double sigma);

/// Value of the low-frequency admissibility functional
/// (n/sigma)(1/p - 1/q) + n*max{1/2 - 1/p, 1/q - 1/2}.
double cond16_value(const EstimateSpec& spec, const ModelParams& params);

/// Classify cond16_value against 1.
CondTag cond16(const EstimateSpec& spec, const ModelParams& params,
               const ExponentConfig& cfg = {});

/// Derivative-weighted variant: cond16_value + (|beta| + b)/sigma + ell against 1.
double cond53_value(const EstimateSpec& spec, const ModelParams& params);
CondTag cond53(const EstimateSpec& spec, const ModelParams& params,
               const ExponentConfig& cfg = {});

/// Riesz weight exponent a = n(1/p-1/q) + |beta| + b + sigma*(n*max{..} + ell - 1)
/// used by the diffusive-gain estimate.
double thm5_a(const EstimateSpec& spec, const ModelParams& params);

/// Low-frequency decay prediction for ||(i xi)^beta |xi|^b d_t^ell K_0(t) u1||_{p->q}.
/// Walks the admissible branches in precedence order. Requires noneffective damping.
RatePrediction predict_low_rate(const EstimateSpec& spec, const ModelParams& params,
                                const ExponentConfig& cfg = {});

/// Minimal admissible high-frequency smoothing order delta for the exponentially
/// decaying zone, per the two (theta < sigma / theta <= sigma) branches. spec.p is
/// read as the r index of the L^r -> L^q estimate.
double predict_high_delta(const EstimateSpec& spec, const ModelParams& params,
                          const ExponentConfig& cfg = {});

/// Decay exponent for effective damping (2*theta < sigma), data in L^1, target L^q,
/// j = spec.ell in {0,1} time derivatives. Two-branch formula in n(1-1/q) vs 2*theta.
RatePrediction predict_effective_rate(const EstimateSpec& spec, const ModelParams& params);

/// Range of powers alpha for which low-dimensional nonexistence holds.
struct NonexistenceRange {
  bool all_alpha = false;      // every alpha > 0 is subcritical (n <= min{2theta, sigma})
  double upper = 0.0;          // otherwise alpha in (0, upper)
  bool critical_included = false;  // endpoint itself known to blow up (integer sigma, theta)
};
NonexistenceRange nonexistence_range(const ModelParams& params, Problem problem);

/// Data space L^1 cap L^eta required by the global existence theorems.
struct DataSpace {
  double p_low = 1.0;
  double p_high = 2.0;
};
DataSpace required_data_space(const ModelParams& params, double alpha, Problem problem);

}  // namespace sigmalab
