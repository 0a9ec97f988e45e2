#pragma once

#include <limits>
#include <stdexcept>
#include <string>

namespace sigmalab {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// 1/p with the convention 1/inf = 0.
inline double inv(double p) { return p == kInf ? 0.0 : 1.0 / p; }

/// Model u_tt + (-Delta)^sigma u + (-Delta)^theta u_t = f on n-dimensional space.
struct ModelParams {
  double sigma = 2.0;
  double theta = 1.5;
  // Real-valued so admissibility contours can be traced through fractional
  // dimensions like nbar(sigma); grids naturally require integer n.
  double n = 1.0;

  // Damping regimes, classified by 2*theta against sigma and 2*sigma.
  bool noneffective() const { return 2.0 * theta > sigma && 2.0 * theta <= 2.0 * sigma; }
  bool effective() const { return 2.0 * theta < sigma; }

  void validate() const {
    if (!(sigma > 0.0)) throw std::domain_error("ModelParams: sigma must be positive");
    if (!(theta >= 0.0 && theta <= sigma))
      throw std::domain_error("ModelParams: need 0 <= theta <= sigma");
    if (!(n >= 1.0)) throw std::domain_error("ModelParams: n must be >= 1");
  }
};

/// Norm/derivative bookkeeping for an L^p -> L^q estimate of the fundamental
/// solution: ||(i xi)^beta |xi|^b d_t^ell K(t)||. p and q live in [1, inf],
/// with kInf standing for the sup norm.
struct EstimateSpec {
  double p = 1.0;
  double q = 2.0;
  int beta_len = 0;   // |beta|, total order of spatial derivatives
  double b = 0.0;     // fractional Riesz weight |xi|^b
  int ell = 0;        // time derivatives, 0 or 1 in every estimate we evaluate

  void validate() const {
    if (!(p >= 1.0) || !(q >= 1.0)) throw std::domain_error("EstimateSpec: p, q must be >= 1");
    if (!(p <= q)) throw std::domain_error("EstimateSpec: need p <= q");
    if (beta_len < 0) throw std::domain_error("EstimateSpec: beta_len must be >= 0");
    if (!(b >= 0.0)) throw std::domain_error("EstimateSpec: b must be >= 0");
    if (ell < 0) throw std::domain_error("EstimateSpec: ell must be >= 0");
  }

  double dpq() const { return inv(p) - inv(q); }
  /// max{1/2 - 1/p, 1/q - 1/2}, the off-duality-line penalty.
  double duality_gap() const {
    double a = 0.5 - inv(p);
    double c = inv(q) - 0.5;
    return a > c ? a : c;
  }
};

enum class Theorem {
  Thm3,
  Thm4,
  Thm4Equality,
  Thm5,
  Thm5NoLog,
  Remark10Fallback,
  NotCovered,
  Eq4Effective,
};

std::string to_string(Theorem t);

/// Predicted decay rate (1+t)^exponent, possibly times log(e+t).
struct RatePrediction {
  double exponent = 0.0;
  bool log_loss = false;
  Theorem theorem = Theorem::NotCovered;
  bool covered = false;
  bool non_optimal = false;
};

enum class CondTag { Strict, Equality, Violated };

std::string to_string(CondTag t);

enum class Problem { UPower, UtPower };  // forcing |u|^{1+alpha} vs |u_t|^{1+alpha}

}  // namespace sigmalab
