#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sigmalab/field.hpp"
#include "sigmalab/grid.hpp"
#include "sigmalab/linear.hpp"
#include "sigmalab/params.hpp"

namespace sigmalab {

enum class Classification { Decaying, Bounded, Inconclusive, BlowUp };

std::string to_string(Classification c);

/// Semilinear run u_tt + (-Delta)^sigma u + (-Delta)^theta u_t = |w|^{1+alpha},
/// w = u or u_t, from data u(0) = 0, u_t(0) = Gaussian(amplitude, width).
struct SemilinearConfig {
  ModelParams params;
  Problem problem = Problem::UPower;
  double alpha = 2.0;
  double amplitude = 1e-3;
  double width = 1.0;
  Grid grid;
  double t_end = 100.0;
  double dt = 0.0;      // initial step; 0 picks t_end * 2^-12
  double dt_max = 0.0;  // step ceiling; 0 picks t_end / 64
  double rel_tol = 1e-6;
  double blowup_threshold = 0.0;  // sup-norm trip wire; 0 picks 1e6 * max|u_t(0)|
  int max_halvings = 40;          // consecutive rejections before declaring blow-up
  int checkpoints = 64;           // log-spaced measurement times
  double monitor_budget = 8.0;    // allowed growth of the monitor past its early value
  bool strict_hypotheses = false; // reject configs outside the global-existence window
  bool zero_forcing = false;      // diagnostic: drop the nonlinearity entirely

  void validate() const;
};

/// Whether the global small-data existence results cover this regime:
/// u-power needs noneffective damping, alpha > 2 sigma/(n - sigma) and either
/// sigma > 1 with sigma < n <= nbar(sigma), or n = 1 with sigma in [2/5, 1);
/// ut-power needs sigma >= 3, n <= sigma - 2, alpha > sigma/n.
bool hypotheses_hold(const ModelParams& params, Problem problem, double alpha);

struct CheckpointRow {
  double t = 0.0;
  double l2 = 0.0;       // ||u||_L2
  double linf = 0.0;     // ||u||_Linf
  double l1a = 0.0;      // ||u||_L^{1+alpha}
  double ut_l2 = 0.0;    // ||u_t||_L2
  double ut_l1a = 0.0;   // ||u_t||_L^{1+alpha}
  double hsigma = 0.0;   // ||(-Delta)^{sigma/2} u||_L2
  double energy = 0.0;   // (ut_l2^2 + hsigma^2) / 2
  double monitor = 0.0;  // weighted solution-space norm at this time
  double monitor_max = 0.0;  // running max of monitor up to this row
};

/// The weighted norm whose boundedness the small-data theory guarantees:
///   (1+t)^{n/(4 theta)} ||(-D)^{sigma/2} u||_2 + ||u_t||_2
///   + (1+t)^{n/sigma - 1} ||u||_inf + w(t) ||u||_2 + problem-specific term,
/// with w(t) = (1+t)^{n/(2 sigma) - 1} if n < 2 sigma, 1/log(e+t) if n = 2 sigma,
/// (1+t)^{(n - 2 sigma)/(4 theta)} if n > 2 sigma. The extra term weighs
/// ||u||_{1+alpha} (u-power) or ||u_t||_{1+alpha} (ut-power) by the reciprocal
/// of its guaranteed decay.
double monitor_value(const CheckpointRow& row, const ModelParams& params, double alpha,
                     Problem problem);

struct RunRecord {
  std::vector<CheckpointRow> series;
  Classification classification = Classification::Inconclusive;
  std::optional<double> t_blowup;  // last finite checkpoint when blow-up fired
  double late_slope = 0.0;         // fitted ||u||_inf slope over the last decade
  double predicted_slope = 0.0;    // 1 - n/sigma
  bool monitor_bounded = false;
  bool exploratory = false;  // parameters outside the covered hypothesis window
  std::int64_t steps_accepted = 0;
  std::int64_t steps_rejected = 0;
};

/// Integrates cfg to t_end or blow-up with step-doubling error control and
/// log-spaced checkpoints. Classification: Decaying if the monitor stays within
/// monitor_budget of its early value and the late ||u||_inf slope is at most
/// predicted + 0.2; Bounded if only the slope test fails; BlowUp on threshold,
/// non-finite state, or halving exhaustion; Inconclusive otherwise.
RunRecord run_semilinear(const SemilinearConfig& cfg);

/// Pointwise |w|^{1+alpha} followed by the sharp 2/3-rule spectral filter.
Field nonlinearity(const Field& w, double alpha);

/// Extract one norm column ("l2", "linf", "l1a", "ut_l2", "ut_l1a", "hsigma",
/// "energy", "monitor") as a fit-ready series.
DecaySeries record_column(const RunRecord& rec, const std::string& column,
                          const SemilinearConfig& cfg);

/// One predictor-corrector step of the Duhamel form: exact linear propagation
/// plus endpoint-weighted forcing, exact for forcing linear in t. Exposed for
/// convergence studies; run_semilinear drives it adaptively.
class SemilinearStepper {
 public:
  explicit SemilinearStepper(const SemilinearConfig& cfg);
  ~SemilinearStepper();
  SemilinearStepper(const SemilinearStepper&) = delete;
  SemilinearStepper& operator=(const SemilinearStepper&) = delete;

  double time() const;
  void set_state(const Field& u, const Field& ut);
  Field u() const;
  Field ut() const;
  void advance(double h);
  CheckpointRow measure() const;

 private:
  friend RunRecord run_semilinear(const SemilinearConfig&);
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

struct SweepCell {
  double alpha = 0.0;
  double epsilon = 0.0;
  Classification classification = Classification::Inconclusive;
  std::optional<double> t_blowup;
  double late_slope = 0.0;
  double predicted_slope = 0.0;
  bool failed = false;  // run threw; error holds the message
  std::string error;
};

struct SweepBracket {
  double epsilon = 0.0;
  std::optional<double> alpha_blowup;    // largest alpha that blew up
  std::optional<double> alpha_decaying;  // smallest alpha that decayed
};

struct SweepResult {
  std::vector<SweepCell> cells;  // ordered by (epsilon, alpha)
  std::vector<SweepBracket> brackets;
  // False if some fixed alpha switched from blow-up back to decaying as
  // epsilon increased (checked empirically, not asserted).
  bool monotone_in_epsilon = true;
};

/// Independent runs over the (alpha, epsilon) product grid, merged in
/// deterministic (epsilon, alpha) order regardless of worker count.
SweepResult sweep_alpha(const SemilinearConfig& base, const std::vector<double>& alphas,
                        const std::vector<double>& epsilons, int workers = 1);

}  // namespace sigmalab
