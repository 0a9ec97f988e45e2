#include "sigmalab/exponents.hpp"

#include <cmath>

namespace sigmalab {

std::string to_string(Theorem t) {
  switch (t) {
    case Theorem::Thm3: return "Thm3";
    case Theorem::Thm4: return "Thm4";
    case Theorem::Thm4Equality: return "Thm4-equality";
    case Theorem::Thm5: return "Thm5";
    case Theorem::Thm5NoLog: return "Thm5-nolog";
    case Theorem::Remark10Fallback: return "Remark10-fallback";
    case Theorem::NotCovered: return "NotCovered";
    case Theorem::Eq4Effective: return "Eq4-effective";
  }
  return "NotCovered";
}

std::string to_string(CondTag t) {
  switch (t) {
    case CondTag::Strict: return "strict";
    case CondTag::Equality: return "equality";
    case CondTag::Violated: return "violated";
  }
  return "violated";
}

double alpha0(const ModelParams& params) {
  params.validate();
  if (!(params.n > params.sigma))
    throw std::domain_error("alpha0: requires n > sigma");
  return 2.0 * params.sigma / (params.n - params.sigma);
}

double alpha1(const ModelParams& params) {
  params.validate();
  return params.sigma / params.n;
}

double nbar(double sigma) {
  if (!(sigma > 0.0)) throw std::domain_error("nbar: sigma must be positive");
  const double b = 3.0 * sigma - 2.0;
  return 0.5 * (b + std::sqrt(b * b + 8.0 * sigma));
}

double cond16_value(const EstimateSpec& spec, const ModelParams& params) {
  spec.validate();
  params.validate();
  return params.n / params.sigma * spec.dpq() + params.n * spec.duality_gap();
}

static CondTag classify(double value, double threshold, double tol) {
  if (std::abs(value - threshold) <= tol) return CondTag::Equality;
  return value < threshold ? CondTag::Strict : CondTag::Violated;
}

CondTag cond16(const EstimateSpec& spec, const ModelParams& params, const ExponentConfig& cfg) {
  return classify(cond16_value(spec, params), 1.0, cfg.equality_tol);
}

double cond53_value(const EstimateSpec& spec, const ModelParams& params) {
  return cond16_value(spec, params) + (spec.beta_len + spec.b) / params.sigma + spec.ell;
}

CondTag cond53(const EstimateSpec& spec, const ModelParams& params, const ExponentConfig& cfg) {
  return classify(cond53_value(spec, params), 1.0, cfg.equality_tol);
}

double thm5_a(const EstimateSpec& spec, const ModelParams& params) {
  spec.validate();
  params.validate();
  return params.n * spec.dpq() + spec.beta_len + spec.b +
         params.sigma * (params.n * spec.duality_gap() + spec.ell - 1.0);
}

// True when the pair (p, q) sits inside the log-free rectangle 1 < p <= 2 <= q < inf.
static bool log_free_interior(const EstimateSpec& spec) {
  return spec.p > 1.0 && spec.p <= 2.0 && spec.q >= 2.0 && spec.q != kInf;
}

RatePrediction predict_low_rate(const EstimateSpec& spec, const ModelParams& params,
                                const ExponentConfig& cfg) {
  spec.validate();
  params.validate();
  if (!params.noneffective())
    throw std::domain_error(
        "predict_low_rate: requires noneffective damping (sigma < 2*theta <= 2*sigma); "
        "use predict_effective_rate for 2*theta < sigma");

  const double n = params.n;
  const double sigma = params.sigma;
  const double gap = spec.duality_gap();
  const double sharp_exponent =
      1.0 - n / sigma * spec.dpq() - (spec.beta_len + spec.b) / sigma - spec.ell;

  RatePrediction out;
  switch (cond53(spec, params, cfg)) {
    case CondTag::Strict:
      out.exponent = sharp_exponent;
      out.log_loss = false;
      out.theorem = (spec.beta_len == 0 && spec.b == 0.0 && spec.ell == 0) ? Theorem::Thm3
                                                                           : Theorem::Thm4;
      out.covered = true;
      return out;
    case CondTag::Equality:
      // At equality the sharp exponent coincides with n*gap; a log factor appears
      // unless the pair sits strictly inside the duality rectangle.
      out.exponent = sharp_exponent;
      out.log_loss = !log_free_interior(spec);
      out.theorem = Theorem::Thm4Equality;
      out.covered = true;
      return out;
    case CondTag::Violated:
      break;
  }

  const double a = thm5_a(spec, params);
  const bool cond63 = n * gap < 1.0 - cfg.equality_tol;
  if (a >= -cfg.equality_tol && cond63) {
    out.exponent = n * gap - a / (2.0 * params.theta);
    const bool pair12 = (spec.p == 1.0 && spec.q == 2.0);
    const bool pair2inf = (spec.p == 2.0 && spec.q == kInf);
    const bool log_free = log_free_interior(spec) ||
                          ((pair12 || pair2inf) && a > cfg.equality_tol);
    out.log_loss = !log_free;
    out.theorem = out.log_loss ? Theorem::Thm5 : Theorem::Thm5NoLog;
    out.covered = true;
    return out;
  }

  // Fallback: trade the whole derivative budget against the diffusive factor.
  // Not optimal; below-linear growth is required for the bound to say anything.
  const double a_fb = n * spec.dpq() + spec.beta_len + spec.b + sigma * spec.ell;
  const double fallback = n * gap - a_fb / (2.0 * params.theta);
  if (fallback < 1.0 - cfg.equality_tol) {
    out.exponent = fallback;
    out.log_loss = false;
    out.theorem = Theorem::Remark10Fallback;
    out.covered = false;
    out.non_optimal = true;
    return out;
  }
  out.exponent = std::numeric_limits<double>::quiet_NaN();
  out.log_loss = false;
  out.theorem = Theorem::NotCovered;
  out.covered = false;
  out.non_optimal = true;
  return out;
}

double predict_high_delta(const EstimateSpec& spec, const ModelParams& params,
                          const ExponentConfig& cfg) {
  spec.validate();
  params.validate();
  const double r = spec.p;  // data index of the L^r -> L^q high-zone estimate
  const double a = params.n * (inv(r) - inv(spec.q)) + spec.beta_len + spec.b;
  const double two_theta = 2.0 * params.theta;
  const bool endpoint = (r == 1.0 || spec.q == kInf);

  if (a > two_theta) {
    if (params.theta >= params.sigma)
      throw std::domain_error(
          "predict_high_delta: no admissible delta for theta == sigma with "
          "n(1/r - 1/q) + |beta| + b > 2*theta");
    double delta = spec.ell + (a - two_theta) / (2.0 * (params.sigma - params.theta));
    return endpoint ? delta + cfg.delta_margin : delta;
  }
  const double raw = spec.ell - 1.0 + (two_theta > 0.0 ? a / two_theta : (a == 0.0 ? 0.0 : kInf));
  if (raw < 0.0) return 0.0;  // infimum 0 is itself admissible, endpoint or not
  return endpoint ? raw + cfg.delta_margin : raw;
}

RatePrediction predict_effective_rate(const EstimateSpec& spec, const ModelParams& params) {
  spec.validate();
  params.validate();
  if (!(2.0 * params.theta < params.sigma))
    throw std::domain_error("predict_effective_rate: requires effective damping 2*theta < sigma");
  if (spec.p != 1.0)
    throw std::domain_error("predict_effective_rate: stated for L^1 data (p = 1)");
  if (spec.ell > 1)
    throw std::domain_error("predict_effective_rate: only j = 0, 1 time derivatives");

  const double j = spec.ell;
  const double qdecay = 1.0 - inv(spec.q);
  const double n = params.n;
  RatePrediction out;
  if (n * qdecay >= 2.0 * params.theta) {
    out.exponent = -j - n / (2.0 * (params.sigma - params.theta)) * qdecay +
                   params.theta / (params.sigma - params.theta);
  } else {
    out.exponent = -j - n / (2.0 * params.theta) * qdecay + 1.0;
  }
  out.log_loss = false;
  out.theorem = Theorem::Eq4Effective;
  out.covered = true;
  return out;
}

static bool near_integer(double x) { return std::abs(x - std::round(x)) < 1e-12; }

NonexistenceRange nonexistence_range(const ModelParams& params, Problem problem) {
  params.validate();
  const double m = std::min(2.0 * params.theta, params.sigma);
  NonexistenceRange out;
  out.critical_included = near_integer(params.sigma) && near_integer(params.theta);
  if (problem == Problem::UPower) {
    if (params.n <= m) {
      out.all_alpha = true;
      out.upper = kInf;
    } else {
      out.upper = 2.0 * params.sigma / (params.n - m);
    }
  } else {
    out.upper = m / params.n;
  }
  return out;
}

DataSpace required_data_space(const ModelParams& params, double alpha, Problem problem) {
  params.validate();
  if (!(alpha > 0.0)) throw std::domain_error("required_data_space: alpha must be positive");
  DataSpace out;
  if (problem == Problem::UPower) {
    out.p_high = params.theta > 0.0 ? std::max(2.0, params.n / (2.0 * params.theta)) : kInf;
  } else {
    out.p_high = 1.0 + alpha;
  }
  return out;
}

}  // namespace sigmalab
