#include "sigmalab/semilinear.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>
#include <utility>

#include "sigmalab/exponents.hpp"
#include "sigmalab/fft.hpp"
#include "sigmalab/symbols.hpp"

namespace sigmalab {

namespace {

// Per-frequency step data for one step size h: propagator entries plus the
// two-point forcing weights. i0 = w1 + w2 is the constant-forcing weight used
// by the predictor.
struct WeightTable {
  double h = 0.0;
  std::vector<double> e0, e1, de0, de1, w1, w2, v1, v2, i0;
};

bool all_finite(const std::vector<std::complex<double>>& v) {
  for (const auto& z : v)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

}  // namespace

std::string to_string(Classification c) {
  switch (c) {
    case Classification::Decaying: return "decaying";
    case Classification::Bounded: return "bounded";
    case Classification::Inconclusive: return "inconclusive";
    case Classification::BlowUp: return "blow-up";
  }
  return "?";
}

bool hypotheses_hold(const ModelParams& params, Problem problem, double alpha) {
  if (!params.noneffective()) return false;
  if (problem == Problem::UtPower)
    return params.sigma >= 3.0 && params.n <= params.sigma - 2.0 && alpha > alpha1(params);
  if (params.sigma > 1.0) {
    if (!(params.n > params.sigma && params.n <= nbar(params.sigma))) return false;
  } else if (params.sigma < 1.0) {
    // One-dimensional extension of the existence result below sigma = 1.
    if (!(params.n == 1 && params.sigma >= 0.4)) return false;
  } else {
    return false;  // the fixed-point argument degenerates at sigma = 1
  }
  return alpha > alpha0(params);
}

void SemilinearConfig::validate() const {
  params.validate();
  grid.validate();
  if (static_cast<double>(grid.n) != params.n)
    throw std::invalid_argument("SemilinearConfig: grid dimension disagrees with params.n");
  if (!(alpha > 0.0)) throw std::invalid_argument("SemilinearConfig: alpha must be positive");
  if (!(amplitude >= 0.0)) throw std::invalid_argument("SemilinearConfig: amplitude must be >= 0");
  if (!(width > 0.0)) throw std::invalid_argument("SemilinearConfig: width must be positive");
  if (!(t_end > 0.0)) throw std::invalid_argument("SemilinearConfig: t_end must be positive");
  if (!(dt >= 0.0) || !(dt_max >= 0.0))
    throw std::invalid_argument("SemilinearConfig: dt and dt_max must be >= 0");
  if (!(rel_tol > 0.0)) throw std::invalid_argument("SemilinearConfig: rel_tol must be positive");
  if (!(blowup_threshold >= 0.0))
    throw std::invalid_argument("SemilinearConfig: blowup_threshold must be >= 0");
  if (max_halvings < 1) throw std::invalid_argument("SemilinearConfig: max_halvings must be >= 1");
  if (checkpoints < 4) throw std::invalid_argument("SemilinearConfig: need at least 4 checkpoints");
  if (!(monitor_budget > 1.0))
    throw std::invalid_argument("SemilinearConfig: monitor_budget must exceed 1");
  if (strict_hypotheses && !hypotheses_hold(params, problem, alpha))
    throw std::invalid_argument(
        "SemilinearConfig: parameters fall outside the global-existence hypothesis window "
        "(disable strict_hypotheses to run in exploratory mode)");
}

double monitor_value(const CheckpointRow& row, const ModelParams& params, double alpha,
                     Problem problem) {
  const double n = static_cast<double>(params.n);
  const double sg = params.sigma;
  const double th = params.theta;
  const double tw = 1.0 + row.t;

  double l2_weight;
  if (n < 2.0 * sg)
    l2_weight = std::pow(tw, -1.0 + n / (2.0 * sg));
  else if (n == 2.0 * sg)
    l2_weight = 1.0 / std::log(std::exp(1.0) + row.t);
  else
    l2_weight = std::pow(tw, (n - 2.0 * sg) / (4.0 * th));

  double m = std::pow(tw, n / (4.0 * th)) * row.hsigma + row.ut_l2 +
             std::pow(tw, n / sg - 1.0) * row.linf + l2_weight * row.l2;

  // Reciprocal of the guaranteed L^{1+alpha} decay of the forced quantity.
  const double dpq = n / sg * (1.0 - 1.0 / (1.0 + alpha));
  if (problem == Problem::UPower)
    m += std::pow(tw, -1.0 + dpq) * row.l1a;
  else
    m += std::pow(tw, dpq) * row.ut_l1a;
  return m;
}

struct SemilinearStepper::Impl {
  SemilinearConfig cfg;
  Grid g;
  std::size_t nspec = 0, nreal = 0;
  double expo = 0.0;       // 1 + alpha
  double threshold = 0.0;  // physical sup-norm trip wire
  double t = 0.0;
  double step_sup = 0.0;  // largest |w| seen by the forcing since last reset

  std::vector<double> beta, c, hw;  // |xi|^{2 theta}/2, |xi|^{2 sigma}, Hermitian weight
  std::vector<std::complex<double>> uh, vh;  // raw unnormalized half spectra

  std::vector<std::pair<double, std::unique_ptr<WeightTable>>> tables;  // LRU, front hot

  // scratch (single-threaded per stepper)
  std::vector<double> phys;
  std::vector<std::complex<double>> pred, f0, f1;

  explicit Impl(const SemilinearConfig& conf) : cfg(conf) {
    cfg.validate();
    g = cfg.grid;
    nreal = g.total_points();
    nspec = g.spectral_points();
    expo = 1.0 + cfg.alpha;

    beta.resize(nspec);
    c.resize(nspec);
    hw.resize(nspec);
    for_each_mode(g, [&](std::size_t flat, double xi2, int last) {
      const double rho = std::sqrt(xi2);
      beta[flat] = rho == 0.0 && cfg.params.theta > 0.0 ? 0.0
                                                        : 0.5 * std::pow(rho, 2.0 * cfg.params.theta);
      c[flat] = rho == 0.0 ? 0.0 : std::pow(rho, 2.0 * cfg.params.sigma);
      hw[flat] = hermitian_weight(g, last);
    });

    Field u1 = gaussian_data(g, cfg.amplitude, cfg.width);
    uh.assign(nspec, {0.0, 0.0});
    vh.resize(nspec);
    FftPlan::get(g).forward(u1.data(), vh.data());

    const double sup0 = lp_norm(u1, kInf);
    threshold = cfg.blowup_threshold > 0.0 ? cfg.blowup_threshold : 1e6 * sup0;
    if (threshold <= 0.0) threshold = kInf;  // zero data: nothing meaningful to trip

    phys.resize(nreal);
    pred.resize(nspec);
    f0.resize(nspec);
    f1.resize(nspec);
  }

  const WeightTable& table(double h) {
    for (std::size_t i = 0; i < tables.size(); ++i) {
      if (tables[i].first == h) {
        if (i != 0) std::rotate(tables.begin(), tables.begin() + i, tables.begin() + i + 1);
        return *tables.front().second;
      }
    }
    auto tb = std::make_unique<WeightTable>();
    tb->h = h;
    for (auto vec : {&tb->e0, &tb->e1, &tb->de0, &tb->de1, &tb->w1, &tb->w2, &tb->v1, &tb->v2,
                     &tb->i0})
      vec->resize(nspec);
    for (std::size_t k = 0; k < nspec; ++k) {
      const Propagator2x2 pr = propagator_bc(h, beta[k], c[k]);
      const DuhamelWeights dw = duhamel_weights_bc(h, beta[k], c[k]);
      tb->e0[k] = pr.e0;
      tb->e1[k] = pr.e1;
      tb->de0[k] = pr.de0;
      tb->de1[k] = pr.de1;
      tb->w1[k] = dw.w1;
      tb->w2[k] = dw.w2;
      tb->v1[k] = dw.v1;
      tb->v2[k] = dw.v2;
      tb->i0[k] = dw.w1 + dw.w2;
    }
    tables.emplace(tables.begin(), h, std::move(tb));
    if (tables.size() > 3) tables.pop_back();
    return *tables.front().second;
  }

  // |w|^{1+alpha} of the field with half spectrum wh, dealiased. Updates
  // step_sup with the physical sup of w.
  void forcing(const std::vector<std::complex<double>>& wh, std::vector<std::complex<double>>& out) {
    FftPlan& plan = FftPlan::get(g);
    plan.backward(wh.data(), phys.data());
    const double scale = 1.0 / static_cast<double>(nreal);
    double sup = 0.0;
    for (std::size_t i = 0; i < nreal; ++i) {
      const double a = std::abs(phys[i] * scale);
      if (a > sup) sup = a;
      phys[i] = std::pow(a, expo);
    }
    if (sup > step_sup) step_sup = sup;
    plan.forward(phys.data(), out.data());
    apply_dealias(g, out);
  }

  // One predictor-corrector step on (u, v), which may alias this->uh/vh or be
  // trial copies. f0_pre, when given, must be the forcing of (u, v) at the
  // step start (it only depends on the state, not on h).
  void advance_state(std::vector<std::complex<double>>& u, std::vector<std::complex<double>>& v,
                     double h, const std::vector<std::complex<double>>* f0_pre) {
    const WeightTable& tb = table(h);
    if (cfg.zero_forcing) {
      for (std::size_t k = 0; k < nspec; ++k) {
        const auto au = tb.e0[k] * u[k] + tb.e1[k] * v[k];
        const auto av = tb.de0[k] * u[k] + tb.de1[k] * v[k];
        u[k] = au;
        v[k] = av;
      }
      return;
    }
    if (!f0_pre) {
      forcing(cfg.problem == Problem::UPower ? u : v, f0);
      f0_pre = &f0;
    }
    const auto& F0 = *f0_pre;
    // First-order prediction of the field entering the nonlinearity at t + h,
    // treating the forcing as frozen at its left endpoint.
    if (cfg.problem == Problem::UPower) {
      for (std::size_t k = 0; k < nspec; ++k)
        pred[k] = tb.e0[k] * u[k] + tb.e1[k] * v[k] + tb.i0[k] * F0[k];
    } else {
      for (std::size_t k = 0; k < nspec; ++k)
        pred[k] = tb.de0[k] * u[k] + tb.de1[k] * v[k] + tb.e1[k] * F0[k];
    }
    forcing(pred, f1);
    for (std::size_t k = 0; k < nspec; ++k) {
      const auto au =
          tb.e0[k] * u[k] + tb.e1[k] * v[k] + tb.w1[k] * F0[k] + tb.w2[k] * f1[k];
      const auto av =
          tb.de0[k] * u[k] + tb.de1[k] * v[k] + tb.v1[k] * F0[k] + tb.v2[k] * f1[k];
      u[k] = au;
      v[k] = av;
    }
  }

  // Weighted spectral L2 (raw convention), used for step-error ratios.
  double spec_l2(const std::vector<std::complex<double>>& a) const {
    double s = 0.0;
    for (std::size_t k = 0; k < nspec; ++k) s += hw[k] * std::norm(a[k]);
    return std::sqrt(s);
  }

  double spec_l2_diff(const std::vector<std::complex<double>>& a,
                      const std::vector<std::complex<double>>& b) const {
    double s = 0.0;
    for (std::size_t k = 0; k < nspec; ++k) s += hw[k] * std::norm(a[k] - b[k]);
    return std::sqrt(s);
  }

  CheckpointRow measure_state(const std::vector<std::complex<double>>& u,
                              const std::vector<std::complex<double>>& v, double tt) const {
    CheckpointRow row;
    row.t = tt;
    const double dxn = g.cell_volume();
    const double scale = 1.0 / static_cast<double>(nreal);
    std::vector<double> buf(nreal);
    FftPlan& plan = FftPlan::get(g);

    plan.backward(u.data(), buf.data());
    double l2sq = 0.0, linf = 0.0, l1a = 0.0;
    for (std::size_t i = 0; i < nreal; ++i) {
      const double a = std::abs(buf[i] * scale);
      l2sq += a * a;
      if (a > linf) linf = a;
      l1a += std::pow(a, expo);
    }
    row.l2 = std::sqrt(dxn * l2sq);
    row.linf = linf;
    row.l1a = std::pow(dxn * l1a, 1.0 / expo);

    plan.backward(v.data(), buf.data());
    double vl2sq = 0.0, vl1a = 0.0;
    for (std::size_t i = 0; i < nreal; ++i) {
      const double a = std::abs(buf[i] * scale);
      vl2sq += a * a;
      vl1a += std::pow(a, expo);
    }
    row.ut_l2 = std::sqrt(dxn * vl2sq);
    row.ut_l1a = std::pow(dxn * vl1a, 1.0 / expo);

    double hs = 0.0;
    for (std::size_t k = 0; k < nspec; ++k) hs += hw[k] * c[k] * std::norm(u[k]);
    row.hsigma = dxn / std::sqrt(g.box_volume()) * std::sqrt(hs);

    row.energy = 0.5 * (row.ut_l2 * row.ut_l2 + row.hsigma * row.hsigma);
    row.monitor = monitor_value(row, cfg.params, cfg.alpha, cfg.problem);
    row.monitor_max = row.monitor;
    return row;
  }
};

SemilinearStepper::SemilinearStepper(const SemilinearConfig& cfg)
    : impl_(std::make_unique<Impl>(cfg)) {}

SemilinearStepper::~SemilinearStepper() = default;

double SemilinearStepper::time() const { return impl_->t; }

void SemilinearStepper::set_state(const Field& u, const Field& ut) {
  if (u.grid().n != impl_->g.n || u.grid().points_per_axis != impl_->g.points_per_axis ||
      ut.size() != u.size())
    throw std::invalid_argument("SemilinearStepper::set_state: grid mismatch");
  FftPlan& plan = FftPlan::get(impl_->g);
  plan.forward(u.data(), impl_->uh.data());
  plan.forward(ut.data(), impl_->vh.data());
}

Field SemilinearStepper::u() const {
  const double scale = 1.0 / static_cast<double>(impl_->nreal);
  Field out(impl_->g);
  FftPlan::get(impl_->g).backward(impl_->uh.data(), out.mutable_data());
  double* p = out.mutable_data();
  for (std::size_t i = 0; i < impl_->nreal; ++i) p[i] *= scale;
  return out;
}

Field SemilinearStepper::ut() const {
  const double scale = 1.0 / static_cast<double>(impl_->nreal);
  Field out(impl_->g);
  FftPlan::get(impl_->g).backward(impl_->vh.data(), out.mutable_data());
  double* p = out.mutable_data();
  for (std::size_t i = 0; i < impl_->nreal; ++i) p[i] *= scale;
  return out;
}

void SemilinearStepper::advance(double h) {
  if (!(h > 0.0)) throw std::invalid_argument("SemilinearStepper::advance: h must be positive");
  impl_->advance_state(impl_->uh, impl_->vh, h, nullptr);
  impl_->t += h;
}

CheckpointRow SemilinearStepper::measure() const {
  return impl_->measure_state(impl_->uh, impl_->vh, impl_->t);
}

Field nonlinearity(const Field& w, double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("nonlinearity: alpha must be positive");
  Field raw(w.grid());
  double* p = raw.mutable_data();
  for (std::size_t i = 0; i < w.size(); ++i) p[i] = std::pow(std::abs(w[i]), 1.0 + alpha);
  auto freq = raw.to_frequency();
  apply_dealias(w.grid(), freq);
  return Field::from_frequency(w.grid(), freq);
}

DecaySeries record_column(const RunRecord& rec, const std::string& column,
                          const SemilinearConfig& cfg) {
  DecaySeries s;
  s.label = column;
  s.validity_tmax = box_validity_tmax(cfg.grid.box_length, cfg.params);
  s.times.reserve(rec.series.size());
  s.values.reserve(rec.series.size());
  for (const auto& row : rec.series) {
    double v;
    if (column == "l2") v = row.l2;
    else if (column == "linf") v = row.linf;
    else if (column == "l1a") v = row.l1a;
    else if (column == "ut_l2") v = row.ut_l2;
    else if (column == "ut_l1a") v = row.ut_l1a;
    else if (column == "hsigma") v = row.hsigma;
    else if (column == "energy") v = row.energy;
    else if (column == "monitor") v = row.monitor;
    else throw std::invalid_argument("record_column: unknown column " + column);
    s.times.push_back(row.t);
    s.values.push_back(v);
    if (row.t > s.validity_tmax) s.window_warning = true;
  }
  return s;
}

RunRecord run_semilinear(const SemilinearConfig& cfg) {
  SemilinearStepper stepper(cfg);
  auto& im = *stepper.impl_;

  RunRecord rec;
  rec.exploratory = !hypotheses_hold(cfg.params, cfg.problem, cfg.alpha);
  rec.predicted_slope = 1.0 - static_cast<double>(cfg.params.n) / cfg.params.sigma;

  const double h_max = cfg.dt_max > 0.0 ? cfg.dt_max : cfg.t_end / 64.0;
  double h = cfg.dt > 0.0 ? cfg.dt : cfg.t_end * std::ldexp(1.0, -12);
  h = std::min(h, h_max);
  const double h_min = cfg.t_end * 1e-14;

  // Log-spaced measurement times, open at t_first, pinned to t_end.
  const int K = cfg.checkpoints;
  double t_first = std::min(std::max(4.0 * h, cfg.t_end * 1e-4), cfg.t_end / 8.0);
  std::vector<double> marks(K);
  const double ratio = std::pow(cfg.t_end / t_first, 1.0 / (K - 1));
  for (int j = 0; j < K; ++j) marks[j] = t_first * std::pow(ratio, j);
  marks.back() = cfg.t_end;

  double monitor_peak = 0.0;
  auto push_row = [&](CheckpointRow row) -> bool {
    if (!std::isfinite(row.monitor) || !std::isfinite(row.l2)) return false;
    monitor_peak = std::max(monitor_peak, row.monitor);
    row.monitor_max = monitor_peak;
    rec.series.push_back(row);
    return true;
  };
  push_row(im.measure_state(im.uh, im.vh, 0.0));

  std::vector<std::complex<double>> u_big, v_big, u_small, v_small, f0(im.nspec);
  const double scale_u = std::max(im.spec_l2(im.vh) * cfg.t_end, 1e-280);
  const double scale_v = std::max(im.spec_l2(im.vh), 1e-280);

  bool blowup = false;
  int halvings = 0;
  std::size_t mark_idx = 0;
  const double t_eps = 1e-12 * cfg.t_end;

  while (im.t < cfg.t_end - t_eps) {
    const double hstep = std::min(h, cfg.t_end - im.t);
    im.step_sup = 0.0;
    bool f0_ready = false;
    if (!cfg.zero_forcing) {
      im.forcing(cfg.problem == Problem::UPower ? im.uh : im.vh, f0);
      f0_ready = true;
    }
    const std::vector<std::complex<double>>* f0p = f0_ready ? &f0 : nullptr;

    u_big = im.uh;
    v_big = im.vh;
    im.advance_state(u_big, v_big, hstep, f0p);
    u_small = im.uh;
    v_small = im.vh;
    im.advance_state(u_small, v_small, hstep / 2.0, f0p);
    im.advance_state(u_small, v_small, hstep / 2.0, nullptr);

    const bool finite = all_finite(u_big) && all_finite(v_big) && all_finite(u_small) &&
                        all_finite(v_small) && std::isfinite(im.step_sup);
    double err = kInf;
    if (finite) {
      const double eu =
          im.spec_l2_diff(u_big, u_small) / std::max(im.spec_l2(u_small), 1e-9 * scale_u);
      const double ev =
          im.spec_l2_diff(v_big, v_small) / std::max(im.spec_l2(v_small), 1e-9 * scale_v);
      err = std::max(eu, ev);
    }

    if (!finite || err > cfg.rel_tol) {
      ++rec.steps_rejected;
      ++halvings;
      h = hstep / 2.0;
      if (halvings > cfg.max_halvings || h < h_min) {
        blowup = true;  // the state refuses to advance: blow-up candidate
        break;
      }
      continue;
    }

    im.uh.swap(u_small);
    im.vh.swap(v_small);
    im.t += hstep;
    ++rec.steps_accepted;
    halvings = 0;

    if (im.step_sup > im.threshold) {
      push_row(im.measure_state(im.uh, im.vh, im.t));
      blowup = true;
      break;
    }
    if (mark_idx < marks.size() && im.t >= marks[mark_idx] * (1.0 - 1e-12)) {
      push_row(im.measure_state(im.uh, im.vh, im.t));
      while (mark_idx < marks.size() && marks[mark_idx] <= im.t * (1.0 + 1e-12)) ++mark_idx;
    }
    if (err < cfg.rel_tol / 16.0 && hstep == h && 2.0 * h <= h_max) h *= 2.0;
  }

  if (blowup) {
    // Keep whatever part of the current state still measures finite.
    if (rec.series.empty() || rec.series.back().t < im.t) {
      CheckpointRow last = im.measure_state(im.uh, im.vh, im.t);
      push_row(last);
    }
    rec.classification = Classification::BlowUp;
    if (!rec.series.empty()) rec.t_blowup = rec.series.back().t;
    return rec;
  }

  // Monitor boundedness relative to its early plateau.
  double ref_t = std::min(10.0, cfg.t_end / 4.0);
  double ref_val = 0.0;
  for (const auto& row : rec.series) {
    ref_val = std::max(ref_val, row.monitor);
    if (row.t >= ref_t) break;
  }
  rec.monitor_bounded =
      ref_val > 0.0 ? monitor_peak <= cfg.monitor_budget * ref_val : monitor_peak == 0.0;

  double peak_linf = 0.0;
  for (const auto& row : rec.series) peak_linf = std::max(peak_linf, row.linf);
  if (peak_linf <= 1e-300) {
    rec.classification = Classification::Decaying;  // identically zero trajectory
    rec.monitor_bounded = true;
    return rec;
  }

  bool slope_ok = false;
  try {
    const DecaySeries s = record_column(rec, "linf", cfg);
    const RateFit fit = fit_rate(s, cfg.t_end / 10.0, cfg.t_end, FitModel::Power);
    rec.late_slope = fit.slope;
    slope_ok = fit.slope <= rec.predicted_slope + 0.2;
  } catch (const std::exception&) {
    slope_ok = false;  // not enough usable late samples
  }

  if (rec.monitor_bounded)
    rec.classification = slope_ok ? Classification::Decaying : Classification::Bounded;
  else
    rec.classification = Classification::Inconclusive;
  return rec;
}

SweepResult sweep_alpha(const SemilinearConfig& base, const std::vector<double>& alphas,
                        const std::vector<double>& epsilons, int workers) {
  if (alphas.empty() || epsilons.empty())
    throw std::invalid_argument("sweep_alpha: alpha and epsilon grids must be nonempty");

  std::vector<double> as = alphas, es = epsilons;
  std::sort(as.begin(), as.end());
  std::sort(es.begin(), es.end());

  SweepResult out;
  out.cells.resize(as.size() * es.size());
  for (std::size_t ie = 0; ie < es.size(); ++ie)
    for (std::size_t ia = 0; ia < as.size(); ++ia) {
      SweepCell& cell = out.cells[ie * as.size() + ia];
      cell.epsilon = es[ie];
      cell.alpha = as[ia];
    }

  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= out.cells.size()) return;
      SweepCell& cell = out.cells[i];
      SemilinearConfig cfg = base;
      cfg.alpha = cell.alpha;
      cfg.amplitude = cell.epsilon;
      cfg.blowup_threshold = 0.0;  // rescale the trip wire with the data
      try {
        const RunRecord rec = run_semilinear(cfg);
        cell.classification = rec.classification;
        cell.t_blowup = rec.t_blowup;
        cell.late_slope = rec.late_slope;
        cell.predicted_slope = rec.predicted_slope;
      } catch (const std::exception& ex) {
        cell.failed = true;
        cell.error = ex.what();
      }
    }
  };

  int nworkers = std::clamp(workers, 1, 64);
  nworkers = std::min<int>(nworkers, static_cast<int>(out.cells.size()));
  std::vector<std::thread> pool;
  for (int w = 1; w < nworkers; ++w) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();

  for (std::size_t ie = 0; ie < es.size(); ++ie) {
    SweepBracket br;
    br.epsilon = es[ie];
    for (std::size_t ia = 0; ia < as.size(); ++ia) {
      const SweepCell& cell = out.cells[ie * as.size() + ia];
      if (cell.failed) continue;
      if (cell.classification == Classification::BlowUp) br.alpha_blowup = cell.alpha;
      if (cell.classification == Classification::Decaying && !br.alpha_decaying)
        br.alpha_decaying = cell.alpha;
    }
    out.brackets.push_back(br);
  }

  for (std::size_t ia = 0; ia < as.size(); ++ia) {
    bool seen_blowup = false;
    for (std::size_t ie = 0; ie < es.size(); ++ie) {
      const SweepCell& cell = out.cells[ie * as.size() + ia];
      if (cell.failed) continue;
      if (cell.classification == Classification::BlowUp) seen_blowup = true;
      else if (seen_blowup && cell.classification == Classification::Decaying)
        out.monotone_in_epsilon = false;
    }
  }
  return out;
}

}  // namespace sigmalab
