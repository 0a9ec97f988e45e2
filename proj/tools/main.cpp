// Command-line driver: rate prediction queries, linear decay experiments,
// semilinear runs, alpha sweeps, and a built-in oracle selftest. Every command
// resolves its configuration to explicit values and emits it next to the data
// so runs can be reproduced byte for byte.

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "cli_util.hpp"
#include "selftest.hpp"
#include "sigmalab/exponents.hpp"
#include "sigmalab/linear.hpp"
#include "sigmalab/semilinear.hpp"

namespace fs = std::filesystem;
using cli::ConfigReader;
using cli::csv_escape;
using cli::fmt;
using cli::UsageError;
using nlohmann::json;
using namespace sigmalab;

namespace {

ModelParams read_params(ConfigReader& r) {
  ModelParams p;
  p.sigma = r.num("params/sigma", 2.0);
  p.theta = r.num("params/theta", 1.5);
  p.n = r.num("params/n", 1.0);
  p.validate();
  return p;
}

CutoffConfig read_cutoff(ConfigReader& r) {
  CutoffConfig c;
  c.eps0 = r.num("cutoff/eps0", 0.25);
  c.n_inf = r.num("cutoff/n_inf", 0.0);
  c.validate();
  return c;
}

int integral_dimension(const ModelParams& p) {
  const double rounded = std::round(p.n);
  if (std::abs(p.n - rounded) > 1e-12)
    throw UsageError("this command samples fields, so params.n must be an integer");
  return static_cast<int>(rounded);
}

Zone parse_zone(const std::string& s) {
  if (s == "full") return Zone::Full;
  if (s == "low") return Zone::Low;
  if (s == "mid") return Zone::Mid;
  if (s == "high") return Zone::High;
  throw UsageError("norm.zone must be one of full/low/mid/high, got: " + s);
}

Problem parse_problem(const std::string& s) {
  if (s == "u-power") return Problem::UPower;
  if (s == "ut-power") return Problem::UtPower;
  throw UsageError("problem must be u-power or ut-power, got: " + s);
}

void write_text(const fs::path& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << body;
}

std::string csv_row(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) line += ',';
    line += csv_escape(cells[i]);
  }
  line += "\r\n";
  return line;
}

/// Dispatch to the regime-appropriate rate predictor.
RatePrediction predict_dispatch(const EstimateSpec& es, const ModelParams& p,
                                const ExponentConfig& xc, const std::string& regime) {
  if (regime == "low") return predict_low_rate(es, p, xc);
  if (regime == "effective") return predict_effective_rate(es, p);
  if (regime != "auto") throw UsageError("regime must be auto/low/effective/high-delta");
  if (p.noneffective()) return predict_low_rate(es, p, xc);
  if (p.effective()) return predict_effective_rate(es, p);
  return RatePrediction{};  // boundary 2 theta = sigma: not covered
}

double fit_r2_exponential(const DecaySeries& s) {
  // r^2 of log(value) regressed on t; the high zone decays like e^{-ct}.
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  int m = 0;
  for (std::size_t i = 0; i < s.times.size(); ++i) {
    if (!(s.values[i] > 0.0)) continue;
    const double x = s.times[i], y = std::log(s.values[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
    ++m;
  }
  if (m < 3) return 0.0;
  const double cov = sxy - sx * sy / m;
  const double vx = sxx - sx * sx / m;
  const double vy = syy - sy * sy / m;
  return vx > 0.0 && vy > 0.0 ? cov * cov / (vx * vy) : 0.0;
}

// ---------------------------------------------------------------------------

int cmd_predict(ConfigReader& r, const fs::path& out_dir) {
  const ModelParams params = read_params(r);
  EstimateSpec es;
  es.p = r.num("spec/p", 1.0);
  es.q = r.num("spec/q", 2.0);
  es.beta_len = r.integer("spec/beta_len", 0);
  es.b = r.num_or_sigma("spec/b", 0.0, params.sigma);
  es.ell = r.integer("spec/ell", 0);
  es.validate();
  ExponentConfig xc;
  xc.equality_tol = r.num("tolerance/equality", 1e-12);
  xc.delta_margin = r.num("tolerance/delta_margin", 1e-3);
  const std::string regime = r.str("regime", "auto");
  const bool table = r.boolean("table/enabled", false);
  const int resolution = r.integer("table/resolution", 21);
  r.finish();

  json out;
  if (regime == "high-delta") {
    out["delta"] = predict_high_delta(es, params, xc);
  } else {
    const RatePrediction pred = predict_dispatch(es, params, xc, regime);
    out["exponent"] = pred.exponent;
    out["log_loss"] = pred.log_loss;
    out["theorem"] = to_string(pred.theorem);
    out["covered"] = pred.covered;
    out["non_optimal"] = pred.non_optimal;
  }
  const bool weighted = es.beta_len > 0 || es.b > 0.0 || es.ell > 0;
  out["condition"] = {
      {"name", weighted ? "derivative-weighted admissibility" : "low-frequency admissibility"},
      {"value", weighted ? cond53_value(es, params) : cond16_value(es, params)},
      {"tag", to_string(weighted ? cond53(es, params, xc) : cond16(es, params, xc))}};

  fs::create_directories(out_dir);
  r.write_resolved((out_dir / "resolved-config.json").string());
  write_text(out_dir / "prediction.json", out.dump(2) + "\n");

  if (table) {
    if (resolution < 2) throw UsageError("table.resolution must be >= 2");
    std::string csv = csv_row({"inv_p", "inv_q", "value", "tag"});
    for (int i = 0; i < resolution; ++i) {
      const double ip = static_cast<double>(i) / (resolution - 1);
      for (int j = 0; j < resolution; ++j) {
        const double iq = static_cast<double>(j) / (resolution - 1);
        if (iq > ip) continue;  // need p <= q
        EstimateSpec cell = es;
        cell.p = ip == 0.0 ? kInf : 1.0 / ip;
        cell.q = iq == 0.0 ? kInf : 1.0 / iq;
        csv += csv_row({fmt(ip), fmt(iq), fmt(cond53_value(cell, params)),
                        to_string(cond53(cell, params, xc))});
      }
    }
    write_text(out_dir / "table.csv", csv);
  }

  std::printf("%s\n", out.dump(2).c_str());
  return 0;
}

// ---------------------------------------------------------------------------

int cmd_linear_decay(ConfigReader& r, const fs::path& out_dir) {
  const ModelParams params = read_params(r);
  const CutoffConfig cut = read_cutoff(r);
  const std::string path = r.str("path", "radial");
  const double amplitude = r.num("data/amplitude", 1.0);
  const double width = r.num("data/width", 1.0);
  const std::string kind = r.str("norm/kind", "single");
  NormSpec ns;
  ns.q = r.num("norm/q", 2.0);
  ns.deriv.beta_len = r.integer("norm/beta_len", 0);
  ns.deriv.b = r.num_or_sigma("norm/b", 0.0, params.sigma);
  ns.deriv.ell = r.integer("norm/ell", 0);
  ns.deriv.validate();
  ns.zone = parse_zone(r.str("norm/zone", "full"));
  const double t_min = r.num("times/t_min", 1.0);
  const double t_max = r.num("times/t_max", 1e4);
  const int count = r.integer("times/count", 33);
  const std::string model = r.str("fit/model", "power");
  const double fw_min = r.num("fit/t_min", t_min);
  const double fw_max = r.num("fit/t_max", t_max);
  const double rel_tol = r.num("rel_tol", 1e-8);
  Grid grid;
  grid.points_per_axis = r.integer("grid/points_per_axis", 256);
  grid.box_length = r.num("grid/box_length", 200.0 * width);

  if (!(t_min > 0.0 && t_max > t_min)) throw UsageError("need 0 < times.t_min < times.t_max");
  if (count < 2) throw UsageError("times.count must be >= 2");
  std::vector<double> times(count);
  for (int i = 0; i < count; ++i)
    times[i] = t_min * std::pow(t_max / t_min, static_cast<double>(i) / (count - 1));

  const int n = integral_dimension(params);
  DecaySeries series;
  double fit_slope = 0.0, fit_logc = 0.0, fit_r2 = 0.0;
  double predicted = 0.0;
  std::string theorem;

  if (model == "exponential") {
    if (path != "radial") throw UsageError("exponential fits run on the radial path");
    const RadialProfile profile = gaussian_profile(n, amplitude, width);
    const HighFreqFit hf = high_freq_decay(profile, n, times, ns.deriv, params, cut);
    series = hf.series;
    fit_slope = hf.c_fit;
    fit_r2 = fit_r2_exponential(series);
    predicted = hf.spectral_floor;
    theorem = "spectral-floor";
    r.note("formula/fit", "value ~ C * exp(-slope * t), slope vs min |Re lambda_plus|");
  } else {
    EstimateSpec es;
    es.p = 1.0;
    if (kind == "energy") {
      if (path != "radial") throw UsageError("the energy norm runs on the radial path");
      const RadialProfile profile = gaussian_profile(n, amplitude, width);
      NormSpec na;
      na.q = 2.0;
      na.deriv.b = params.sigma;
      NormSpec nb;
      nb.q = 2.0;
      nb.deriv.ell = 1;
      const DecaySeries sa = decay_series_radial(profile, n, na, times, params, cut, rel_tol);
      const DecaySeries sb = decay_series_radial(profile, n, nb, times, params, cut, rel_tol);
      series = sa;
      series.label = "energy";
      for (std::size_t i = 0; i < series.values.size(); ++i) series.values[i] += sb.values[i];
      es.q = 2.0;
      es.b = params.sigma;
      r.note("formula/series", "value(t) = || |D|^sigma u(t) ||_2 + || u_t(t) ||_2");
    } else if (kind == "single") {
      if (path == "radial") {
        const RadialProfile profile = gaussian_profile(n, amplitude, width);
        series = decay_series_radial(profile, n, ns, times, params, cut, rel_tol);
      } else if (path == "grid") {
        grid.n = n;
        grid.validate();
        const Field u1 = gaussian_data(grid, amplitude, width);
        series = decay_series(u1, ns, times, params, cut);
      } else {
        throw UsageError("path must be radial or grid, got: " + path);
      }
      es.q = ns.q;
      es.beta_len = ns.deriv.beta_len;
      es.b = ns.deriv.b;
      es.ell = ns.deriv.ell;
      r.note("formula/series",
             "value(t) = || |D|^(beta_len+b) (d/dt)^ell u(t) ||_q over the " +
                 to_string(ns.zone) + " zone; u solves u_tt + |D|^2sigma u + |D|^2theta u_t = 0");
    } else {
      throw UsageError("norm.kind must be single or energy, got: " + kind);
    }

    const FitModel fm = model == "power"      ? FitModel::Power
                        : model == "power-log" ? FitModel::PowerLog
                                               : throw UsageError("fit.model must be "
                                                                  "power/power-log/exponential");
    const RateFit fit = fit_rate(series, fw_min, fw_max, fm);
    fit_slope = fit.slope;
    fit_logc = fit.log_coefficient;
    fit_r2 = fit.r_squared;
    const RatePrediction pred = predict_dispatch(es, params, ExponentConfig{}, "auto");
    predicted = pred.exponent;
    theorem = to_string(pred.theorem);
    r.note("formula/fit", model == "power"
                              ? "value ~ C * (1+t)^slope"
                              : "value ~ C * (1+t)^slope * log(e+t)^log_coefficient");
  }
  r.note("validity_tmax", series.validity_tmax == kInf ? json("inf") : json(series.validity_tmax));
  r.note("window_warning", series.window_warning);
  r.finish();

  fs::create_directories(out_dir);
  r.write_resolved((out_dir / "resolved-config.json").string());

  std::string scsv = csv_row({"t", "norm_name", "zone", "value"});
  for (std::size_t i = 0; i < series.times.size(); ++i)
    scsv += csv_row(
        {fmt(series.times[i]), series.label, to_string(ns.zone), fmt(series.values[i])});
  write_text(out_dir / "series.csv", scsv);

  std::string fcsv = csv_row(
      {"slope", "log_coefficient", "r_squared", "t_min", "t_max", "predicted", "theorem"});
  fcsv += csv_row({fmt(fit_slope), fmt(fit_logc), fmt(fit_r2), fmt(fw_min), fmt(fw_max),
                   fmt(predicted), theorem});
  write_text(out_dir / "fits.csv", fcsv);

  std::printf("series %s: fit slope %s (predicted %s, %s), r^2 %.4f\n", series.label.c_str(),
              fmt(fit_slope).c_str(), fmt(predicted).c_str(), theorem.c_str(), fit_r2);
  return 0;
}

// ---------------------------------------------------------------------------

SemilinearConfig read_semilinear(ConfigReader& r) {
  SemilinearConfig cfg;
  cfg.params = read_params(r);
  cfg.problem = parse_problem(r.str("problem", "u-power"));
  cfg.alpha = r.num("alpha", 2.0);
  cfg.amplitude = r.num("data/amplitude", 1e-3);
  cfg.width = r.num("data/width", 1.0);
  cfg.grid.n = integral_dimension(cfg.params);
  cfg.grid.points_per_axis = r.integer("grid/points_per_axis", 1024);
  cfg.grid.box_length = r.num("grid/box_length", 200.0 * cfg.width);
  cfg.t_end = r.num("t_end", 100.0);
  cfg.dt = r.num("dt", 0.0);
  cfg.dt_max = r.num("dt_max", 0.0);
  cfg.rel_tol = r.num("rel_tol", 1e-6);
  cfg.blowup_threshold = r.num("blowup_threshold", 0.0);
  cfg.max_halvings = r.integer("max_halvings", 40);
  cfg.checkpoints = r.integer("checkpoints", 64);
  cfg.monitor_budget = r.num("monitor_budget", 8.0);
  cfg.strict_hypotheses = r.boolean("strict_hypotheses", false);
  cfg.zero_forcing = r.boolean("zero_forcing", false);
  cfg.validate();
  return cfg;
}

json record_json(const RunRecord& rec) {
  json out;
  out["classification"] = to_string(rec.classification);
  out["t_blowup"] = rec.t_blowup ? json(*rec.t_blowup) : json();
  out["late_slope"] = rec.late_slope;
  out["predicted_slope"] = rec.predicted_slope;
  out["monitor_bounded"] = rec.monitor_bounded;
  out["exploratory"] = rec.exploratory;
  out["steps_accepted"] = rec.steps_accepted;
  out["steps_rejected"] = rec.steps_rejected;
  return out;
}

std::string series_csv(const RunRecord& rec) {
  std::string csv = csv_row({"t", "l2", "linf", "l1a", "ut_l2", "ut_l1a", "hsigma", "energy",
                             "monitor", "monitor_max"});
  for (const auto& row : rec.series)
    csv += csv_row({fmt(row.t), fmt(row.l2), fmt(row.linf), fmt(row.l1a), fmt(row.ut_l2),
                    fmt(row.ut_l1a), fmt(row.hsigma), fmt(row.energy), fmt(row.monitor),
                    fmt(row.monitor_max)});
  return csv;
}

int cmd_semilinear(ConfigReader& r, const fs::path& out_dir) {
  const SemilinearConfig cfg = read_semilinear(r);
  r.note("hypotheses_hold", hypotheses_hold(cfg.params, cfg.problem, cfg.alpha));
  r.note("formula/monitor",
         "monitor = (1+t)^(n/4theta) |D^sigma u|_2 + |u_t|_2 + (1+t)^(n/sigma-1) |u|_inf "
         "+ w(t) |u|_2 + problem-weighted forcing norm");
  const double horizon = box_validity_tmax(cfg.grid.box_length, cfg.params);
  r.note("validity_tmax", horizon == kInf ? json("inf") : json(horizon));
  r.finish();

  const RunRecord rec = run_semilinear(cfg);

  fs::create_directories(out_dir);
  r.write_resolved((out_dir / "resolved-config.json").string());
  write_text(out_dir / "record.json", record_json(rec).dump(2) + "\n");
  write_text(out_dir / "series.csv", series_csv(rec));

  if (rec.t_blowup)
    std::printf("classification: %s at t = %s\n", to_string(rec.classification).c_str(),
                fmt(*rec.t_blowup).c_str());
  else
    std::printf("classification: %s (late slope %s, predicted %s)\n",
                to_string(rec.classification).c_str(), fmt(rec.late_slope).c_str(),
                fmt(rec.predicted_slope).c_str());
  return 0;
}

int cmd_sweep(ConfigReader& r, const fs::path& out_dir, int workers) {
  const SemilinearConfig base = read_semilinear(r);
  const std::vector<double> alphas = r.list("sweep/alphas", {});
  const std::vector<double> epsilons = r.list("sweep/epsilons", {base.amplitude});
  if (alphas.empty()) throw UsageError("sweep.alphas must list at least one power");
  if (epsilons.empty()) throw UsageError("sweep.epsilons must list at least one amplitude");
  r.note("workers", workers);
  const double horizon = box_validity_tmax(base.grid.box_length, base.params);
  r.note("validity_tmax", horizon == kInf ? json("inf") : json(horizon));
  r.finish();

  const SweepResult res = sweep_alpha(base, alphas, epsilons, workers);

  fs::create_directories(out_dir);
  r.write_resolved((out_dir / "resolved-config.json").string());

  std::string csv = csv_row(
      {"alpha", "epsilon", "classification", "t_blowup", "late_slope", "predicted_slope"});
  bool any_failed = false;
  for (const auto& cell : res.cells) {
    any_failed |= cell.failed;
    csv += csv_row({fmt(cell.alpha), fmt(cell.epsilon),
                    cell.failed ? "failed" : to_string(cell.classification),
                    cell.t_blowup ? fmt(*cell.t_blowup) : "", fmt(cell.late_slope),
                    fmt(cell.predicted_slope)});
    if (cell.failed) std::fprintf(stderr, "cell failed: %s\n", cell.error.c_str());
  }
  write_text(out_dir / "sweep.csv", csv);

  std::string bcsv = csv_row({"epsilon", "alpha_blowup", "alpha_decaying"});
  for (const auto& br : res.brackets)
    bcsv += csv_row({fmt(br.epsilon), br.alpha_blowup ? fmt(*br.alpha_blowup) : "",
                     br.alpha_decaying ? fmt(*br.alpha_decaying) : ""});
  write_text(out_dir / "brackets.csv", bcsv);

  for (const auto& br : res.brackets)
    std::printf("epsilon %s: largest blow-up alpha %s, smallest decaying alpha %s\n",
                fmt(br.epsilon).c_str(),
                br.alpha_blowup ? fmt(*br.alpha_blowup).c_str() : "none",
                br.alpha_decaying ? fmt(*br.alpha_decaying).c_str() : "none");
  std::printf("monotone in epsilon: %s\n", res.monotone_in_epsilon ? "yes" : "no");
  return any_failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral laboratory for damped sigma-evolution models"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string out_dir = "sigmalab-out";
  std::vector<std::string> sets;
  int workers = 1;
  std::uint64_t seed = 1;
  app.add_option("--config", config_path, "JSON configuration file");
  app.add_option("--set", sets, "override a config key, e.g. --set params.sigma=2");
  app.add_option("--out", out_dir, "output directory (created if missing)");
  app.add_option("--workers", workers, "worker threads for sweeps");
  app.add_option("--seed", seed, "seed for randomized checks");

  CLI::App* predict = app.add_subcommand("predict", "decay-rate prediction for one estimate");
  CLI::App* linear = app.add_subcommand("linear-decay", "linear decay series and fits");
  CLI::App* semilinear = app.add_subcommand("semilinear", "one semilinear evolution run");
  CLI::App* sweep = app.add_subcommand("sweep", "alpha/epsilon classification sweep");
  CLI::App* selftest = app.add_subcommand("selftest", "oracle and invariant spot checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  try {
    if (selftest->parsed()) return cli::run_selftest(seed);
    ConfigReader reader(config_path, sets);
    reader.note("seed", static_cast<double>(seed));
    if (predict->parsed()) {
      reader.note("command", "predict");
      return cmd_predict(reader, out_dir);
    }
    if (linear->parsed()) {
      reader.note("command", "linear-decay");
      return cmd_linear_decay(reader, out_dir);
    }
    if (semilinear->parsed()) {
      reader.note("command", "semilinear");
      return cmd_semilinear(reader, out_dir);
    }
    if (sweep->parsed()) {
      reader.note("command", "sweep");
      return cmd_sweep(reader, out_dir, workers);
    }
  } catch (const UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 1;
  }
  return 2;
}
