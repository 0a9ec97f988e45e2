#include <doctest.h>

#include <cmath>
#include <random>

#include "sigmalab/exponents.hpp"

using namespace sigmalab;

namespace {

ModelParams mp(double sigma, double theta, double n) { return ModelParams{sigma, theta, n}; }

EstimateSpec es(double p, double q, int beta_len = 0, double b = 0.0, int ell = 0) {
  EstimateSpec s;
  s.p = p;
  s.q = q;
  s.beta_len = beta_len;
  s.b = b;
  s.ell = ell;
  return s;
}

// One-sided reformulation of the admissibility condition: instead of the max
// form, pick the duality side by comparing p against the conjugate of q
// (1/p + 1/q vs 1) and evaluate that side's affine expression alone. An
// independent route for cross-checking cond16; on the boundary both sides
// coincide, so either branch is valid there.
CondTag cond16_reformulated(const EstimateSpec& spec, const ModelParams& params) {
  const double ip = inv(spec.p), iq = inv(spec.q);
  double value;
  if (ip + iq <= 1.0) {
    // q >= 2, p in [q', q]: the (1/2 - 1/p) side is the active one.
    value = params.n / params.sigma * (ip - iq) + params.n * (0.5 - ip);
  } else {
    // p <= 2, q in [p, p']: the (1/q - 1/2) side is the active one.
    value = params.n / params.sigma * (ip - iq) + params.n * (iq - 0.5);
  }
  if (std::abs(value - 1.0) <= 1e-12) return CondTag::Equality;
  return value < 1.0 ? CondTag::Strict : CondTag::Violated;
}

}  // namespace

TEST_SUITE("exponents") {

TEST_CASE("critical powers and their Vieta identities") {
  CHECK(alpha0(mp(2, 2, 3)) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(alpha0(mp(2, 2, 4)) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(alpha1(mp(3, 2, 1)) == doctest::Approx(3.0).epsilon(1e-14));

  // alpha0 (n - sigma) = 2 sigma and alpha1 n = sigma exactly.
  for (double sigma : {0.5, 1.5, 2.0, 3.0}) {
    for (double n : {1.0, 2.0, 3.0, 4.0}) {
      if (n <= sigma) continue;
      auto p = mp(sigma, sigma * 0.9, n);
      CHECK(alpha0(p) * (n - sigma) == doctest::Approx(2.0 * sigma).epsilon(1e-12));
      CHECK(alpha1(p) * n == doctest::Approx(sigma).epsilon(1e-12));
    }
  }

  CHECK_THROWS_AS(alpha0(mp(2, 2, 2)), std::domain_error);  // needs n > sigma
}

TEST_CASE("nbar closed form, quadratic residual, interval, monotonicity") {
  CHECK(nbar(2.0) == doctest::Approx(2.0 + 2.0 * std::sqrt(2.0)).epsilon(1e-14));
  CHECK(nbar(1.0) == doctest::Approx(2.0).epsilon(1e-14));

  for (double sigma : {1.25, 1.5, 2.0, 3.0, 5.0, 10.0}) {
    const double n = nbar(sigma);
    const double res = n * n - (3.0 * sigma - 2.0) * n - 2.0 * sigma;
    CHECK(std::abs(res) <= 1e-10 * std::max(1.0, n * n));
    CHECK(n > 3.0 * sigma - 2.0);
    CHECK(n < 3.0 * sigma - 1.0);
  }

  // nbar(sigma) - (3 sigma - 2) decreases in sigma.
  double prev = kInf;
  for (double sigma = 1.05; sigma < 12.0; sigma += 0.45) {
    const double gap = nbar(sigma) - (3.0 * sigma - 2.0);
    CHECK(gap < prev);
    prev = gap;
  }
}

TEST_CASE("cond16 classification on pinned points") {
  CHECK(cond16(es(2, 2), mp(2, 1.5, 3)) == CondTag::Strict);
  CHECK(cond16_value(es(2, 2), mp(2, 1.5, 3)) == doctest::Approx(0.0));

  // p=1, q=inf, n=3, sigma=2: (3/2)(1) + 3(-1/2) = 0.
  CHECK(cond16_value(es(1, kInf), mp(2, 1.5, 3)) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(cond16(es(1, kInf), mp(2, 1.5, 3)) == CondTag::Strict);

  // Equality contour through (p, q) = (1, 1 + alpha0) at n = nbar(sigma).
  for (double sigma : {1.5, 2.0, 3.0}) {
    ModelParams p = mp(sigma, sigma, nbar(sigma));
    const double q = 1.0 + alpha0(p);
    CHECK(cond16(es(1, q), p) == CondTag::Equality);
  }
}

TEST_CASE("cond16 agrees with the one-sided reformulation on random samples") {
  std::mt19937 rng(20260813u);
  std::uniform_real_distribution<double> up(1.0, 6.0), un(1.0, 8.0), us(0.6, 5.0);
  for (int i = 0; i < 1000; ++i) {
    double p = up(rng), q = up(rng);
    if (p > q) std::swap(p, q);
    const double sg = us(rng);
    const ModelParams par = mp(sg, sg * 0.49, un(rng));
    const EstimateSpec spec = es(p, q);
    CHECK(cond16(spec, par) == cond16_reformulated(spec, par));
  }
}

TEST_CASE("cond53 pinned points and specialization to cond16") {
  // b = sigma, p=1, q=2: violated for sigma <= 2 (the energy estimate needs
  // the split route instead).
  CHECK(cond53(es(1, 2, 0, 2.0), mp(2, 2, 3)) == CondTag::Violated);

  // (p=3, q=6, sigma=3, n=4): (4/3)(1/6) + 4(1/2 - 1/3) = 8/9 < 1.
  CHECK(cond53_value(es(3, 6), mp(3, 2, 4)) == doctest::Approx(8.0 / 9.0).epsilon(1e-13));
  CHECK(cond53(es(3, 6), mp(3, 2, 4)) == CondTag::Strict);

  std::mt19937 rng(7u);
  std::uniform_real_distribution<double> up(1.0, 5.0), un(1.0, 7.0), us(0.7, 4.0);
  for (int i = 0; i < 1000; ++i) {
    double p = up(rng), q = up(rng);
    if (p > q) std::swap(p, q);
    const double sg = us(rng);
    const ModelParams par = mp(sg, sg * 0.4, un(rng));
    CHECK(cond53(es(p, q), par) == cond16(es(p, q), par));
  }
}

TEST_CASE("thm5_a pinned arithmetic") {
  CHECK(thm5_a(es(1, 2, 0, 2.0), mp(2, 2, 3)) == doctest::Approx(1.5).epsilon(1e-13));
  CHECK(thm5_a(es(1, 2), mp(2, 2, 4)) == doctest::Approx(0.0).epsilon(1e-13));
  CHECK(thm5_a(es(1, 2), mp(2, 2, 3)) == doctest::Approx(-0.5).epsilon(1e-13));
}

TEST_CASE("predict_low_rate reproduces the three-branch L2 growth structure") {
  // p=1, q=2, no derivatives, sigma = theta = 2: the L2 norm of the kernel
  // applied to L1 data grows below n = 2 sigma, logs at n = 2 sigma, decays above.
  auto rate = [&](double n) { return predict_low_rate(es(1, 2), mp(2, 2, n)); };

  CHECK(rate(3).exponent == doctest::Approx(0.25).epsilon(1e-13));
  CHECK_FALSE(rate(3).log_loss);
  CHECK(rate(4).exponent == doctest::Approx(0.0).epsilon(1e-13));
  CHECK(rate(4).log_loss);
  CHECK(rate(5).exponent == doctest::Approx(-0.125).epsilon(1e-13));

  for (double n = 1; n <= 12; ++n) {
    const RatePrediction r = rate(n);
    CHECK(r.covered);
    if (n < 4)
      CHECK(r.exponent == doctest::Approx(1.0 - n / 4.0).epsilon(1e-12));
    else if (n == 4)
      CHECK(r.log_loss);
    else
      CHECK(r.exponent == doctest::Approx(-(n - 4.0) / 8.0).epsilon(1e-12));
  }
}

TEST_CASE("predict_low_rate pinned sup-norm and energy rates") {
  // L1 -> Linf: 1 - n/sigma.
  const RatePrediction sup = predict_low_rate(es(1, kInf), mp(2, 1.5, 3));
  CHECK(sup.exponent == doctest::Approx(-0.5).epsilon(1e-13));
  CHECK_FALSE(sup.log_loss);

  // L1 -> L2 with a full sigma-order derivative: the energy rate -n/(4 theta).
  const RatePrediction en = predict_low_rate(es(1, 2, 0, 2.0), mp(2, 2, 3));
  CHECK(en.exponent == doctest::Approx(-0.375).epsilon(1e-13));
  CHECK_FALSE(en.log_loss);
  CHECK(en.theorem == Theorem::Thm5NoLog);
}

TEST_CASE("predict_low_rate monotone in the Lebesgue gap within a branch") {
  const ModelParams par = mp(2, 1.8, 5);
  double prev = kInf;
  for (double iq = 0.5; iq >= 0.05; iq -= 0.05) {
    const RatePrediction r = predict_low_rate(es(1, 1.0 / iq), par);
    if (!r.covered) continue;
    CHECK(r.exponent <= prev + 1e-12);
    prev = r.exponent;
  }
}

TEST_CASE("predict_high_delta branches") {
  // theta = sigma, small a: no smoothing needed.
  CHECK(predict_high_delta(es(2, 2), mp(2, 2, 3)) == doctest::Approx(0.0));

  // Interior r=q, a = 2 theta exactly, ell = 1: both branches give delta = 1.
  {
    EstimateSpec s = es(2, 2, 0, 3.0, 1);  // a = |beta| + b = 3 = 2 theta
    CHECK(predict_high_delta(s, mp(2, 1.5, 3)) == doctest::Approx(1.0).epsilon(1e-12));
  }

  // Endpoint (r=1, q=inf, n=1, sigma=2, theta=1.5): infimum 0, margin added.
  {
    const double d = predict_high_delta(es(1, kInf), mp(2, 1.5, 1));
    CHECK(d >= 0.0);
    CHECK(d <= 1e-3 + 1e-12);
  }
}

TEST_CASE("predict_effective_rate branch arithmetic") {
  // q = 1: no spatial decay gain, exponent 1 for j = 0.
  CHECK(predict_effective_rate(es(1, 1), mp(2, 0.5, 3)).exponent == doctest::Approx(1.0));

  // sigma=1, theta=0, q=inf, n=2: n >= 2 theta branch,
  // -n/(2(sigma-theta)) + theta/(sigma-theta) = -1.
  CHECK(predict_effective_rate(es(1, kInf), mp(1, 0, 2)).exponent ==
        doctest::Approx(-1.0).epsilon(1e-13));

  // j=1, sigma=2, theta=0.5, q=2, n=4: n(1-1/q)=2 >= 2 theta=1 -> -4/3.
  EstimateSpec s = es(1, 2);
  s.ell = 1;
  CHECK(predict_effective_rate(s, mp(2, 0.5, 4)).exponent ==
        doctest::Approx(-4.0 / 3.0).epsilon(1e-13));

  CHECK_THROWS(predict_effective_rate(es(1, 2), mp(2, 1.5, 3)));  // noneffective input
}

TEST_CASE("nonexistence ranges") {
  {
    const NonexistenceRange r = nonexistence_range(mp(2, 1.5, 3), Problem::UPower);
    CHECK_FALSE(r.all_alpha);
    CHECK(r.upper == doctest::Approx(4.0));
  }
  {
    const NonexistenceRange r = nonexistence_range(mp(2, 1.5, 2), Problem::UPower);
    CHECK(r.all_alpha);
  }
  {
    const NonexistenceRange r = nonexistence_range(mp(3, 2, 1), Problem::UtPower);
    CHECK(r.upper == doctest::Approx(3.0));
  }
}

TEST_CASE("required data spaces") {
  {
    const DataSpace d = required_data_space(mp(2, 1.5, 3), 2.0, Problem::UPower);
    CHECK(d.p_low == doctest::Approx(1.0));
    CHECK(d.p_high == doctest::Approx(2.0));
  }
  {
    const DataSpace d = required_data_space(mp(2, 0.3, 2), 2.0, Problem::UPower);
    CHECK(d.p_high == doctest::Approx(10.0 / 3.0).epsilon(1e-13));
  }
  {
    const DataSpace d = required_data_space(mp(3, 2, 1), 4.0, Problem::UtPower);
    CHECK(d.p_high == doctest::Approx(5.0));
  }
}

}  // TEST_SUITE
