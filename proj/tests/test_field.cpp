#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "sigmalab/field.hpp"

using namespace sigmalab;

namespace {

Field random_field(const Grid& g, unsigned seed) {
  Field f(g);
  std::mt19937 rng(seed);
  std::normal_distribution<double> nd;
  double* p = f.mutable_data();
  for (std::size_t i = 0; i < f.size(); ++i) p[i] = nd(rng);
  return f;
}

}  // namespace

TEST_SUITE("field") {

TEST_CASE("transform round trip is the identity") {
  for (int n : {1, 2, 3}) {
    Grid g;
    g.n = n;
    g.points_per_axis = n == 1 ? 256 : 16;
    g.box_length = 12.5;
    const Field f = random_field(g, 100 + n);
    const Field back = Field::from_frequency(g, f.to_frequency());
    double worst = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
      worst = std::max(worst, std::abs(back[i] - f[i]));
      scale = std::max(scale, std::abs(f[i]));
    }
    CHECK(worst <= 1e-12 * scale);
  }
}

TEST_CASE("single cosine mode lands in one bin with the continuum amplitude") {
  Grid g;
  g.n = 1;
  g.points_per_axis = 64;
  g.box_length = 8.0;
  const double k1 = 2.0 * std::numbers::pi / g.box_length * 3.0;  // mode 3
  Field f(g);
  double* p = f.mutable_data();
  for (int j = 0; j < g.points_per_axis; ++j) p[j] = std::cos(k1 * g.coord(j));

  const auto& freq = f.to_frequency();
  // Continuum convention: cos contributes L/2 at the +3 bin of the half spectrum.
  for (int j = 0; j <= g.points_per_axis / 2; ++j) {
    const double expect = j == 3 ? g.box_length / 2.0 : 0.0;
    CHECK(std::abs(freq[j].real() - expect) <= 1e-10 * g.box_length);
    CHECK(std::abs(freq[j].imag()) <= 1e-10 * g.box_length);
  }
}

TEST_CASE("wide-box Gaussian matches its analytic transform") {
  // e^{-|x|^2/2} has transform (2 pi)^{n/2} e^{-|xi|^2/2} in this convention.
  for (int n : {1, 2}) {
    Grid g;
    g.n = n;
    g.points_per_axis = n == 1 ? 512 : 128;
    g.box_length = n == 1 ? 40.0 : 30.0;
    const Field f = gaussian_data(g, 1.0, 1.0);
    const auto& freq = f.to_frequency();
    const double norm = std::pow(2.0 * std::numbers::pi, n / 2.0);
    double worst = 0.0;
    for_each_mode(g, [&](std::size_t flat, double xi2, int) {
      const double expect = norm * std::exp(-xi2 / 2.0);
      worst = std::max(worst, std::abs(freq[flat].real() - expect) + std::abs(freq[flat].imag()));
    });
    CHECK(worst <= 1e-8 * norm);
  }
}

TEST_CASE("Parseval ties the physical and spectral L2 norms") {
  for (int n : {1, 2}) {
    Grid g;
    g.n = n;
    g.points_per_axis = n == 1 ? 128 : 32;
    g.box_length = 7.0;
    const Field f = random_field(g, 7 + n);
    const double phys = lp_norm(f, 2.0);
    const double spec = spectral_l2_norm(g, f.to_frequency());
    CHECK(phys == doctest::Approx(spec).epsilon(1e-10));
  }
}

TEST_CASE("lp norms on a known field") {
  Grid g;
  g.n = 1;
  g.points_per_axis = 8;
  g.box_length = 8.0;  // dx = 1, samples are exactly the values
  Field f(g);
  double* p = f.mutable_data();
  for (int i = 0; i < 8; ++i) p[i] = (i == 3) ? -2.0 : 1.0;
  CHECK(lp_norm(f, 1.0) == doctest::Approx(9.0));
  CHECK(lp_norm(f, 2.0) == doctest::Approx(std::sqrt(11.0)));
  CHECK(lp_norm(f, kInf) == doctest::Approx(2.0));
}

TEST_CASE("multiplier application composes pointwise") {
  Grid g;
  g.n = 2;
  g.points_per_axis = 32;
  g.box_length = 10.0;
  const Field f = random_field(g, 55);
  auto m1 = [](double r) { return 1.0 / (1.0 + r * r); };
  auto m2 = [](double r) { return std::exp(-0.3 * r); };
  const Field a = apply_multiplier(apply_multiplier(f, m1), m2);
  const Field b = apply_multiplier(f, [&](double r) { return m1(r) * m2(r); });
  for (std::size_t i = 0; i < f.size(); ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-11));
}

TEST_CASE("Riesz potential inverts the matching power away from the zero mode") {
  Grid g;
  g.n = 1;
  g.points_per_axis = 128;
  g.box_length = 15.0;
  Field f = random_field(g, 91);
  // Remove the mean so the zero mode carries nothing.
  double mean = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) mean += f[i];
  mean /= static_cast<double>(f.size());
  double* p = f.mutable_data();
  for (std::size_t i = 0; i < f.size(); ++i) p[i] -= mean;

  const Field smoothed = apply_multiplier(f, riesz_multiplier(1.2));
  const Field back = apply_multiplier(smoothed, [](double r) { return std::pow(r, 1.2); });
  double worst = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    worst = std::max(worst, std::abs(back[i] - f[i]));
    scale = std::max(scale, std::abs(f[i]));
  }
  CHECK(worst <= 1e-9 * scale);
}

TEST_CASE("dealias mask zeroes exactly the top third of each axis") {
  Grid g;
  g.n = 1;
  g.points_per_axis = 128;
  g.box_length = 5.0;
  const Field f = random_field(g, 12);
  auto freq = f.to_frequency();
  apply_dealias(g, freq);
  const int cut = g.points_per_axis / 3;  // keep |mode| <= 42
  for (int j = 0; j <= g.points_per_axis / 2; ++j) {
    if (j > cut)
      CHECK(std::abs(freq[j]) == 0.0);
    else
      CHECK(std::abs(freq[j]) > 0.0);
  }
}

TEST_CASE("gaussian_data amplitude and mass") {
  Grid g;
  g.n = 2;
  g.points_per_axis = 64;
  g.box_length = 24.0;
  const double amp = 0.7, width = 1.3;
  const Field f = gaussian_data(g, amp, width);
  CHECK(lp_norm(f, kInf) == doctest::Approx(amp).epsilon(1e-12));
  const double mass = lp_norm(f, 1.0);  // all samples positive
  CHECK(mass ==
        doctest::Approx(amp * 2.0 * std::numbers::pi * width * width).epsilon(1e-8));
}

TEST_CASE("field snapshots round trip through disk") {
  Grid g;
  g.n = 1;
  g.points_per_axis = 64;
  g.box_length = 3.25;
  const Field f = random_field(g, 73);
  const std::string path = "/tmp/sigmalab_field_roundtrip.bin";
  save_field(f, path);
  const Field back = load_field(path);
  std::remove(path.c_str());
  REQUIRE(back.size() == f.size());
  CHECK(back.grid().box_length == doctest::Approx(f.grid().box_length));
  for (std::size_t i = 0; i < f.size(); ++i) CHECK(back[i] == f[i]);
}

}  // TEST_SUITE
