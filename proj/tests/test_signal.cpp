// Copyright 2026 The Mousetrap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>

#include "error.hpp"
#include "signal.hpp"

namespace mousetrap {
namespace {

constexpr double kPi = std::numbers::pi;

Waveform gaussian(double eps, double s = 20.0, double k = 0.05, Window w = {-15, 15}) {
  return Waveform(GaussianSine{eps, s, k}, kAxisZ, w);
}

// Independent quadrature oracle: plain midpoint rule.
double midpoint_rule(const Waveform& w, int power, Window win, long points) {
  const double h = win.length() / static_cast<double>(points);
  double acc = 0.0;
  for (long i = 0; i < points; ++i) acc += std::pow(w.evaluate(win.t0 + (i + 0.5) * h), power);
  return acc * h;
}

TEST(Waveform, GaussianSineExamples) {
  const Waveform w = gaussian(1.5);
  EXPECT_EQ(w.evaluate(0.0), 0.0);
  EXPECT_NEAR(w.evaluate(5.0), 1.5 * std::exp(-1.25), 1e-14);
  EXPECT_NEAR(w.evaluate(5.0), 0.429757, 1e-6);
  EXPECT_NEAR(w.derivative(0.0, 1), 1.5 * 2 * kPi * 0.05, 1e-14);
}

TEST(Waveform, ConstantExamples) {
  const Waveform w(Constant{0.7}, kAxisX, {0, 3});
  for (double t : {0.0, 1.3, 3.0}) {
    EXPECT_EQ(w.evaluate(t), 0.7);
    EXPECT_EQ(w.derivative(t, 1), 0.0);
    EXPECT_EQ(w.derivative(t, 2), 0.0);
  }
  EXPECT_EQ(w.field_at(1.0).bx, 0.7);
  EXPECT_EQ(w.field_at(1.0).bz, 0.0);
}

TEST(Waveform, GaussianSineIsOdd) {
  const Waveform w = gaussian(1.3);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> t(-15, 15);
  for (int i = 0; i < 200; ++i) {
    const double x = t(rng);
    EXPECT_EQ(w.evaluate(-x), -w.evaluate(x));
  }
}

TEST(Waveform, DerivativesMatchFiniteDifferences) {
  const Waveform w = gaussian(1.5);
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> t(-15, 15);
  const double h = 1e-5;
  for (int i = 0; i < 100; ++i) {
    const double x = t(rng);
    const double fd1 = (w.evaluate(x + h) - w.evaluate(x - h)) / (2 * h);
    EXPECT_NEAR(w.derivative(x, 1), fd1, 1e-6) << x;
    const double fd2 = (w.derivative(x + h, 1) - w.derivative(x - h, 1)) / (2 * h);
    EXPECT_NEAR(w.derivative(x, 2), fd2, 1e-6) << x;
  }
}

TEST(Waveform, SamplesInterpolateAndDifferentiate) {
  const Waveform w(Samples{{0, 1, 2, 3}, {0, 2, 2, -1}}, kAxisZ, {0, 3});
  EXPECT_EQ(w.evaluate(0.5), 1.0);
  EXPECT_EQ(w.evaluate(2.0), 2.0);
  EXPECT_EQ(w.evaluate(2.5), 0.5);
  EXPECT_THROW(w.evaluate(3.5), Error);
  EXPECT_THROW(Waveform(Samples{{0, 1}, {0, 2}}, kAxisZ, {0, 3}), Error);
}

TEST(Waveform, SamplesDerivativeOfLinearDataIsExactSlope) {
  Samples s;
  for (int i = 0; i <= 20; ++i) {
    s.times.push_back(0.25 * i);
    s.values.push_back(3.0 * 0.25 * i - 1.0);
  }
  const Waveform w(s, kAxisZ, {0, 5});
  EXPECT_NEAR(w.derivative(2.1, 1), 3.0, 1e-12);
  EXPECT_NEAR(w.derivative(2.1, 2), 0.0, 1e-9);
}

TEST(Waveform, RejectsBadConstruction) {
  EXPECT_THROW(Waveform(Constant{1}, kAxisZ, {1, 1}), Error);
  EXPECT_THROW(Waveform(Constant{1}, {0.0, 0.0, 0.0}, {0, 1}), Error);
  EXPECT_THROW(Waveform(GaussianSine{1, -2, 0.05}, kAxisZ, {0, 1}), Error);
  EXPECT_THROW(Waveform(Samples{{0, 0}, {1, 2}}, kAxisZ, {0, 0.5}), Error);
  EXPECT_THROW(gaussian(1).derivative(0, 3), Error);
}

TEST(Waveform, ScaledAndRedirected) {
  const Waveform w = gaussian(1.0);
  const Waveform s = w.scaled(-0.4);
  EXPECT_NEAR(s.evaluate(3.3), -0.4 * w.evaluate(3.3), 1e-15);
  EXPECT_THROW(w.with_direction({0.0, 3.0, 4.0}), Error);
  const Waveform d = w.with_direction({0.0, 0.6, 0.8});
  EXPECT_NEAR(d.direction()[1], 0.6, 1e-15);
  EXPECT_NEAR(d.field_at(5.0).bz, 0.8 * w.evaluate(5.0), 1e-15);
  const Waveform c = Waveform(Samples{{0, 1}, {1, 3}}, kAxisX, {0, 1}).scaled(2.0);
  EXPECT_EQ(c.evaluate(1.0), 6.0);
}

TEST(Preset, Fig2Shape) {
  const Waveform w = preset_waveform("fig2", 0.8);
  EXPECT_EQ(w.window().t0, -15.0);
  EXPECT_EQ(w.window().t1, 15.0);
  EXPECT_EQ(w.direction(), kAxisZ);
  EXPECT_NEAR(w.evaluate(5.0), 0.8 * std::exp(-1.25), 1e-15);
  // The start of the window is small but not exactly zero.
  EXPECT_NEAR(std::abs(w.evaluate(-15.0)), 0.8 * std::exp(-11.25), 1e-18);
  EXPECT_TRUE(is_preset("fig2"));
  EXPECT_FALSE(is_preset("fig9"));
  EXPECT_THROW(preset_waveform("fig9", 1), Error);
}

TEST(Nondimensionalize, UnitScaleIsIdentity) {
  const Waveform beta = gaussian(1.2, 20.0, 0.05);
  const Waveform b = nondimensionalize({1.0, beta});
  for (double t : {-7.0, 0.3, 11.0}) EXPECT_EQ(b.evaluate(t), beta.evaluate(t));
  EXPECT_EQ(b.window().t0, -15.0);
}

TEST(Nondimensionalize, ConstantCouplingBecomesUnitField) {
  const Waveform b = nondimensionalize({40.0, Waveform(Constant{40.0}, kAxisX, {0, 1})});
  EXPECT_EQ(b.evaluate(17.0), 1.0);
  EXPECT_EQ(b.window().t1, 40.0);
}

TEST(Nondimensionalize, SineHalfScaleSpotCheck) {
  // beta(t) = sin t as an envelope-free GaussianSine with k = 1/(2 pi).
  const Waveform beta(GaussianSine{1.0, std::numeric_limits<double>::infinity(), 0.5 / kPi},
                      kAxisZ, {0, 10});
  const Waveform b = nondimensionalize({2.0, beta});
  // b(t') = beta(t'/2)/2 so b(pi) = sin(pi/2)/2.
  EXPECT_NEAR(b.evaluate(kPi), 0.5, 1e-15);
  for (double t : {0.4, 2.2, 7.9}) EXPECT_NEAR(b.evaluate(t), std::sin(t / 2) / 2, 1e-15);
  EXPECT_THROW(nondimensionalize({0.0, beta}), Error);
}

TEST(Nondimensionalize, SamplesRescaleTimeAndValue) {
  const Waveform beta(Samples{{0, 1, 2}, {0, 4, 2}}, kAxisZ, {0, 2});
  const Waveform b = nondimensionalize({4.0, beta});
  EXPECT_EQ(b.window().t1, 8.0);
  EXPECT_EQ(b.evaluate(4.0), 1.0);
}

TEST(Integrate, Moments) {
  const Waveform w = gaussian(1.0);
  EXPECT_LT(std::abs(integrate_moment(w, 1)), 1e-9);
  EXPECT_LT(std::abs(integrate_moment(w, 3)), 1e-9);
  const Waveform c(Constant{0.3}, kAxisZ, {0, 7});
  EXPECT_NEAR(integrate_moment(c, 2), 0.09 * 7, 1e-12);
}

TEST(Integrate, SecondMomentAgainstMidpointOracle) {
  const Waveform w = gaussian(1.0);
  EXPECT_NEAR(integrate_moment(w, 2), midpoint_rule(w, 2, {-15, 15}, 1000000), 1e-7);
}

TEST(Integrate, MomentScaling) {
  const Waveform w = gaussian(1.0);
  const Window half{-15, 4};  // asymmetric, so odd moments are non-zero
  for (int p = 1; p <= 5; ++p) {
    const double base = integrate_moment(w, p, half);
    for (double eps : {0.3, 1.7}) {
      const double scaled = integrate_moment(w.scaled(eps), p, half);
      EXPECT_NEAR(scaled, std::pow(eps, p) * base, 1e-9 * std::max(1.0, std::abs(scaled))) << p;
    }
  }
}

TEST(Integrate, PolynomialExactAndReversed) {
  const auto cube = [](double x) { return x * x * x; };
  EXPECT_NEAR(integrate(cube, 0, 2, 1e-12), 4.0, 1e-12);
  EXPECT_NEAR(integrate(cube, 2, 0, 1e-12), -4.0, 1e-12);
  EXPECT_EQ(integrate(cube, 1, 1, 1e-12), 0.0);
  EXPECT_THROW(integrate_moment(gaussian(1.0), 0), Error);
}

TEST(Integrate, NonConvergenceIsNumerical) {
  try {
    integrate([](double x) { return x > 0.5 ? 1.0 / std::sqrt(x - 0.5) : 0.0; }, 0, 1, 1e-15);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Numerical);
  }
}

class SamplesCsv : public ::testing::Test {
 protected:
  std::filesystem::path path = std::filesystem::temp_directory_path() /
                               ("mt_samples_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                ::testing::UnitTest::GetInstance()->current_test_info()->name() + ".csv");
  void write(const std::string& text) { std::ofstream(path) << text; }
  void TearDown() override { std::filesystem::remove(path); }
};

TEST_F(SamplesCsv, ReadsHeaderCommentsAndBlankLines) {
  write("# recorded drive\ntime,value\n0,0\n\n0.5,1.5\r\n1,-2\n");
  const Samples s = read_samples_csv(path);
  EXPECT_EQ(s.times, (std::vector<double>{0, 0.5, 1}));
  EXPECT_EQ(s.values, (std::vector<double>{0, 1.5, -2}));
}

TEST_F(SamplesCsv, RejectsMalformedRowWithLineNumber) {
  write("0,0\n1,abc\n2,3\n");
  try {
    read_samples_csv(path);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Validation);
    EXPECT_NE(std::string(e.what()).find(":2:"), std::string::npos) << e.what();
  }
}

TEST_F(SamplesCsv, RejectsNonIncreasingTimes) {
  write("0,0\n1,1\n1,2\n");
  EXPECT_THROW(read_samples_csv(path), Error);
}

TEST(SamplesCsvMissing, IsIoError) {
  try {
    read_samples_csv("/nonexistent/dir/samples.csv");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Io);
  }
}

}  // namespace
}  // namespace mousetrap
