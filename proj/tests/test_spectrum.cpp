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

#include <algorithm>
#include <cmath>
#include <random>

#include "error.hpp"
#include "evolve.hpp"
#include "linalg.hpp"
#include "model.hpp"
#include "spectrum.hpp"

namespace mousetrap {
namespace {

const double kS3 = std::sqrt(3.0);

std::vector<double> sorted(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<double> numeric_spectrum(SensorKind kind, double b) {
  const SensorModel m(kind);
  FieldVector f;
  (m.reference_axis() == Axis::Z ? f.bz : f.bx) = b;
  return hermitian_eig(m.hamiltonian_at(f)).eigenvalues;
}

TEST(ClosedForm, TrimerZeroAndUnitField) {
  for (double l : sorted(branch_eigenvalues(SensorKind::KitaevTrimer, 0.0)))
    EXPECT_NEAR(std::abs(l), kS3, 1e-15);
  const auto l = trimer_eigenvalues_z(1.0);
  const double r = std::sqrt(11.0);
  const std::array<double, 8> expected{-1 - kS3, -1 + kS3, 1 - kS3, 1 + kS3,
                                       -1 - kS3, -1 + kS3, 1 - r,   1 + r};
  for (std::size_t i = 0; i < 8; ++i) EXPECT_NEAR(l[i], expected[i], 1e-14) << i;
  const auto num = numeric_spectrum(SensorKind::KitaevTrimer, 1.0);
  const auto srt = sorted({l.begin(), l.end()});
  for (std::size_t i = 0; i < 8; ++i) EXPECT_NEAR(num[i], srt[i], 1e-10);
}

TEST(ClosedForm, MatchesNumericForAllModelsOnRandomFields) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> pick(-2, 2);
  for (SensorKind kind : {SensorKind::Standard, SensorKind::LandauZener, SensorKind::Dimer,
                          SensorKind::KitaevTrimer}) {
    for (int i = 0; i < 200; ++i) {
      const double b = pick(rng);
      const auto closed = sorted(branch_eigenvalues(kind, b));
      const auto num = numeric_spectrum(kind, b);
      ASSERT_EQ(closed.size(), num.size());
      for (std::size_t k = 0; k < num.size(); ++k) EXPECT_NEAR(closed[k], num[k], 1e-10) << b;
    }
  }
}

TEST(ClosedForm, TableSensorExamples) {
  EXPECT_EQ(table_sensor_eigenvalues(SensorKind::LandauZener, 0.0), (std::vector<double>{-1, 1}));
  const auto d = table_sensor_eigenvalues(SensorKind::Dimer, 1.0);
  EXPECT_EQ(d[0], -1.0);
  EXPECT_EQ(d[1], 1.0);
  EXPECT_NEAR(d[2], -std::sqrt(5.0), 1e-15);
  EXPECT_NEAR(d[3], std::sqrt(5.0), 1e-15);
  EXPECT_EQ(table_sensor_eigenvalues(SensorKind::Standard, 0.3), (std::vector<double>{-0.3, 0.3}));
  EXPECT_THROW(table_sensor_eigenvalues(SensorKind::KitaevTrimer, 0.0), Error);
}

TEST(Psi0, ConstantsFollowClosedForms) {
  const auto k = psi0_constants();
  EXPECT_NEAR(k.a, 1.0 / std::sqrt(2.0 + (kS3 - 1) * (kS3 - 1)), 1e-15);
  EXPECT_NEAR(k.c, 1.0 / std::sqrt(2.0 + (kS3 + 1) * (kS3 + 1)), 1e-15);
  EXPECT_NEAR(k.e, (kS3 - 1) * k.a, 1e-15);
  EXPECT_NEAR(k.h, (kS3 + 1) * k.c, 1e-15);
  EXPECT_NEAR(k.a, 0.627963, 1e-6);
  EXPECT_NEAR(k.c, 0.325058, 1e-6);
  // Each column a, a, e and c, c, h is a unit vector.
  EXPECT_NEAR(2 * k.a * k.a + k.e * k.e, 1.0, 1e-15);
  EXPECT_NEAR(2 * k.c * k.c + k.h * k.h, 1.0, 1e-15);
}

TEST(Psi0, OrthonormalEigenbasisOfBareTrimer) {
  const ComplexMatrix& p = psi0();
  EXPECT_LT(unitarity_defect(p), 1e-12);
  const auto levels = branch_eigenvalues(SensorKind::KitaevTrimer, 0.0);
  const ComplexMatrix residual = SensorModel(SensorKind::KitaevTrimer).bare_hamiltonian() * p -
                                 p * ComplexMatrix::diagonal(levels);
  EXPECT_LT(residual.max_abs(), 1e-10);
}

TEST(Psi0, ColumnsDiagonalizeTheZCouplingWithinEachLevel) {
  // The b -> 0 limit along z picks the basis in which the coupling is diagonal inside
  // each degenerate level, with first-order shifts equal to the closed-form slopes.
  const ComplexMatrix& p = psi0();
  const ComplexMatrix hz = p.adjoint() *
                           SensorModel(SensorKind::KitaevTrimer).coupling_hamiltonian(Axis::Z) * p;
  const auto at0 = branch_eigenvalues(SensorKind::KitaevTrimer, 0.0);
  const double h = 1e-6;
  const auto up = branch_eigenvalues(SensorKind::KitaevTrimer, h);
  const auto dn = branch_eigenvalues(SensorKind::KitaevTrimer, -h);
  for (std::size_t i = 0; i < 8; ++i) {
    EXPECT_NEAR(hz(i, i).real(), (up[i] - dn[i]) / (2 * h), 1e-8) << i;
    for (std::size_t j = 0; j < 8; ++j)
      if (i != j && std::abs(at0[i] - at0[j]) < 1e-12) {
        EXPECT_LT(std::abs(hz(i, j)), 1e-12);
      }
  }
}

TEST(ReferenceBasis, EveryModelHasLabelledEigenbasis) {
  for (SensorKind kind : {SensorKind::Standard, SensorKind::LandauZener, SensorKind::Dimer,
                          SensorKind::KitaevTrimer}) {
    const ComplexMatrix& basis = reference_basis(kind);
    const auto levels = branch_eigenvalues(kind, 0.0);
    EXPECT_LT(unitarity_defect(basis), 1e-12);
    EXPECT_LT((SensorModel(kind).bare_hamiltonian() * basis - basis * ComplexMatrix::diagonal(levels))
                  .max_abs(),
              1e-12);
  }
}

TEST(RamseyInput, IsNormalizedSuperposition) {
  const ComplexVector phi = ramsey_input_state(SensorKind::KitaevTrimer, kMousetrapPair);
  EXPECT_NEAR(norm(phi), 1.0, 1e-15);
  const ComplexVector coords = psi0().adjoint() * std::span<const Complex>(phi);
  for (std::size_t i = 0; i < 8; ++i)
    EXPECT_NEAR(std::abs(coords[i]), (i == 3 || i == 5) ? 1 / std::sqrt(2.0) : 0.0, 1e-14);
  EXPECT_THROW(ramsey_input_state(SensorKind::Dimer, {4, 6}), Error);
}

TEST(EigenPair, ParseAndValidate) {
  EXPECT_EQ(parse_eigen_pair("4,6"), (EigenPair{4, 6}));
  EXPECT_EQ(parse_eigen_pair("8/6"), (EigenPair{8, 6}));
  for (const char* bad : {"4", "a,6", "4,6x", ""}) EXPECT_THROW(parse_eigen_pair(bad), Error) << bad;
  EXPECT_NO_THROW(validate_pair(SensorKind::KitaevTrimer, {1, 8}));
  EXPECT_THROW(validate_pair(SensorKind::KitaevTrimer, {4, 4}), Error);
  EXPECT_THROW(validate_pair(SensorKind::KitaevTrimer, {0, 4}), Error);
  EXPECT_THROW(validate_pair(SensorKind::Standard, {1, 3}), Error);
}

TEST(Orientation, CardinalAxesOnly) {
  const Waveform w = preset_waveform("fig2", 1.0);
  EXPECT_EQ(closed_form_orientation(SensorKind::KitaevTrimer, w), 1.0);
  EXPECT_EQ(closed_form_orientation(SensorKind::KitaevTrimer, w.with_direction({0, -1, 0})), -1.0);
  EXPECT_THROW(closed_form_orientation(SensorKind::KitaevTrimer, w.with_direction({0.6, 0, 0.8})),
               Error);
  EXPECT_EQ(closed_form_orientation(SensorKind::Dimer, w.with_direction(kAxisX)), 1.0);
  EXPECT_THROW(closed_form_orientation(SensorKind::Dimer, w), Error);
}

TEST(ChiExact, DegeneratePairWithoutFieldIsZero) {
  const Waveform w(Constant{0.0}, kAxisZ, {0, 9});
  EXPECT_EQ(chi_exact(SensorKind::KitaevTrimer, kMousetrapPair, w), 0.0);
  EXPECT_EQ(chi_exact(SensorKind::KitaevTrimer, {1, 5}, w), 0.0);
}

TEST(ChiExact, UnitFieldMousetrapPairAccruesWindowLength) {
  const Waveform w(Constant{1.0}, kAxisZ, {0, 6.5});
  EXPECT_NEAR(chi_exact(SensorKind::KitaevTrimer, kMousetrapPair, w), 6.5, 1e-12);
}

TEST(ChiExact, StandardPairIsTheFirstMoment) {
  // (l4 - l2)/2 = b exactly, so the phase is the integral of b.
  const Waveform w = preset_waveform("fig2", 0.9).with_window({-15, 6});
  EXPECT_NEAR(chi_exact(SensorKind::KitaevTrimer, kStandardPair, w), integrate_moment(w, 1),
              1e-9);
  const Waveform lin(Constant{0.4}, kAxisZ, {0, 2});
  EXPECT_NEAR(chi_exact(SensorKind::KitaevTrimer, kStandardPair, lin), 0.8, 1e-12);
}

TEST(ChiExact, ReversedPairNegates) {
  const Waveform w = preset_waveform("fig2", 1.2);
  EXPECT_NEAR(chi_exact(SensorKind::KitaevTrimer, {6, 4}, w),
              -chi_exact(SensorKind::KitaevTrimer, kMousetrapPair, w), 1e-12);
}

TEST(ChiExact, AgreesWithTrackedPhaseOfTimeEvolution) {
  const SensorModel m(SensorKind::KitaevTrimer);
  const Waveform w = preset_waveform("fig2", 1.0);
  const auto r = evolve(m, w, make_grid(w.window(), 4096), kMousetrapPair, 4096);
  EXPECT_NEAR(r.accumulated_phase.back(), chi_exact(SensorKind::KitaevTrimer, kMousetrapPair, w),
              1e-6);
}

double series_value(const SeriesTable& t, double b, int order) {
  double v = 0.0;
  for (int i = 1; i <= order; ++i) v += t.coefficients[i] * std::pow(b, i);
  return v;
}

TEST(Series, KnownLowOrderCoefficients) {
  const auto mt = series_table(kMousetrapPair);
  EXPECT_NEAR(mt.coefficients[1], 1.577350, 1e-6);
  EXPECT_NEAR(mt.coefficients[2], -0.384900, 1e-6);
  EXPECT_NEAR(series_table(kSkewPair).coefficients[3], -0.513200, 1e-6);
  EXPECT_EQ(series_table(kStandardPair).coefficients[1], 1.0);
  EXPECT_EQ(series_table({6, 4}).coefficients[1], -mt.coefficients[1]);
  EXPECT_THROW(series_table({1, 2}), Error);
}

TEST(Series, CoefficientsMatchHalfGapToSixthOrder) {
  // Oracle: the truncation residual of a correct degree-5 expansion is O(b^6).
  for (const auto& t : series_tables()) {
    double prev_ratio = 0.0;
    for (double b : {0.02, 0.01, 0.005}) {
      const double residual =
          half_gap(SensorKind::KitaevTrimer, t.pair, b) - series_value(t, b, kMaxSeriesOrder);
      const double ratio = residual / std::pow(b, 6);
      EXPECT_LT(std::abs(ratio), 5.0) << t.name << " b=" << b;
      if (prev_ratio != 0.0) {
        EXPECT_NEAR(ratio, prev_ratio, 0.1 * std::abs(prev_ratio) + 0.05) << t.name;
      }
      prev_ratio = ratio;
    }
  }
}

TEST(Series, TruncationErrorScalesWithTheNextPower) {
  // The preset signal is odd on its symmetric window, so odd moments vanish and an order-2
  // truncation leaves a quartic remainder.
  const Waveform unit = preset_waveform("fig2", 1.0);
  std::vector<double> xs, ys;
  for (double eps : {0.05, 0.1, 0.15, 0.2, 0.25, 0.3}) {
    const Waveform w = unit.scaled(eps);
    const double err = std::abs(chi_exact(SensorKind::KitaevTrimer, kMousetrapPair, w) -
                                chi_series(kMousetrapPair, w, 2));
    xs.push_back(std::log(eps));
    ys.push_back(std::log(err));
  }
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  EXPECT_NEAR(slope, 4.0, 0.2);
}

TEST(Series, SignFlipSeparatesOddAndEvenParts) {
  // Small amplitude: the sixth-order remainder is below the tolerance.
  const Waveform w = preset_waveform("fig2", 0.1).with_window({-15, 7.5});
  const Waveform flipped = w.with_direction({0, 0, -1});
  const double plus = chi_exact(SensorKind::KitaevTrimer, kMousetrapPair, w);
  const double minus = chi_exact(SensorKind::KitaevTrimer, kMousetrapPair, flipped);
  const auto t = series_table(kMousetrapPair);
  double odd = 0.0, even = 0.0;
  for (int i = 1; i <= kMaxSeriesOrder; ++i)
    (i % 2 ? odd : even) += t.coefficients[i] * integrate_moment(w, i);
  EXPECT_NEAR(plus - minus, 2 * odd, 1e-7);
  EXPECT_NEAR(plus + minus, 2 * even, 1e-7);
  // The degree-5 expansion covers the flipped signal too.
  EXPECT_NEAR(chi_series(kMousetrapPair, flipped, 5), minus, 1e-7);
}

TEST(Series, RejectsBadOrderAndDirection) {
  const Waveform w = preset_waveform("fig2", 0.2);
  EXPECT_THROW(chi_series(kMousetrapPair, w, 0), Error);
  EXPECT_THROW(chi_series(kMousetrapPair, w, 6), Error);
  EXPECT_THROW(chi_series(kMousetrapPair, w.with_direction({0.6, 0.8, 0}), 2), Error);
}

TEST(Series, JsonDumpListsEveryTable) {
  const auto j = series_tables_json();
  ASSERT_EQ(j.size(), series_tables().size());
  EXPECT_EQ(j[1]["name"], "mousetrap");
  EXPECT_EQ(j[1]["pair"][0], 4);
  EXPECT_DOUBLE_EQ(j[1]["coefficients"]["1"].get<double>(), 1.0 + 1.0 / kS3);
}

}  // namespace
}  // namespace mousetrap
