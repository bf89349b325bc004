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
#include <random>

#include "branches.hpp"
#include "error.hpp"
#include "spectrum.hpp"

namespace mousetrap {
namespace {

const SensorKind kAllKinds[] = {SensorKind::Standard, SensorKind::LandauZener, SensorKind::Dimer,
                                SensorKind::KitaevTrimer};

ComplexMatrix field_hamiltonian(const SensorModel& m, double b) {
  FieldVector f;
  (m.reference_axis() == Axis::Z ? f.bz : f.bx) = b;
  return m.hamiltonian_at(f);
}

TEST(BranchTable, LabelsFollowClosedFormsAcrossTheRange) {
  // Includes the exact level crossings of the trimer at |b| = 1.
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> pick(-2, 2);
  for (SensorKind kind : kAllKinds) {
    const auto table = branch_table(kind, 2.0);
    std::vector<double> bs{0.0, 1.0, -1.0, 0.5, -0.5, 2.0, -2.0};
    for (int i = 0; i < 300; ++i) bs.push_back(pick(rng));
    for (double b : bs) {
      const auto got = table->at(b, false).eigenvalues;
      const auto want = branch_eigenvalues(kind, b);
      for (std::size_t j = 0; j < want.size(); ++j)
        ASSERT_NEAR(got[j], want[j], 1e-10) << sensor_kind_name(kind) << " b=" << b << " j=" << j;
    }
  }
}

TEST(BranchTable, VectorsAreLabelledOrthonormalEigenvectors) {
  for (SensorKind kind : kAllKinds) {
    const SensorModel m(kind);
    const auto table = branch_table(kind, 2.0);
    for (double b : {-1.7, -1.0, -0.3, 0.01, 0.42, 1.0, 1.9}) {
      const auto s = table->at(b, true);
      EXPECT_LT(unitarity_defect(s.eigenvectors), 1e-10);
      const ComplexMatrix residual = field_hamiltonian(m, b) * s.eigenvectors -
                                     s.eigenvectors * ComplexMatrix::diagonal(s.eigenvalues);
      EXPECT_LT(residual.max_abs(), 1e-9) << sensor_kind_name(kind) << " b=" << b;
    }
  }
}

TEST(BranchTable, ZeroFieldReturnsReferenceBasis) {
  for (SensorKind kind : kAllKinds) {
    const auto s = branch_table(kind, 2.0)->at(0.0, true);
    EXPECT_LT((s.eigenvectors - reference_basis(kind)).max_abs(), 1e-12) << sensor_kind_name(kind);
  }
}

TEST(BranchTable, VectorsVaryContinuouslyAwayFromCrossings) {
  const auto table = branch_table(SensorKind::KitaevTrimer, 2.0);
  for (double b : {-0.8, -0.2, 0.05, 0.3, 0.7, 1.4}) {
    const auto a = table->at(b, true), c = table->at(b + 1e-4, true);
    for (std::size_t j = 0; j < 8; ++j) {
      const double overlap = std::abs(inner(a.eigenvectors.column(j), c.eigenvectors.column(j)));
      EXPECT_GT(overlap, 1.0 - 1e-6) << "b=" << b << " label=" << j;
    }
  }
}

TEST(BranchTable, LabelOfExternalDecompositionMatchesAt) {
  const auto table = branch_table(SensorKind::KitaevTrimer, 2.0);
  const SensorModel m(SensorKind::KitaevTrimer);
  const double b = 0.731;
  const auto direct = table->at(b, true);
  const auto relabel = table->label(b, hermitian_eig(field_hamiltonian(m, b)), true);
  EXPECT_EQ(direct.eigenvalues, relabel.eigenvalues);
  EXPECT_EQ(direct.eigenvectors, relabel.eigenvectors);
  EXPECT_TRUE(table->label(b, hermitian_eig(field_hamiltonian(m, b)), false).eigenvectors.dim() == 0);
}

TEST(BranchTable, RejectsQueriesBeyondReach) {
  const BranchTable t(SensorKind::LandauZener, 0.5);
  EXPECT_GE(t.reach(), 0.5);
  try {
    t.at(0.75, false);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Numerical);
  }
  EXPECT_THROW(BranchTable(SensorKind::Dimer, -1.0), Error);
}

TEST(BranchTable, SharedCacheGrowsWithoutChangingResults) {
  const auto small = branch_table(SensorKind::Dimer, 1.0);
  const auto before = small->at(0.9, true);
  const auto big = branch_table(SensorKind::Dimer, small->reach() * 3);
  EXPECT_GE(big->reach(), small->reach() * 3);
  EXPECT_EQ(branch_table(SensorKind::Dimer, 0.1), big);
  const auto after = big->at(0.9, true);
  EXPECT_EQ(before.eigenvalues, after.eigenvalues);
  EXPECT_EQ(before.eigenvectors, after.eigenvectors);
}

TEST(EigenClusters, GroupsNearEqualValues) {
  const auto c = eigen_clusters({-2.0, -2.0 + 1e-12, 0.5, 3.0, 3.0, 3.0}, 1e-8);
  ASSERT_EQ(c.size(), 3u);
  EXPECT_EQ(c[0], (std::pair<std::size_t, std::size_t>{0, 2}));
  EXPECT_EQ(c[1], (std::pair<std::size_t, std::size_t>{2, 3}));
  EXPECT_EQ(c[2], (std::pair<std::size_t, std::size_t>{3, 6}));
  EXPECT_TRUE(eigen_clusters({}, 1e-8).empty());
}

}  // namespace
}  // namespace mousetrap
