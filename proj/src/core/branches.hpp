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
#pragma once

#include <memory>
#include <vector>

#include "linalg.hpp"
#include "model.hpp"

namespace mousetrap {

/// Labelled eigen-branches of H0 + b H1 along a model's reference axis.
///
/// Labels are fixed at b = 0 by overlap with the zero-field reference basis and then
/// continued outward in b on a fine grid: eigenvalues by linear prediction plus sorted
/// assignment, eigenvectors by parallel transport. Labelling in b rather than in time
/// keeps the labels independent of the waveform and of the time step.
class BranchTable {
 public:
  struct Sample {
    std::vector<double> eigenvalues;  ///< labelled order, index j holds l_{j+1}
    ComplexMatrix eigenvectors;       ///< column j for label j; empty if not requested
  };

  BranchTable(SensorKind kind, double reach);

  SensorKind kind() const noexcept { return kind_; }
  double reach() const noexcept { return reach_; }
  double spacing() const noexcept { return spacing_; }

  /// Diagonalizes H(b) and labels the result.
  Sample at(double b, bool want_vectors) const;
  /// Labels an existing decomposition of H(b).
  Sample label(double b, const HermitianEig& eig, bool want_vectors) const;

 private:
  const std::vector<double>& node_values(long k) const;
  const ComplexMatrix& node_vectors(long k) const;

  SensorKind kind_;
  SensorModel model_;
  double reach_;
  double spacing_;
  long half_count_;
  std::vector<std::vector<double>> values_;  // node k stored at k + half_count_
  std::vector<ComplexMatrix> vectors_;
};

/// Shared, lazily built table covering at least |b| <= reach.
std::shared_ptr<const BranchTable> branch_table(SensorKind kind, double reach);

/// Groups ascending eigenvalues into runs closer than tol * max(1, |l|).
std::vector<std::pair<std::size_t, std::size_t>> eigen_clusters(
    const std::vector<double>& ascending, double tol);

}  // namespace mousetrap
