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
#include "branches.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "error.hpp"
#include "spectrum.hpp"

namespace mousetrap {

namespace {

// Non-dyadic so grid nodes never land on the exact crossings at |b| = 1.
constexpr double kNodeSpacing = 1.0 / 517.3;
constexpr double kClusterTolerance = 1e-8;

// Labels ordered by prediction; ties broken by label index.
std::vector<std::size_t> order_by_prediction(const std::vector<double>& prediction) {
  std::vector<std::size_t> labels(prediction.size());
  std::iota(labels.begin(), labels.end(), 0);
  std::stable_sort(labels.begin(), labels.end(), [&](std::size_t x, std::size_t y) {
    return prediction[x] < prediction[y];
  });
  return labels;
}

// Y (Y^+ Y)^{-1/2}: the orthonormal frame closest to the columns of Y.
ComplexMatrix lowdin(const std::vector<ComplexVector>& cols, std::size_t dim) {
  const std::size_t m = cols.size();
  ComplexMatrix gram(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) gram(i, j) = inner(cols[i], cols[j]);
  const HermitianEig g = hermitian_eig(gram);
  if (g.eigenvalues.front() < 0.25) {
    std::ostringstream os;
    os << "eigenvector tracking lost its reference (overlap Gram minimum "
       << g.eigenvalues.front() << "); irrecoverable permutation ambiguity";
    fail_numerical(os.str());
  }
  ComplexMatrix inv_sqrt(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      Complex acc{};
      for (std::size_t k = 0; k < m; ++k)
        acc += g.eigenvectors(i, k) * std::conj(g.eigenvectors(j, k)) / std::sqrt(g.eigenvalues[k]);
      inv_sqrt(i, j) = acc;
    }
  ComplexMatrix out(dim);  // only the first m columns are used
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t j = 0; j < m; ++j) {
      Complex acc{};
      for (std::size_t k = 0; k < m; ++k) acc += cols[k][r] * inv_sqrt(k, j);
      out(r, j) = acc;
    }
  return out;
}

// Assigns ascending numeric eigenvalues to labels in prediction order, then transports
// the reference vectors into each numeric eigenspace cluster.
BranchTable::Sample assign(const HermitianEig& eig, const std::vector<double>& prediction,
                           const ComplexMatrix* reference) {
  const std::size_t n = eig.eigenvalues.size();
  const auto labels = order_by_prediction(prediction);
  BranchTable::Sample out{std::vector<double>(n), {}};
  for (std::size_t i = 0; i < n; ++i) out.eigenvalues[labels[i]] = eig.eigenvalues[i];
  if (reference == nullptr) return out;

  out.eigenvectors = ComplexMatrix(n);
  for (const auto& [lo, hi] : eigen_clusters(eig.eigenvalues, kClusterTolerance)) {
    std::vector<ComplexVector> projected;
    for (std::size_t i = lo; i < hi; ++i) {
      const ComplexVector ref = reference->column(labels[i]);
      ComplexVector y(n);
      for (std::size_t c = lo; c < hi; ++c) {
        const ComplexVector e = eig.eigenvectors.column(c);
        const Complex amp = inner(e, ref);
        for (std::size_t r = 0; r < n; ++r) y[r] += amp * e[r];
      }
      projected.push_back(std::move(y));
    }
    const ComplexMatrix frame = lowdin(projected, n);
    for (std::size_t i = lo; i < hi; ++i)
      for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, labels[i]) = frame(r, i - lo);
  }
  return out;
}

}  // namespace

std::vector<std::pair<std::size_t, std::size_t>> eigen_clusters(
    const std::vector<double>& ascending, double tol) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::size_t lo = 0;
  for (std::size_t i = 1; i <= ascending.size(); ++i) {
    if (i == ascending.size() ||
        ascending[i] - ascending[i - 1] > tol * std::max(1.0, std::abs(ascending[i]))) {
      out.emplace_back(lo, i);
      lo = i;
    }
  }
  return out;
}

BranchTable::BranchTable(SensorKind kind, double reach)
    : kind_(kind), model_(kind), reach_(reach), spacing_(kNodeSpacing) {
  if (!(reach > 0.0) || !std::isfinite(reach)) fail_validation("branch table reach must be positive");
  half_count_ = static_cast<long>(std::ceil(reach / spacing_)) + 2;
  values_.resize(2 * half_count_ + 1);
  vectors_.resize(2 * half_count_ + 1);

  const ComplexMatrix& basis = reference_basis(kind);
  const std::size_t n = basis.dim();
  const auto& axis = model_.reference_axis();
  std::array<double, 3> direction{};
  direction[static_cast<int>(axis)] = 1.0;

  // b = 0: the reference basis itself.
  {
    const ComplexMatrix h0 = basis.adjoint() * model_.bare_hamiltonian() * basis;
    std::vector<double> diag(n);
    for (std::size_t j = 0; j < n; ++j) diag[j] = h0(j, j).real();
    values_[half_count_] = diag;
    vectors_[half_count_] = basis;
  }

  ComplexMatrix h(n);
  for (const int side : {1, -1}) {
    for (long step = 1; step <= half_count_; ++step) {
      const long k = side * step;
      const double b = static_cast<double>(k) * spacing_;
      model_.hamiltonian_into(b, direction, h);
      const HermitianEig eig = hermitian_eig(h);
      Sample sample;
      if (step == 1) {
        // Pin labels by overlap with the reference basis.
        std::vector<double> prediction(n);
        std::vector<bool> taken(n, false);
        for (std::size_t i = 0; i < n; ++i) {
          const ComplexVector v = eig.eigenvectors.column(i);
          std::size_t best = n;
          for (std::size_t j = 0; j < n; ++j)
            if (std::norm(inner(basis.column(j), v)) > 0.5) best = j;
          if (best == n || taken[best]) {
            std::ostringstream os;
            os << "labelling at b = " << b << " for model '" << sensor_kind_name(kind)
               << "': eigenvector " << i << " has no dominant reference overlap;"
               << " irrecoverable permutation ambiguity";
            fail_numerical(os.str());
          }
          taken[best] = true;
          prediction[best] = static_cast<double>(i);
        }
        sample = assign(eig, prediction, &basis);
      } else {
        const auto& prev = values_[k - side + half_count_];
        const auto& prev2 = values_[k - 2 * side + half_count_];
        std::vector<double> prediction(n);
        for (std::size_t j = 0; j < n; ++j) prediction[j] = 2.0 * prev[j] - prev2[j];
        sample = assign(eig, prediction, &vectors_[k - side + half_count_]);
      }
      values_[k + half_count_] = std::move(sample.eigenvalues);
      vectors_[k + half_count_] = std::move(sample.eigenvectors);
    }
  }
}

const std::vector<double>& BranchTable::node_values(long k) const {
  return values_[k + half_count_];
}

const ComplexMatrix& BranchTable::node_vectors(long k) const {
  return vectors_[k + half_count_];
}

BranchTable::Sample BranchTable::label(double b, const HermitianEig& eig,
                                       bool want_vectors) const {
  if (!(std::abs(b) <= reach_)) {
    std::ostringstream os;
    os << "field amplitude " << b << " outside the tracked range |b| <= " << reach_;
    fail_numerical(os.str());
  }
  const double x = b / spacing_;
  const long lo = static_cast<long>(std::floor(x));
  const double w = x - static_cast<double>(lo);
  const auto& v0 = node_values(lo);
  const auto& v1 = node_values(lo + 1);
  std::vector<double> prediction(v0.size());
  for (std::size_t j = 0; j < v0.size(); ++j) prediction[j] = (1.0 - w) * v0[j] + w * v1[j];
  const long nearest = w < 0.5 ? lo : lo + 1;
  return assign(eig, prediction, want_vectors ? &node_vectors(nearest) : nullptr);
}

BranchTable::Sample BranchTable::at(double b, bool want_vectors) const {
  std::array<double, 3> direction{};
  direction[static_cast<int>(model_.reference_axis())] = 1.0;
  ComplexMatrix h(model_.dim());
  model_.hamiltonian_into(b, direction, h);
  return label(b, hermitian_eig(h), want_vectors);
}

std::shared_ptr<const BranchTable> branch_table(SensorKind kind, double reach) {
  static std::mutex mutex;
  static std::map<SensorKind, std::shared_ptr<const BranchTable>> cache;
  const std::lock_guard lock(mutex);
  auto& slot = cache[kind];
  if (!slot || slot->reach() < reach) {
    // Nodes do not depend on the reach, so regrowing never changes earlier results.
    slot = std::make_shared<const BranchTable>(kind, std::max({reach * 1.25, 2.5,
                                                               slot ? slot->reach() * 2 : 0.0}));
  }
  return slot;
}

}  // namespace mousetrap
