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

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace mousetrap {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// Dense square complex matrix, row-major.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const double> values);
  /// Builds from row-major real entries; size must be a perfect square.
  static ComplexMatrix from_real(std::size_t dim, std::span<const double> row_major);

  std::size_t dim() const noexcept { return dim_; }

  Complex& operator()(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }
  const Complex& operator()(std::size_t row, std::size_t col) const {
    return data_[row * dim_ + col];
  }

  std::span<const Complex> data() const noexcept { return data_; }

  ComplexMatrix adjoint() const;
  ComplexVector column(std::size_t col) const;
  void set_column(std::size_t col, std::span<const Complex> values);

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scale);

  /// Largest |M_ij - conj(M_ji)|.
  double hermitian_asymmetry() const;
  double max_abs() const;

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t dim_ = 0;
  ComplexVector data_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(Complex scale, ComplexMatrix m);
ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);
ComplexVector operator*(const ComplexMatrix& m, std::span<const Complex> v);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

Complex inner(std::span<const Complex> a, std::span<const Complex> b);  // <a|b>
double norm(std::span<const Complex> v);

/// ||U^+ U - I||_max
double unitarity_defect(const ComplexMatrix& u);

/// Spectral decomposition of a Hermitian matrix. Eigenvalues ascending; column j of
/// `eigenvectors` belongs to eigenvalues[j].
struct HermitianEig {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;
};

/// Cyclic complex Jacobi. Each eigenvector's first largest-magnitude component is made
/// real and positive. Throws Error(Validation) if M is not Hermitian within tolerance.
HermitianEig hermitian_eig(const ComplexMatrix& m);

/// exp(-i dt M) for Hermitian M, built from its eigendecomposition.
ComplexMatrix expm_unitary(const ComplexMatrix& m, double dt);
/// Same, reusing a decomposition the caller already has.
ComplexMatrix expm_unitary(const HermitianEig& eig, double dt);

/// psi <- exp(-i dt M) psi by a Taylor series summed to roundoff (sub-stepped so that
/// |M|_1 dt <= 1). State-only counterpart of expm_unitary for large or many-step runs.
void apply_expm(const ComplexMatrix& m, double dt, ComplexVector& psi);

/// |<a|b>|^2 for normalized states.
double state_fidelity(std::span<const Complex> a, std::span<const Complex> b);

}  // namespace mousetrap
