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
#include "linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "error.hpp"
#include "tolerances.hpp"

namespace mousetrap {

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::from_real(std::size_t dim, std::span<const double> row_major) {
  if (row_major.size() != dim * dim) fail_validation("from_real: entry count is not dim*dim");
  ComplexMatrix m(dim);
  std::copy(row_major.begin(), row_major.end(), m.data_.begin());
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

ComplexVector ComplexMatrix::column(std::size_t col) const {
  ComplexVector out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) out[i] = (*this)(i, col);
  return out;
}

void ComplexMatrix::set_column(std::size_t col, std::span<const Complex> values) {
  if (values.size() != dim_) fail_validation("set_column: dimension mismatch");
  for (std::size_t i = 0; i < dim_; ++i) (*this)(i, col) = values[i];
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  if (other.dim_ != dim_) fail_validation("matrix sum: dimension mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  if (other.dim_ != dim_) fail_validation("matrix difference: dimension mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
  for (auto& x : data_) x *= scale;
  return *this;
}

double ComplexMatrix::hermitian_asymmetry() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i; j < dim_; ++j)
      worst = std::max(worst, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
  return worst;
}

double ComplexMatrix::max_abs() const {
  double worst = 0.0;
  for (const auto& x : data_) worst = std::max(worst, std::abs(x));
  return worst;
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
ComplexMatrix operator*(Complex scale, ComplexMatrix m) { return m *= scale; }

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  const std::size_t n = lhs.dim();
  if (rhs.dim() != n) fail_validation("matrix product: dimension mismatch");
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const Complex a = lhs(i, k);
      if (a == Complex{}) continue;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += a * rhs(k, j);
    }
  return out;
}

ComplexVector operator*(const ComplexMatrix& m, std::span<const Complex> v) {
  const std::size_t n = m.dim();
  if (v.size() != n) fail_validation("matrix-vector product: dimension mismatch");
  ComplexVector out(n);
  for (std::size_t i = 0; i < n; ++i) {
    Complex acc{};
    for (std::size_t j = 0; j < n; ++j) acc += m(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t na = a.dim(), nb = b.dim();
  ComplexMatrix out(na * nb);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j) {
      const Complex aij = a(i, j);
      if (aij == Complex{}) continue;
      for (std::size_t k = 0; k < nb; ++k)
        for (std::size_t l = 0; l < nb; ++l) out(i * nb + k, j * nb + l) = aij * b(k, l);
    }
  return out;
}

Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) fail_validation("inner product: dimension mismatch");
  Complex acc{};
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

double norm(std::span<const Complex> v) {
  double acc = 0.0;
  for (const auto& x : v) acc += std::norm(x);
  return std::sqrt(acc);
}

double unitarity_defect(const ComplexMatrix& u) {
  const ComplexMatrix g = u.adjoint() * u;
  return (g - ComplexMatrix::identity(u.dim())).max_abs();
}

namespace {

double conj_of(double x) { return x; }
Complex conj_of(Complex x) { return std::conj(x); }
double real_of(double x) { return x; }
double real_of(Complex x) { return x.real(); }
double sq_abs(double x) { return x * x; }
double sq_abs(Complex x) { return std::norm(x); }

// Cyclic Jacobi on a dense row-major Hermitian buffer. Each rotation acts on (p, q) with
//   J = [[c, s], [-s conj(u), c conj(u)]],  u = a_pq / |a_pq|,
// applied as A <- J^+ A J and V <- V J. T is double for real symmetric input.
template <typename T>
bool jacobi_sweeps(std::size_t n, std::vector<T>& a, std::vector<T>& v) {
  auto at = [n](std::vector<T>& m, std::size_t i, std::size_t j) -> T& { return m[i * n + j]; };
  auto off_sq = [&] {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += sq_abs(a[p * n + q]);
    return off;
  };
  double frob_sq = 0.0;
  for (const T& x : a) frob_sq += sq_abs(x);

  for (int sweep = 0; sweep < tol::kJacobiMaxSweeps; ++sweep) {
    const double off = off_sq();
    if (off == 0.0 || off <= 1e-32 * frob_sq) return true;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const T apq = at(a, p, q);
        const double mag = std::sqrt(sq_abs(apq));
        if (mag == 0.0) continue;
        const double app = real_of(at(a, p, p)), aqq = real_of(at(a, q, q));
        if (mag < 1e-18 * (std::abs(app) + std::abs(aqq))) {
          at(a, p, q) = at(a, q, p) = T{};
          continue;
        }
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = std::abs(theta) > 1e150
                             ? 0.5 / theta
                             : (theta >= 0.0 ? 1.0 : -1.0) /
                                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const T uc = conj_of(apq) / mag;  // conj(u)
        const T qp = -s * uc, qq = c * uc;
        // columns of A
        for (std::size_t k = 0; k < n; ++k) {
          const T mkp = at(a, k, p), mkq = at(a, k, q);
          at(a, k, p) = c * mkp + mkq * qp;
          at(a, k, q) = s * mkp + mkq * qq;
        }
        // rows of A
        const T qpc = conj_of(qp), qqc = conj_of(qq);
        for (std::size_t k = 0; k < n; ++k) {
          const T mpk = at(a, p, k), mqk = at(a, q, k);
          at(a, p, k) = c * mpk + qpc * mqk;
          at(a, q, k) = s * mpk + qqc * mqk;
        }
        at(a, p, q) = at(a, q, p) = T{};
        at(a, p, p) = app - t * mag;
        at(a, q, q) = aqq + t * mag;
        for (std::size_t k = 0; k < n; ++k) {
          const T vkp = at(v, k, p), vkq = at(v, k, q);
          at(v, k, p) = c * vkp + vkq * qp;
          at(v, k, q) = s * vkp + vkq * qq;
        }
      }
    }
  }
  return off_sq() <= 1e-28 * frob_sq;
}

template <typename T>
HermitianEig finish_eig(std::size_t n, const std::vector<T>& a, const std::vector<T>& v) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return real_of(a[x * n + x]) < real_of(a[y * n + y]);
  });

  HermitianEig out{std::vector<double>(n), ComplexMatrix(n)};
  for (std::size_t jdx = 0; jdx < n; ++jdx) {
    const std::size_t src = order[jdx];
    out.eigenvalues[jdx] = real_of(a[src * n + src]);
    double biggest = 0.0;
    for (std::size_t i = 0; i < n; ++i) biggest = std::max(biggest, std::abs(v[i * n + src]));
    std::size_t pivot = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (std::abs(v[i * n + src]) >= biggest * (1.0 - 1e-9)) {
        pivot = i;
        break;
      }
    }
    // Largest component real positive.
    const Complex lead = v[pivot * n + src];
    const Complex fix = std::conj(lead) / std::abs(lead);
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, jdx) = Complex(v[i * n + src]) * fix;
    out.eigenvectors(pivot, jdx) = std::abs(lead);
  }
  return out;
}

template <typename T>
HermitianEig solve(std::size_t n, std::vector<T> a) {
  std::vector<T> v(n * n, T{});
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = T{1};
  if (!jacobi_sweeps(n, a, v)) fail_numerical("hermitian_eig: Jacobi sweeps did not converge");
  return finish_eig(n, a, v);
}

}  // namespace

HermitianEig hermitian_eig(const ComplexMatrix& m) {
  const std::size_t n = m.dim();
  if (n == 0) fail_validation("hermitian_eig: empty matrix");
  const double asym = m.hermitian_asymmetry();
  if (!(asym < tol::kHermitian)) {
    std::ostringstream os;
    os << "hermitian_eig: matrix is not Hermitian (max asymmetry " << asym << ")";
    fail_validation(os.str());
  }

  bool real = true;
  for (const Complex& x : m.data()) real = real && x.imag() == 0.0;

  // Work on the exactly Hermitian part.
  if (real) {
    std::vector<double> a(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i * n + i] = m(i, i).real();
      for (std::size_t j = i + 1; j < n; ++j)
        a[i * n + j] = a[j * n + i] = 0.5 * (m(i, j).real() + m(j, i).real());
    }
    return solve(n, std::move(a));
  }
  std::vector<Complex> a(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i * n + i] = m(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex x = 0.5 * (m(i, j) + std::conj(m(j, i)));
      a[i * n + j] = x;
      a[j * n + i] = std::conj(x);
    }
  }
  return solve(n, std::move(a));
}

ComplexMatrix expm_unitary(const HermitianEig& eig, double dt) {
  const std::size_t n = eig.eigenvalues.size();
  ComplexVector phase(n);
  for (std::size_t k = 0; k < n; ++k) phase[k] = std::polar(1.0, -dt * eig.eigenvalues[k]);
  const ComplexMatrix& vec = eig.eigenvectors;
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Complex acc{};
      for (std::size_t k = 0; k < n; ++k) acc += vec(i, k) * phase[k] * std::conj(vec(j, k));
      out(i, j) = acc;
    }
  return out;
}

ComplexMatrix expm_unitary(const ComplexMatrix& m, double dt) {
  if (!std::isfinite(dt)) fail_validation("expm_unitary: time step is not finite");
  return expm_unitary(hermitian_eig(m), dt);
}

void apply_expm(const ComplexMatrix& m, double dt, ComplexVector& psi) {
  const std::size_t n = m.dim();
  if (psi.size() != n) fail_validation("apply_expm: state dimension does not match operator");
  if (!std::isfinite(dt)) fail_validation("apply_expm: time step is not finite");
  double norm1 = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < n; ++i) col += std::abs(m(i, j));
    norm1 = std::max(norm1, col);
  }
  const int pieces = std::max(1, static_cast<int>(std::ceil(norm1 * std::abs(dt))));
  const double h = dt / pieces;
  ComplexVector term(n), next(n);
  for (int piece = 0; piece < pieces; ++piece) {
    term = psi;
    for (int k = 1; k <= 40; ++k) {
      const Complex scale(0.0, -h / k);
      double size = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        Complex acc{};
        const Complex* row = &m(i, 0);
        for (std::size_t j = 0; j < n; ++j) acc += row[j] * term[j];
        next[i] = scale * acc;
        size += std::norm(next[i]);
      }
      for (std::size_t i = 0; i < n; ++i) psi[i] += next[i];
      term.swap(next);
      if (size < 1e-36) break;
    }
  }
}

double state_fidelity(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) {
    std::ostringstream os;
    os << "state_fidelity: dimension mismatch (" << a.size() << " vs " << b.size() << ")";
    fail_validation(os.str());
  }
  if (std::abs(norm(a) - 1.0) > tol::kNormalized || std::abs(norm(b) - 1.0) > tol::kNormalized)
    fail_validation("state_fidelity: states must be normalized");
  return std::clamp(std::norm(inner(a, b)), 0.0, 1.0);
}

}  // namespace mousetrap
