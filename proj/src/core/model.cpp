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
#include "model.hpp"

#include <cmath>
#include <sstream>

#include "error.hpp"

namespace mousetrap {

SensorKind parse_sensor_kind(std::string_view name) {
  if (name == "standard") return SensorKind::Standard;
  if (name == "landau-zener") return SensorKind::LandauZener;
  if (name == "dimer") return SensorKind::Dimer;
  if (name == "trimer") return SensorKind::KitaevTrimer;
  fail_validation("unknown model '" + std::string(name) +
                  "' (expected standard, landau-zener, dimer or trimer)");
}

std::string_view sensor_kind_name(SensorKind kind) {
  switch (kind) {
    case SensorKind::Standard: return "standard";
    case SensorKind::LandauZener: return "landau-zener";
    case SensorKind::Dimer: return "dimer";
    case SensorKind::KitaevTrimer: return "trimer";
  }
  return "unknown";
}

double FieldVector::operator[](Axis axis) const {
  switch (axis) {
    case Axis::X: return bx;
    case Axis::Y: return by;
    case Axis::Z: return bz;
  }
  return 0.0;
}

namespace pauli {

const ComplexMatrix& identity() {
  static const ComplexMatrix m = ComplexMatrix::identity(2);
  return m;
}

const ComplexMatrix& x() {
  static const ComplexMatrix m = [] {
    ComplexMatrix p(2);
    p(0, 1) = p(1, 0) = 1.0;
    return p;
  }();
  return m;
}

const ComplexMatrix& y() {
  static const ComplexMatrix m = [] {
    ComplexMatrix p(2);
    p(0, 1) = Complex(0.0, -1.0);
    p(1, 0) = Complex(0.0, 1.0);
    return p;
  }();
  return m;
}

const ComplexMatrix& z() {
  static const ComplexMatrix m = [] {
    ComplexMatrix p(2);
    p(0, 0) = 1.0;
    p(1, 1) = -1.0;
    return p;
  }();
  return m;
}

const ComplexMatrix& of(Axis axis) {
  switch (axis) {
    case Axis::X: return x();
    case Axis::Y: return y();
    case Axis::Z: return z();
  }
  return identity();
}

}  // namespace pauli

namespace {

const ComplexMatrix& I2() { return pauli::identity(); }

ComplexMatrix kron3(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c) {
  return kron(kron(a, b), c);
}

// Sum over qubits of the single-site Pauli along the axis.
ComplexMatrix collective(Axis axis, std::size_t qubits) {
  const ComplexMatrix& p = pauli::of(axis);
  if (qubits == 2) return kron(p, I2()) + kron(I2(), p);
  return kron3(p, I2(), I2()) + kron3(I2(), p, I2()) + kron3(I2(), I2(), p);
}

}  // namespace

SensorModel::SensorModel(SensorKind kind) : kind_(kind) {
  using namespace pauli;
  switch (kind) {
    case SensorKind::Standard:
      bare_ = ComplexMatrix(2);
      couplings_[0] = x();
      break;
    case SensorKind::LandauZener:
      bare_ = z();
      couplings_[0] = x();
      break;
    case SensorKind::Dimer:
      bare_ = kron(z(), z());
      couplings_[0] = collective(Axis::X, 2);
      break;
    case SensorKind::KitaevTrimer:
      // X1 X2 + Y2 Y3 + Z1 Z3
      bare_ = kron3(x(), x(), I2()) + kron3(I2(), y(), y()) + kron3(z(), I2(), z());
      for (Axis a : {Axis::X, Axis::Y, Axis::Z})
        couplings_[static_cast<int>(a)] = collective(a, 3);
      break;
  }
}

bool SensorModel::supports(Axis axis) const noexcept {
  return couplings_[static_cast<int>(axis)].has_value();
}

Axis SensorModel::reference_axis() const noexcept {
  return kind_ == SensorKind::KitaevTrimer ? Axis::Z : Axis::X;
}

const ComplexMatrix& SensorModel::coupling_hamiltonian(Axis axis) const {
  const auto& c = couplings_[static_cast<int>(axis)];
  if (!c) {
    static constexpr const char* names[] = {"X", "Y", "Z"};
    std::ostringstream os;
    os << "model '" << sensor_kind_name(kind_) << "' has no coupling along "
       << names[static_cast<int>(axis)];
    fail_validation(os.str());
  }
  return *c;
}

ComplexMatrix SensorModel::coupling_along(const std::array<double, 3>& direction) const {
  ComplexMatrix out(dim());
  for (Axis a : {Axis::X, Axis::Y, Axis::Z}) {
    const double w = direction[static_cast<int>(a)];
    if (w == 0.0) continue;
    const ComplexMatrix& h1 = coupling_hamiltonian(a);
    for (std::size_t i = 0; i < out.dim(); ++i)
      for (std::size_t j = 0; j < out.dim(); ++j) out(i, j) += w * h1(i, j);
  }
  return out;
}

ComplexMatrix SensorModel::hamiltonian_at(const FieldVector& field) const {
  for (double v : {field.bx, field.by, field.bz})
    if (!std::isfinite(v)) fail_validation("field components must be finite");
  ComplexMatrix h = bare_;
  for (Axis a : {Axis::X, Axis::Y, Axis::Z}) {
    const double w = field[a];
    if (w == 0.0) continue;
    const ComplexMatrix& h1 = coupling_hamiltonian(a);
    for (std::size_t i = 0; i < h.dim(); ++i)
      for (std::size_t j = 0; j < h.dim(); ++j) h(i, j) += w * h1(i, j);
  }
  return h;
}

void SensorModel::hamiltonian_into(double amplitude, const std::array<double, 3>& direction,
                                   ComplexMatrix& out) const {
  out = bare_;
  for (Axis a : {Axis::X, Axis::Y, Axis::Z}) {
    const double w = amplitude * direction[static_cast<int>(a)];
    if (w == 0.0) continue;
    const ComplexMatrix& h1 = coupling_hamiltonian(a);
    for (std::size_t i = 0; i < out.dim(); ++i)
      for (std::size_t j = 0; j < out.dim(); ++j) out(i, j) += w * h1(i, j);
  }
}

}  // namespace mousetrap
