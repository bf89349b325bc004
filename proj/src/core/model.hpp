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

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "linalg.hpp"

namespace mousetrap {

/// The few-spin sensor Hamiltonians H = H0 + b(t) . H1.
enum class SensorKind { Standard, LandauZener, Dimer, KitaevTrimer };

enum class Axis { X = 0, Y = 1, Z = 2 };

/// Parses "standard", "landau-zener", "dimer", "trimer".
SensorKind parse_sensor_kind(std::string_view name);
std::string_view sensor_kind_name(SensorKind kind);

/// Dimensionless classical field amplitudes.
struct FieldVector {
  double bx = 0.0;
  double by = 0.0;
  double bz = 0.0;

  double operator[](Axis axis) const;
};

namespace pauli {
const ComplexMatrix& identity();
const ComplexMatrix& x();
const ComplexMatrix& y();
const ComplexMatrix& z();
const ComplexMatrix& of(Axis axis);
}  // namespace pauli

/// Immutable sensor model with cached bare and coupling operators.
///
/// Qubit 1 is the leftmost tensor factor and |0> is the +1 eigenstate of Z, so the
/// computational basis index of |q1 q2 q3> is 4 q1 + 2 q2 + q3.
class SensorModel {
 public:
  explicit SensorModel(SensorKind kind);

  SensorKind kind() const noexcept { return kind_; }
  std::size_t dim() const noexcept { return bare_.dim(); }

  const ComplexMatrix& bare_hamiltonian() const noexcept { return bare_; }
  /// Throws Error(Validation) when the model has no coupling along \p axis.
  const ComplexMatrix& coupling_hamiltonian(Axis axis) const;
  bool supports(Axis axis) const noexcept;
  /// X for the single-field sensors, Z for the trimer.
  Axis reference_axis() const noexcept;

  /// H0 + sum_axis b_axis H1_axis.
  ComplexMatrix hamiltonian_at(const FieldVector& field) const;
  /// H0 + amplitude * sum_axis direction_axis H1_axis, written into \p out.
  void hamiltonian_into(double amplitude, const std::array<double, 3>& direction,
                        ComplexMatrix& out) const;
  /// sum_axis direction_axis H1_axis
  ComplexMatrix coupling_along(const std::array<double, 3>& direction) const;

 private:
  SensorKind kind_;
  ComplexMatrix bare_;
  std::array<std::optional<ComplexMatrix>, 3> couplings_;
};

}  // namespace mousetrap
