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

#include <string>

#include "linalg.hpp"
#include "spectrum.hpp"

namespace mousetrap {

enum class InputMode { ProductState, EntangledGHZ };

InputMode parse_input_mode(const std::string& text);
std::string input_mode_name(InputMode mode);

/// cos^2(chi)
double ramsey_probability(double chi);

/// cos^{2N}(chi) for N product copies, cos^2(N chi) for the GHZ input.
double multi_sensor_probability(double chi, int n, InputMode mode);

/// (dP/dchi)^2 / (P (1 - P)) from the closed-form P. GHZ: the joint fringe cos^2(N chi),
/// giving 4N^2. Product: N independent readouts of cos^2(chi), additive, giving 4N.
/// Throws Error(Validation) where the fringe is at an extremum (P(1-P) <= 1e-12).
double fisher_information(double chi, int n, InputMode mode);

/// Central-difference counterpart of fisher_information, for validation.
double fisher_information_fd(double chi, int n, InputMode mode, double step = 1e-5);

/// 1 / (4 N^2)
double qcrb(int n);

/// second - first^2, returned raw.
double variance_from_sensors(double first_moment, double second_moment);

/// |<phi|U|phi>|^2
double survival_probability(const ComplexMatrix& u, const ComplexVector& phi);

/// Computational-basis state (|100> + |110>)/sqrt2 as written in the sensor table.
ComplexVector table_input_state();

/// Psi0 (e4 + e6)/sqrt2: the mousetrap input actually used.
ComplexVector mousetrap_input_state();

/// Reads a sensor-table ket label such as "100" as the 1-based eigen index it encodes in
/// binary ("100" -> 4, "110" -> 6), returning (e_i + e_j)/sqrt2 in eigen coordinates.
ComplexVector eigen_coordinates_from_labels(const std::string& first, const std::string& second,
                                            std::size_t dim);

}  // namespace mousetrap
