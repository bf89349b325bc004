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
#include <string>
#include <vector>

#include <json.hpp>

#include "linalg.hpp"
#include "model.hpp"
#include "signal.hpp"

namespace mousetrap {

/// 1-based indices into a model's labelled eigenvalues; chi = (1/2) int (l_p - l_q).
struct EigenPair {
  int p = 4;
  int q = 6;
  friend bool operator==(const EigenPair&, const EigenPair&) = default;
};

inline constexpr EigenPair kMousetrapPair{4, 6};
inline constexpr EigenPair kSkewPair{8, 6};
inline constexpr EigenPair kStandardPair{4, 2};

/// Parses "4,6" / "4/6".
EigenPair parse_eigen_pair(const std::string& text);
void validate_pair(SensorKind kind, EigenPair pair);

/// Trimer with field b along a cardinal axis, labelled l1..l8:
///   -b-s, -b+s, b-s, b+s, -b-q, -b+q, b-r, b+r
/// with s = sqrt3, q = sqrt(3 - 4b + 4b^2), r = sqrt(3 + 4b + 4b^2).
std::array<double, 8> trimer_eigenvalues_z(double b);

/// Eigenvalues of the Standard, Landau-Zener and Dimer sensors in their labelled order:
///   Standard {-b, b}; Landau-Zener {-sqrt(1+b^2), sqrt(1+b^2)};
///   Dimer {-1, 1, -sqrt(1+4b^2), sqrt(1+4b^2)}.
std::vector<double> table_sensor_eigenvalues(SensorKind kind, double b);

/// Labelled eigenvalues for any kind (trimer: the order above).
std::vector<double> branch_eigenvalues(SensorKind kind, double b);

/// Closed-form constants of the zero-field trimer eigenbasis.
struct Psi0Constants {
  double a, b, c, d, e, f, g, h;
};
Psi0Constants psi0_constants();

/// Zero-field trimer eigenbasis, column j belonging to l_j. Each column is the b -> 0
/// limit of its branch for a z-axis field. Validated against H(0) on first use.
const ComplexMatrix& psi0();

/// Zero-field labelled eigenbasis for any sensor kind.
const ComplexMatrix& reference_basis(SensorKind kind);

/// Ramsey input state Psi0 (e_p + e_q)/sqrt2.
ComplexVector ramsey_input_state(SensorKind kind, EigenPair pair);

/// Signed scalar amplitude seen by the closed forms: +1 or -1 when the waveform points
/// along a cardinal axis the closed forms cover, otherwise throws Error(Validation).
double closed_form_orientation(SensorKind kind, const Waveform& w);

/// (l_p - l_q) / 2 at scalar field b.
double half_gap(SensorKind kind, EigenPair pair, double b);

/// chi over the waveform's window, or over \p window.
double chi_exact(SensorKind kind, EigenPair pair, const Waveform& w);
double chi_exact(SensorKind kind, EigenPair pair, const Waveform& w, Window window);

/// Power-series coefficients alpha_i of (l_p - l_q)/2 = sum_i alpha_i b^i.
struct SeriesTable {
  EigenPair pair;
  std::string name;
  std::array<double, 6> coefficients{};  ///< index = power of b
  int stated_order = 0;                  ///< highest power carried by the reference expansion
};

inline constexpr int kMaxSeriesOrder = 5;

const std::vector<SeriesTable>& series_tables();
/// Table for \p pair; a reversed pair gets negated coefficients.
SeriesTable series_table(EigenPair pair);

/// sum_{i <= order} alpha_i int b^i over the waveform window.
double chi_series(EigenPair pair, const Waveform& w, int order);

nlohmann::json series_tables_json();

}  // namespace mousetrap
