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
#include "spectrum.hpp"

#include <cmath>
#include <mutex>
#include <sstream>

#include "error.hpp"
#include "tolerances.hpp"

namespace mousetrap {

namespace {
const double kSqrt3 = std::sqrt(3.0);
}

EigenPair parse_eigen_pair(const std::string& text) {
  const auto sep = text.find_first_of(",/");
  if (sep == std::string::npos) fail_validation("eigen pair must look like '4,6'");
  try {
    std::size_t used_p = 0, used_q = 0;
    const std::string ps = text.substr(0, sep), qs = text.substr(sep + 1);
    EigenPair pair{std::stoi(ps, &used_p), std::stoi(qs, &used_q)};
    if (used_p != ps.size() || used_q != qs.size()) throw std::invalid_argument(text);
    return pair;
  } catch (const std::logic_error&) {
    fail_validation("eigen pair must look like '4,6', got '" + text + "'");
  }
}

void validate_pair(SensorKind kind, EigenPair pair) {
  const int n = kind == SensorKind::KitaevTrimer ? 8 : kind == SensorKind::Dimer ? 4 : 2;
  if (pair.p < 1 || pair.p > n || pair.q < 1 || pair.q > n || pair.p == pair.q) {
    std::ostringstream os;
    os << "eigen pair (" << pair.p << "," << pair.q << ") invalid for model '"
       << sensor_kind_name(kind) << "' (distinct indices in 1.." << n << ")";
    fail_validation(os.str());
  }
}

std::array<double, 8> trimer_eigenvalues_z(double b) {
  const double p = b, s = kSqrt3;
  const double q = std::sqrt(3.0 - 4.0 * b + 4.0 * b * b);
  const double r = std::sqrt(3.0 + 4.0 * b + 4.0 * b * b);
  return {-p - s, -p + s, p - s, p + s, -p - q, -p + q, p - r, p + r};
}

std::vector<double> table_sensor_eigenvalues(SensorKind kind, double b) {
  switch (kind) {
    case SensorKind::Standard: return {-b, b};
    case SensorKind::LandauZener: {
      const double l = std::sqrt(1.0 + b * b);
      return {-l, l};
    }
    case SensorKind::Dimer: {
      const double l = std::sqrt(1.0 + 4.0 * b * b);
      return {-1.0, 1.0, -l, l};
    }
    case SensorKind::KitaevTrimer: break;
  }
  fail_validation("table_sensor_eigenvalues: use trimer_eigenvalues_z for the trimer");
}

std::vector<double> branch_eigenvalues(SensorKind kind, double b) {
  if (kind == SensorKind::KitaevTrimer) {
    const auto l = trimer_eigenvalues_z(b);
    return {l.begin(), l.end()};
  }
  return table_sensor_eigenvalues(kind, b);
}

Psi0Constants psi0_constants() {
  const double s = kSqrt3;
  const double lo = 2.0 + (s - 1.0) * (s - 1.0);  // 2 + (sqrt3 - 1)^2
  const double hi = 2.0 + (1.0 + s) * (1.0 + s);  // 2 + (1 + sqrt3)^2
  return {
      .a = 1.0 / std::sqrt(lo),
      .b = std::sqrt(3.0 / lo),
      .c = 1.0 / std::sqrt(hi),
      .d = std::sqrt(3.0 / hi),
      .e = (s - 1.0) / std::sqrt(lo),
      .f = 1.0 / std::sqrt(2.0 + (1.0 - s) * (1.0 - s)),
      .g = std::sqrt(3.0 / (2.0 + (1.0 - s) * (1.0 - s))),
      .h = (1.0 + s) / std::sqrt(hi),
  };
}

namespace {

ComplexMatrix build_psi0() {
  const auto k = psi0_constants();
  const double a = k.a, c = k.c, e = k.e, h = k.h;
  // Rows: computational basis |q1 q2 q3>; columns: l1..l8.
  const double rows[64] = {
      0, 0, 0,  0, 0,  0,  e,  h,   // |000>
      0, 0, a,  c, a,  c,  0,  0,   // |001>
      0, 0, -e, h, 0,  0,  0,  0,   // |010>
      a, c, 0,  0, 0,  0,  a,  -c,  // |011>
      0, 0, a,  c, -a, -c, 0,  0,   // |100>
      -e, h, 0, 0, 0,  0,  0,  0,   // |101>
      a, c, 0,  0, 0,  0,  -a, c,   // |110>
      0, 0, 0,  0, -e, h,  0,  0,   // |111>
  };
  return ComplexMatrix::from_real(8, rows);
}

void check_eigenbasis(const ComplexMatrix& basis, const SensorModel& model,
                      const std::vector<double>& levels, const char* what) {
  const double orth = unitarity_defect(basis);
  const ComplexMatrix residual =
      model.bare_hamiltonian() * basis - basis * ComplexMatrix::diagonal(levels);
  if (orth > tol::kOrthonormal || residual.max_abs() > tol::kPsi0Residual) {
    std::ostringstream os;
    os << what << " failed validation (orthonormality " << orth << ", residual "
       << residual.max_abs() << ")";
    throw std::logic_error(os.str());
  }
}

ComplexMatrix build_reference(SensorKind kind) {
  const double r = 1.0 / std::sqrt(2.0);
  switch (kind) {
    case SensorKind::Standard: {
      const double m[4] = {r, r, -r, r};
      return ComplexMatrix::from_real(2, m);
    }
    case SensorKind::LandauZener: {
      const double m[4] = {0, 1, 1, 0};
      return ComplexMatrix::from_real(2, m);
    }
    case SensorKind::Dimer: {
      // |00>, |01>, |10>, |11> against l1..l4
      const double m[16] = {
          0, r, 0, r,   //
          r, 0, r, 0,   //
          -r, 0, r, 0,  //
          0, -r, 0, r,  //
      };
      return ComplexMatrix::from_real(4, m);
    }
    case SensorKind::KitaevTrimer: return build_psi0();
  }
  return {};
}

}  // namespace

const ComplexMatrix& reference_basis(SensorKind kind) {
  static const std::array<ComplexMatrix, 4> bases = [] {
    std::array<ComplexMatrix, 4> out;
    for (SensorKind k : {SensorKind::Standard, SensorKind::LandauZener, SensorKind::Dimer,
                         SensorKind::KitaevTrimer}) {
      ComplexMatrix m = build_reference(k);
      check_eigenbasis(m, SensorModel(k), branch_eigenvalues(k, 0.0),
                       k == SensorKind::KitaevTrimer ? "trimer Psi0" : "reference basis");
      out[static_cast<int>(k)] = std::move(m);
    }
    return out;
  }();
  return bases[static_cast<int>(kind)];
}

const ComplexMatrix& psi0() { return reference_basis(SensorKind::KitaevTrimer); }

ComplexVector ramsey_input_state(SensorKind kind, EigenPair pair) {
  validate_pair(kind, pair);
  const ComplexMatrix& basis = reference_basis(kind);
  ComplexVector out(basis.dim());
  const double r = 1.0 / std::sqrt(2.0);
  for (std::size_t i = 0; i < basis.dim(); ++i)
    out[i] = r * (basis(i, pair.p - 1) + basis(i, pair.q - 1));
  return out;
}

double closed_form_orientation(SensorKind kind, const Waveform& w) {
  const auto& d = w.direction();
  for (int axis = 0; axis < 3; ++axis) {
    if (kind != SensorKind::KitaevTrimer && axis != 0) continue;
    const bool others_zero = std::abs(d[(axis + 1) % 3]) < 1e-12 &&
                             std::abs(d[(axis + 2) % 3]) < 1e-12;
    if (others_zero && std::abs(std::abs(d[axis]) - 1.0) < 1e-12)
      return d[axis] > 0 ? 1.0 : -1.0;
  }
  fail_validation(kind == SensorKind::KitaevTrimer
                      ? "closed-form spectra need a field along a cardinal axis"
                      : "closed-form spectra need a field along the sensor's X coupling");
}

double half_gap(SensorKind kind, EigenPair pair, double b) {
  if (kind == SensorKind::KitaevTrimer) {
    const auto l = trimer_eigenvalues_z(b);
    return 0.5 * (l[pair.p - 1] - l[pair.q - 1]);
  }
  const auto l = table_sensor_eigenvalues(kind, b);
  return 0.5 * (l[pair.p - 1] - l[pair.q - 1]);
}

double chi_exact(SensorKind kind, EigenPair pair, const Waveform& w, Window window) {
  validate_pair(kind, pair);
  const double sign = closed_form_orientation(kind, w);
  return integrate([&](double t) { return half_gap(kind, pair, sign * w.evaluate(t)); },
                   window.t0, window.t1, tol::kQuadrature);
}

double chi_exact(SensorKind kind, EigenPair pair, const Waveform& w) {
  return chi_exact(kind, pair, w, w.window());
}

const std::vector<SeriesTable>& series_tables() {
  static const std::vector<SeriesTable> tables = [] {
    const double s = kSqrt3;
    return std::vector<SeriesTable>{
        {kStandardPair, "standard", {0.0, 1.0, 0.0, 0.0, 0.0, 0.0}, 1},
        {kMousetrapPair,
         "mousetrap",
         {0.0, 1.0 + 1.0 / s, -2.0 / (3.0 * s), -4.0 * s / 27.0, -4.0 * s / 81.0,
          8.0 * s / 243.0},
         2},
        {kSkewPair,
         "skew",
         {0.0, 1.0 + 2.0 / s, 0.0, -8.0 / (9.0 * s), 0.0, 16.0 * s / 243.0},
         3},
        {EigenPair{5, 7},
         "skew-lower",
         {0.0, -1.0 + 2.0 / s, 0.0, -8.0 / (9.0 * s), 0.0, 16.0 * s / 243.0},
         3},
    };
  }();
  return tables;
}

SeriesTable series_table(EigenPair pair) {
  for (const auto& t : series_tables()) {
    if (t.pair == pair) return t;
    if (t.pair.p == pair.q && t.pair.q == pair.p) {
      SeriesTable flipped = t;
      flipped.pair = pair;
      for (auto& c : flipped.coefficients) c = -c;
      return flipped;
    }
  }
  std::ostringstream os;
  os << "no series expansion for pair (" << pair.p << "," << pair.q
     << "); available: 4,2  4,6  8,6  5,7 and their reverses";
  fail_validation(os.str());
}

double chi_series(EigenPair pair, const Waveform& w, int order) {
  const SeriesTable table = series_table(pair);
  if (order < 1 || order > kMaxSeriesOrder) {
    std::ostringstream os;
    os << "series order must be in 1.." << kMaxSeriesOrder;
    fail_validation(os.str());
  }
  const double sign = closed_form_orientation(SensorKind::KitaevTrimer, w);
  double chi = 0.0;
  for (int i = 1; i <= order; ++i) {
    const double alpha = table.coefficients[i];
    if (alpha == 0.0) continue;
    chi += alpha * std::pow(sign, i) * integrate_moment(w, i);
  }
  return chi;
}

nlohmann::json series_tables_json() {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& t : series_tables()) {
    nlohmann::json coeffs = nlohmann::json::object();
    for (int i = 1; i <= kMaxSeriesOrder; ++i) coeffs[std::to_string(i)] = t.coefficients[i];
    out.push_back({{"name", t.name},
                   {"pair", {t.pair.p, t.pair.q}},
                   {"stated_order", t.stated_order},
                   {"coefficients", coeffs}});
  }
  return out;
}

}  // namespace mousetrap
