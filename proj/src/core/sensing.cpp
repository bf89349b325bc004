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
#include "sensing.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "error.hpp"
#include "tolerances.hpp"

namespace mousetrap {

namespace {

void require_count(int n) {
  if (n < 1) fail_validation("sensor count N must be at least 1");
}

// Single-fringe FI: (dP)^2 / (P (1 - P)) for P = cos^2(m chi). P (1 - P) is formed as
// cos^2 sin^2 so it does not cancel near the fringe extremes.
double fringe_information(double chi, int m) {
  const double c = std::cos(m * chi), s = std::sin(m * chi);
  const double p = c * c;
  const double spread = (c * s) * (c * s);
  if (!(spread > tol::kFringe)) {
    std::ostringstream os;
    os << "Fisher information undefined at chi = " << chi << " (fringe extremum, P = " << p << ")";
    fail_validation(os.str());
  }
  const double dp = -2.0 * m * c * s;
  return dp * dp / spread;
}

}  // namespace

InputMode parse_input_mode(const std::string& text) {
  if (text == "product") return InputMode::ProductState;
  if (text == "ghz") return InputMode::EntangledGHZ;
  fail_validation("input mode must be 'product' or 'ghz', got '" + text + "'");
}

std::string input_mode_name(InputMode mode) {
  return mode == InputMode::ProductState ? "product" : "ghz";
}

double ramsey_probability(double chi) {
  if (!std::isfinite(chi)) fail_validation("phase must be finite");
  const double c = std::cos(chi);
  return c * c;
}

double multi_sensor_probability(double chi, int n, InputMode mode) {
  require_count(n);
  if (mode == InputMode::EntangledGHZ) return ramsey_probability(n * chi);
  return std::pow(ramsey_probability(chi), n);
}

double fisher_information(double chi, int n, InputMode mode) {
  require_count(n);
  if (mode == InputMode::EntangledGHZ) return fringe_information(chi, n);
  return n * fringe_information(chi, 1);
}

double fisher_information_fd(double chi, int n, InputMode mode, double step) {
  require_count(n);
  const int m = mode == InputMode::EntangledGHZ ? n : 1;
  const double p = ramsey_probability(m * chi);
  if (!(p * (1.0 - p) > tol::kFringe)) fail_validation("Fisher information undefined at a fringe extremum");
  const double dp =
      (ramsey_probability(m * (chi + step)) - ramsey_probability(m * (chi - step))) / (2.0 * step);
  const double single = dp * dp / (p * (1.0 - p));
  return mode == InputMode::EntangledGHZ ? single : n * single;
}

double qcrb(int n) {
  require_count(n);
  return 1.0 / (4.0 * n * n);
}

double variance_from_sensors(double first_moment, double second_moment) {
  if (second_moment < 0.0) fail_validation("second moment must be non-negative");
  return second_moment - first_moment * first_moment;
}

double survival_probability(const ComplexMatrix& u, const ComplexVector& phi) {
  if (phi.size() != u.dim()) fail_validation("state dimension does not match the propagator");
  if (std::abs(norm(phi) - 1.0) > tol::kNormalized) fail_validation("state must be normalized");
  const ComplexVector out = u * std::span<const Complex>(phi);
  return std::clamp(std::norm(inner(phi, out)), 0.0, 1.0);
}

ComplexVector table_input_state() {
  ComplexVector out(8);
  out[0b100] = out[0b110] = 1.0 / std::sqrt(2.0);
  return out;
}

ComplexVector mousetrap_input_state() {
  static const ComplexVector state = [] {
    ComplexVector phi = ramsey_input_state(SensorKind::KitaevTrimer, kMousetrapPair);
    // The table's ket labels read as eigen coordinates must give back the same state.
    const ComplexVector coords = psi0().adjoint() * std::span<const Complex>(phi);
    const ComplexVector expected = eigen_coordinates_from_labels("100", "110", 8);
    for (std::size_t i = 0; i < 8; ++i)
      if (std::abs(coords[i] - expected[i]) > tol::kNormalized)
        throw std::logic_error("mousetrap input state disagrees with its eigen coordinates");
    return phi;
  }();
  return state;
}

ComplexVector eigen_coordinates_from_labels(const std::string& first, const std::string& second,
                                            std::size_t dim) {
  ComplexVector out(dim);
  for (const auto& label : {first, second}) {
    if (label.empty() || label.find_first_not_of("01") != std::string::npos)
      fail_validation("ket label must be binary, got '" + label + "'");
    const std::size_t index = std::stoul(label, nullptr, 2);
    if (index < 1 || index > dim) fail_validation("ket label '" + label + "' is not an eigen index");
    out[index - 1] += 1.0 / std::sqrt(2.0);
  }
  return out;
}

}  // namespace mousetrap
