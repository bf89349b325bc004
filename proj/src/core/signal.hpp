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
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "model.hpp"

namespace mousetrap {

/// epsilon * exp(-t^2 / s) * sin(2 pi k t). s = +inf drops the envelope.
struct GaussianSine {
  double epsilon = 1.0;
  double s = 20.0;
  double k = 0.05;
};

struct Constant {
  double value = 0.0;
};

/// Tabulated signal, linearly interpolated. Times strictly increasing.
struct Samples {
  std::vector<double> times;
  std::vector<double> values;
};

using WaveformShape = std::variant<GaussianSine, Constant, Samples>;

/// Closed interval of dimensionless time.
struct Window {
  double t0 = 0.0;
  double t1 = 0.0;
  double length() const { return t1 - t0; }
};

/// A classical drive b(t) pointing along a fixed unit direction.
class Waveform {
 public:
  Waveform(WaveformShape shape, std::array<double, 3> direction, Window window);

  const WaveformShape& shape() const noexcept { return shape_; }
  const std::array<double, 3>& direction() const noexcept { return direction_; }
  const Window& window() const noexcept { return window_; }

  double evaluate(double t) const;
  /// order 1 or 2; analytic for GaussianSine and Constant, central differences for Samples.
  double derivative(double t, int order) const;
  FieldVector field_at(double t) const;

  /// Amplitude multiplied by \p factor (epsilon, value, or every sample).
  Waveform scaled(double factor) const;
  Waveform with_direction(std::array<double, 3> direction) const;
  Waveform with_window(Window window) const;

 private:
  WaveformShape shape_;
  std::array<double, 3> direction_;
  Window window_;
};

/// Named reproduction presets. "fig2": k = 0.05, s = 20, window [-15, 15], z-axis.
/// Note b(-15) = epsilon * e^{-11.25} * sin(-1.5 pi) ~ 1.3e-5 epsilon: small, not zero.
Waveform preset_waveform(std::string_view name, double epsilon);
bool is_preset(std::string_view name);

inline constexpr std::array<double, 3> kAxisX{1.0, 0.0, 0.0};
inline constexpr std::array<double, 3> kAxisY{0.0, 1.0, 0.0};
inline constexpr std::array<double, 3> kAxisZ{0.0, 0.0, 1.0};

/// Physical drive H = alpha H0 + beta(t) H1 before rescaling.
struct PhysicalUnits {
  double alpha = 1.0;
  Waveform beta_waveform;
};

/// b(t') = beta(t'/alpha) / alpha on the window scaled by alpha.
Waveform nondimensionalize(const PhysicalUnits& units);

/// Composite Simpson with interval halving and Richardson extrapolation, to an absolute
/// error estimate below \p tolerance. Throws Error(Numerical) when the panel count limit
/// is reached first.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tolerance);

/// f_i = integral over \p window of b(t)^power.
double integrate_moment(const Waveform& w, int power, Window window);
double integrate_moment(const Waveform& w, int power);

/// Reads a two-column (time, value) CSV. Blank lines and lines starting with '#' are
/// skipped; a non-numeric first row is treated as a header.
Samples read_samples_csv(const std::filesystem::path& path);

}  // namespace mousetrap
