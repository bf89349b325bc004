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
#include "signal.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "error.hpp"
#include "tolerances.hpp"

namespace mousetrap {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void validate_samples(const Samples& s) {
  if (s.times.size() != s.values.size())
    fail_validation("samples: time and value columns differ in length");
  if (s.times.size() < 2) fail_validation("samples: need at least two rows");
  for (std::size_t i = 0; i < s.times.size(); ++i) {
    if (!std::isfinite(s.times[i]) || !std::isfinite(s.values[i]))
      fail_validation("samples: non-finite entry");
    if (i > 0 && !(s.times[i] > s.times[i - 1]))
      fail_validation("samples: times must be strictly increasing");
  }
}

double interpolate(const Samples& s, double t) {
  if (t < s.times.front() || t > s.times.back()) {
    std::ostringstream os;
    os << "samples: t = " << t << " outside [" << s.times.front() << ", " << s.times.back()
       << "]";
    fail_validation(os.str());
  }
  auto it = std::upper_bound(s.times.begin(), s.times.end(), t);
  std::size_t hi = static_cast<std::size_t>(it - s.times.begin());
  if (hi >= s.times.size()) hi = s.times.size() - 1;
  const std::size_t lo = hi - 1;
  const double u = (t - s.times[lo]) / (s.times[hi] - s.times[lo]);
  return s.values[lo] + u * (s.values[hi] - s.values[lo]);
}

double local_spacing(const Samples& s, double t) {
  auto it = std::upper_bound(s.times.begin(), s.times.end(), t);
  std::size_t hi = static_cast<std::size_t>(it - s.times.begin());
  hi = std::clamp<std::size_t>(hi, 1, s.times.size() - 1);
  return s.times[hi] - s.times[hi - 1];
}

double samples_derivative(const Samples& s, double t, int order) {
  const double lo = s.times.front(), hi = s.times.back();
  const double h = local_spacing(s, t);
  if (order == 1) {
    if (t - h < lo) return (interpolate(s, t + h) - interpolate(s, t)) / h;
    if (t + h > hi) return (interpolate(s, t) - interpolate(s, t - h)) / h;
    return (interpolate(s, t + h) - interpolate(s, t - h)) / (2.0 * h);
  }
  if (hi - lo < 2.0 * h) return 0.0;
  const double c = std::clamp(t, lo + h, hi - h);
  return (interpolate(s, c + h) - 2.0 * interpolate(s, c) + interpolate(s, c - h)) / (h * h);
}

}  // namespace

Waveform::Waveform(WaveformShape shape, std::array<double, 3> direction, Window window)
    : shape_(std::move(shape)), direction_(direction), window_(window) {
  const double n = std::sqrt(direction[0] * direction[0] + direction[1] * direction[1] +
                             direction[2] * direction[2]);
  if (!(std::abs(n - 1.0) < 1e-12)) {
    std::ostringstream os;
    os << "waveform direction must be a unit vector (norm " << n << ")";
    fail_validation(os.str());
  }
  if (!std::isfinite(window.t0) || !std::isfinite(window.t1) || !(window.t0 < window.t1))
    fail_validation("waveform window must satisfy t0 < t1");
  std::visit(overloaded{
                 [](const GaussianSine& g) {
                   if (!std::isfinite(g.epsilon) || !std::isfinite(g.k))
                     fail_validation("gaussian-sine: epsilon and k must be finite");
                   if (!(g.s > 0.0)) fail_validation("gaussian-sine: s must be positive");
                 },
                 [](const Constant& c) {
                   if (!std::isfinite(c.value)) fail_validation("constant: value must be finite");
                 },
                 [&](const Samples& s) {
                   validate_samples(s);
                   if (window.t0 < s.times.front() || window.t1 > s.times.back())
                     fail_validation("samples: window extends beyond the tabulated range");
                 },
             },
             shape_);
}

double Waveform::evaluate(double t) const {
  return std::visit(overloaded{
                        [t](const GaussianSine& g) {
                          return g.epsilon * std::exp(-t * t / g.s) *
                                 std::sin(2.0 * std::numbers::pi * g.k * t);
                        },
                        [](const Constant& c) { return c.value; },
                        [t](const Samples& s) { return interpolate(s, t); },
                    },
                    shape_);
}

double Waveform::derivative(double t, int order) const {
  if (order != 1 && order != 2) fail_validation("derivative order must be 1 or 2");
  return std::visit(
      overloaded{
          [t, order](const GaussianSine& g) {
            const double w = 2.0 * std::numbers::pi * g.k;
            const double env = g.epsilon * std::exp(-t * t / g.s);
            const double sn = std::sin(w * t), cs = std::cos(w * t);
            const double r = t / g.s;
            if (order == 1) return env * (w * cs - 2.0 * r * sn);
            return env * ((4.0 * r * r - 2.0 / g.s - w * w) * sn - 4.0 * r * w * cs);
          },
          [](const Constant&) { return 0.0; },
          [t, order](const Samples& s) { return samples_derivative(s, t, order); },
      },
      shape_);
}

FieldVector Waveform::field_at(double t) const {
  const double b = evaluate(t);
  return {b * direction_[0], b * direction_[1], b * direction_[2]};
}

Waveform Waveform::scaled(double factor) const {
  WaveformShape shape = std::visit(
      overloaded{
          [factor](GaussianSine g) -> WaveformShape {
            g.epsilon *= factor;
            return g;
          },
          [factor](Constant c) -> WaveformShape {
            c.value *= factor;
            return c;
          },
          [factor](Samples s) -> WaveformShape {
            for (auto& v : s.values) v *= factor;
            return s;
          },
      },
      shape_);
  return Waveform(std::move(shape), direction_, window_);
}

Waveform Waveform::with_direction(std::array<double, 3> direction) const {
  return Waveform(shape_, direction, window_);
}

Waveform Waveform::with_window(Window window) const {
  return Waveform(shape_, direction_, window);
}

bool is_preset(std::string_view name) { return name == "fig2"; }

Waveform preset_waveform(std::string_view name, double epsilon) {
  if (name == "fig2") return Waveform(GaussianSine{epsilon, 20.0, 0.05}, kAxisZ, {-15.0, 15.0});
  fail_validation("unknown waveform preset '" + std::string(name) + "'");
}

Waveform nondimensionalize(const PhysicalUnits& units) {
  const double alpha = units.alpha;
  if (!(alpha > 0.0) || !std::isfinite(alpha)) fail_validation("alpha must be positive");
  const Waveform& beta = units.beta_waveform;
  WaveformShape shape = std::visit(
      overloaded{
          [alpha](GaussianSine g) -> WaveformShape {
            return GaussianSine{g.epsilon / alpha, g.s * alpha * alpha, g.k / alpha};
          },
          [alpha](Constant c) -> WaveformShape { return Constant{c.value / alpha}; },
          [alpha](Samples s) -> WaveformShape {
            for (auto& t : s.times) t *= alpha;
            for (auto& v : s.values) v /= alpha;
            return s;
          },
      },
      beta.shape());
  const Window w = beta.window();
  return Waveform(std::move(shape), beta.direction(), {alpha * w.t0, alpha * w.t1});
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tolerance) {
  if (a == b) return 0.0;
  if (a > b) return -integrate(f, b, a, tolerance);
  constexpr int kStartPanels = 64;
  int panels = kStartPanels;
  double h = (b - a) / panels;
  const double ends = f(a) + f(b);
  double odd = 0.0, even = 0.0;
  for (int i = 1; i < panels; ++i) (i % 2 ? odd : even) += f(a + i * h);
  double previous = h / 3.0 * (ends + 4.0 * odd + 2.0 * even);
  double estimate = 0.0;
  for (int level = 7; level <= tol::kQuadratureMaxLevel; ++level) {
    even += odd;
    odd = 0.0;
    panels *= 2;
    h *= 0.5;
    for (int i = 1; i < panels; i += 2) odd += f(a + i * h);
    const double current = h / 3.0 * (ends + 4.0 * odd + 2.0 * even);
    estimate = (current - previous) / 15.0;
    if (std::abs(estimate) < tolerance) return current + estimate;
    previous = current;
  }
  std::ostringstream os;
  os << "quadrature did not reach tolerance " << tolerance << " (error estimate "
     << std::abs(estimate) << ")";
  fail_numerical(os.str());
}

double integrate_moment(const Waveform& w, int power, Window window) {
  if (power < 1) fail_validation("moment power must be a positive integer");
  return integrate([&](double t) { return std::pow(w.evaluate(t), power); }, window.t0,
                   window.t1, tol::kQuadrature);
}

double integrate_moment(const Waveform& w, int power) {
  return integrate_moment(w, power, w.window());
}

namespace {

bool parse_double(const std::string& text, double& out) {
  const char* begin = text.c_str();
  while (*begin == ' ' || *begin == '\t') ++begin;
  char* end = nullptr;
  out = std::strtod(begin, &end);
  if (end == begin) return false;
  while (*end == ' ' || *end == '\t' || *end == '\r') ++end;
  return *end == '\0';
}

}  // namespace

Samples read_samples_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail_io("cannot open samples file '" + path.string() + "'");
  Samples s;
  std::string line;
  std::size_t lineno = 0;
  bool first_data_row = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto comma = line.find(',');
    double t = 0.0, v = 0.0;
    const bool ok = comma != std::string::npos && line.find(',', comma + 1) == std::string::npos &&
                    parse_double(line.substr(0, comma), t) &&
                    parse_double(line.substr(comma + 1), v);
    if (!ok) {
      if (first_data_row) {
        first_data_row = false;
        continue;
      }
      std::ostringstream os;
      os << path.string() << ":" << lineno << ": expected two numeric columns";
      fail_validation(os.str());
    }
    first_data_row = false;
    s.times.push_back(t);
    s.values.push_back(v);
  }
  validate_samples(s);
  return s;
}

}  // namespace mousetrap
