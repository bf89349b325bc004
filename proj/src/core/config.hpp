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

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "evolve.hpp"
#include "model.hpp"
#include "signal.hpp"
#include "spectrum.hpp"

namespace mousetrap {

struct ConfigKey {
  const char* section;
  const char* name;          ///< also the command-line flag, without "--"
  const char* default_text;  ///< shown in help; "" when there is no default
  const char* help;
  bool boolean = false;
};

/// Every recognised key, in documentation order.
const std::vector<ConfigKey>& config_keys();

/// Raw key/value settings. Keys are flag names ("epsilon"), optionally qualified by their
/// section ("waveform.epsilon"). Values stay text until resolve().
class Config {
 public:
  void set(const std::string& key, const std::string& value);
  /// "key = value" lines under "[section]" headers; "#" and ";" start comments.
  void load_text(const std::string& text, const std::string& origin);
  void load_file(const std::filesystem::path& path);

  bool is_set(const std::string& key) const;
  std::optional<std::string> get(const std::string& key) const;
  /// Sets \p key only when the user has not.
  void set_default(const std::string& key, const std::string& value);

  /// "waveform.epsilon" -> "epsilon"; throws on unknown keys.
  static std::string canonical_name(const std::string& key);

  const std::map<std::string, std::string>& values() const noexcept { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

/// Fully validated settings.
struct RunConfig {
  SensorKind model = SensorKind::KitaevTrimer;
  EigenPair pair = kMousetrapPair;
  std::string waveform_label;
  Waveform waveform = preset_waveform("fig2", 1.0);       ///< at the configured epsilon
  Waveform unit_waveform = preset_waveform("fig2", 1.0);  ///< amplitude one, for sweeps
  long steps = 512;
  bool refine = true;
  long checkpoint = 16;
  std::vector<double> epsilons;
  int theta_points = 31;
  int phi_points = 31;
  int time_points = 301;
  int threads = 1;
  GapPolicy gap;
  std::vector<double> b_values;
  bool all_sensors = false;
  bool coefficients = false;
  std::string out;
  std::string format = "csv";
  /// Resolved settings that define the numbers (excludes threads and output routing).
  std::vector<std::pair<std::string, std::string>> echo;
};

/// Throws Error(Validation) naming the offending "section.key".
RunConfig resolve(const Config& config);

/// Default eigen pair for a sensor kind ("4,6" for the trimer).
EigenPair default_pair(SensorKind kind);

}  // namespace mousetrap
