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
#include <vector>

#include "config.hpp"
#include "table.hpp"

namespace mousetrap {

/// Commands: spectrum, evolve, sweep, timeline, direction, error.
const std::vector<std::string>& command_names();
/// Figures: fig2, fig3, fig4, fig5.
const std::vector<std::string>& figure_names();

ScanResult run_command(const std::string& command, const RunConfig& config);
ScanResult run_command(const std::string& command, const Config& config);

/// Applies the figure's settings to every key the user left unset, then runs its scan.
ScanResult reproduce(const std::string& figure, Config config);

/// Series coefficient tables as pretty-printed JSON.
std::string coefficients_json();

/// Writes \p table into \p directory as <stem>.csv and/or <stem>.json per \p format.
std::vector<std::string> write_outputs(const ScanResult& table, const std::string& directory,
                                       const std::string& stem, const std::string& format);

}  // namespace mousetrap
