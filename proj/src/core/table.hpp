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
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace mousetrap {

/// Named columns over a rectangular row grid, plus key=value metadata.
struct ScanResult {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::pair<std::string, std::string>> metadata;
  std::string summary;

  void add_meta(const std::string& key, const std::string& value);
  std::size_t column_index(const std::string& name) const;
  std::vector<double> column(const std::string& name) const;
};

/// 12 significant digits; "nan" / "inf" / "-inf" for non-finite values.
std::string format_number(double value);

void write_csv(const ScanResult& table, std::ostream& out);
void write_json(const ScanResult& table, std::ostream& out);
std::string to_csv(const ScanResult& table);
std::string to_json(const ScanResult& table);

/// Throw Error(Io) when the file cannot be written.
void write_csv_file(const ScanResult& table, const std::filesystem::path& path);
void write_json_file(const ScanResult& table, const std::filesystem::path& path);

}  // namespace mousetrap
