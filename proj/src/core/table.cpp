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
#include "table.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "error.hpp"

namespace mousetrap {

void ScanResult::add_meta(const std::string& key, const std::string& value) {
  metadata.emplace_back(key, value);
}

std::size_t ScanResult::column_index(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return i;
  fail_validation("no column named '" + name + "'");
}

std::vector<double> ScanResult::column(const std::string& name) const {
  const std::size_t j = column_index(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.push_back(row[j]);
  return out;
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

void write_csv(const ScanResult& table, std::ostream& out) {
  for (const auto& [key, value] : table.metadata) out << "# " << key << '=' << value << '\n';
  for (std::size_t j = 0; j < table.columns.size(); ++j)
    out << (j ? "," : "") << table.columns[j];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) out << (j ? "," : "") << format_number(row[j]);
    out << '\n';
  }
}

void write_json(const ScanResult& table, std::ostream& out) {
  nlohmann::ordered_json doc;
  doc["metadata"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : table.metadata) doc["metadata"][key] = value;
  doc["columns"] = table.columns;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    auto r = nlohmann::ordered_json::array();
    // Same digits as the CSV; non-finite values become null.
    for (double v : row) {
      if (std::isfinite(v))
        r.push_back(std::stod(format_number(v)));
      else
        r.push_back(nullptr);
    }
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);
  out << doc.dump(1) << '\n';
}

std::string to_csv(const ScanResult& table) {
  std::ostringstream os;
  write_csv(table, os);
  return os.str();
}

std::string to_json(const ScanResult& table) {
  std::ostringstream os;
  write_json(table, os);
  return os.str();
}

namespace {

template <typename Writer>
void write_file(const ScanResult& table, const std::filesystem::path& path, Writer writer) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail_io("cannot open '" + path.string() + "' for writing");
  writer(table, out);
  out.flush();
  if (!out) fail_io("failed writing '" + path.string() + "'");
}

}  // namespace

void write_csv_file(const ScanResult& table, const std::filesystem::path& path) {
  write_file(table, path, [](const ScanResult& t, std::ostream& o) { write_csv(t, o); });
}

void write_json_file(const ScanResult& table, const std::filesystem::path& path) {
  write_file(table, path, [](const ScanResult& t, std::ostream& o) { write_json(t, o); });
}

}  // namespace mousetrap
