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
#include "mousetrap.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <string>

#include "config.hpp"
#include "error.hpp"
#include "runner.hpp"
#include "sensing.hpp"
#include "spectrum.hpp"
#include "table.hpp"

struct mt_config {
  mousetrap::Config config;
};

struct mt_table {
  mousetrap::ScanResult result;
};

namespace {

thread_local std::string g_last_error;

template <typename F>
mt_status guarded(F&& body) {
  try {
    body();
    return MT_OK;
  } catch (const mousetrap::Error& e) {
    g_last_error = e.what();
    switch (e.kind()) {
      case mousetrap::ErrorKind::Validation: return MT_ERR_USAGE;
      case mousetrap::ErrorKind::Numerical: return MT_ERR_NUMERICAL;
      case mousetrap::ErrorKind::Io: return MT_ERR_IO;
    }
    return MT_ERR_INTERNAL;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return MT_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = std::string("internal error: ") + e.what();
    return MT_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "internal error";
    return MT_ERR_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (p == nullptr) mousetrap::fail_validation(std::string(what) + " must not be null");
}

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

const mousetrap::ConfigKey* key_at(size_t index) {
  const auto& keys = mousetrap::config_keys();
  return index < keys.size() ? &keys[index] : nullptr;
}

}  // namespace

extern "C" {

const char* mt_version(void) { return MOUSETRAP_VERSION; }

const char* mt_last_error(void) { return g_last_error.c_str(); }

mt_status mt_config_create(mt_config** out) {
  return guarded([&] {
    need(out, "out");
    *out = new mt_config();
  });
}

void mt_config_destroy(mt_config* config) { delete config; }

mt_status mt_config_set(mt_config* config, const char* key, const char* value) {
  return guarded([&] {
    need(config, "config");
    need(key, "key");
    need(value, "value");
    config->config.set(key, value);
  });
}

mt_status mt_config_load(mt_config* config, const char* path) {
  return guarded([&] {
    need(config, "config");
    need(path, "path");
    config->config.load_file(path);
  });
}

mt_status mt_config_get(const mt_config* config, const char* key, char** out) {
  return guarded([&] {
    need(config, "config");
    need(key, "key");
    need(out, "out");
    if (auto v = config->config.get(key)) {
      *out = duplicate(*v);
      return;
    }
    for (const auto& k : mousetrap::config_keys())
      if (std::string(k.name) == config->config.canonical_name(key)) *out = duplicate(k.default_text);
  });
}

int mt_config_is_set(const mt_config* config, const char* key) {
  int result = -1;
  const mt_status s = guarded([&] {
    need(config, "config");
    need(key, "key");
    result = config->config.is_set(key) ? 1 : 0;
  });
  return s == MT_OK ? result : -1;
}

mt_status mt_config_validate(const mt_config* config) {
  return guarded([&] {
    need(config, "config");
    (void)mousetrap::resolve(config->config);
  });
}

size_t mt_config_key_count(void) { return mousetrap::config_keys().size(); }
const char* mt_config_key_name(size_t i) { return key_at(i) ? key_at(i)->name : nullptr; }
const char* mt_config_key_section(size_t i) { return key_at(i) ? key_at(i)->section : nullptr; }
const char* mt_config_key_default(size_t i) { return key_at(i) ? key_at(i)->default_text : nullptr; }
const char* mt_config_key_help(size_t i) { return key_at(i) ? key_at(i)->help : nullptr; }
int mt_config_key_is_flag(size_t i) { return key_at(i) && key_at(i)->boolean ? 1 : 0; }

mt_status mt_run(const mt_config* config, const char* command, mt_table** out) {
  return guarded([&] {
    need(config, "config");
    need(command, "command");
    need(out, "out");
    *out = nullptr;
    auto table = std::make_unique<mt_table>();
    table->result = mousetrap::run_command(command, config->config);
    *out = table.release();
  });
}

mt_status mt_reproduce(const mt_config* config, const char* figure, mt_table** out) {
  return guarded([&] {
    need(config, "config");
    need(figure, "figure");
    need(out, "out");
    *out = nullptr;
    auto table = std::make_unique<mt_table>();
    table->result = mousetrap::reproduce(figure, config->config);
    *out = table.release();
  });
}

void mt_table_destroy(mt_table* table) { delete table; }

size_t mt_table_rows(const mt_table* t) { return t ? t->result.rows.size() : 0; }
size_t mt_table_cols(const mt_table* t) { return t ? t->result.columns.size() : 0; }

const char* mt_table_column_name(const mt_table* t, size_t col) {
  if (!t || col >= t->result.columns.size()) return nullptr;
  return t->result.columns[col].c_str();
}

mt_status mt_table_value(const mt_table* t, size_t row, size_t col, double* out) {
  return guarded([&] {
    need(t, "table");
    need(out, "out");
    if (row >= t->result.rows.size() || col >= t->result.columns.size())
      mousetrap::fail_validation("table index out of range");
    *out = t->result.rows[row][col];
  });
}

size_t mt_table_metadata_count(const mt_table* t) { return t ? t->result.metadata.size() : 0; }

const char* mt_table_metadata_key(const mt_table* t, size_t i) {
  if (!t || i >= t->result.metadata.size()) return nullptr;
  return t->result.metadata[i].first.c_str();
}

const char* mt_table_metadata_value(const mt_table* t, size_t i) {
  if (!t || i >= t->result.metadata.size()) return nullptr;
  return t->result.metadata[i].second.c_str();
}

const char* mt_table_summary(const mt_table* t) { return t ? t->result.summary.c_str() : ""; }

mt_status mt_table_write_csv(const mt_table* t, const char* path) {
  return guarded([&] {
    need(t, "table");
    need(path, "path");
    mousetrap::write_csv_file(t->result, path);
  });
}

mt_status mt_table_write_json(const mt_table* t, const char* path) {
  return guarded([&] {
    need(t, "table");
    need(path, "path");
    mousetrap::write_json_file(t->result, path);
  });
}

mt_status mt_table_format(const mt_table* t, const char* format, char** out) {
  return guarded([&] {
    need(t, "table");
    need(format, "format");
    need(out, "out");
    const std::string f = format;
    if (f == "csv")
      *out = duplicate(mousetrap::to_csv(t->result));
    else if (f == "json")
      *out = duplicate(mousetrap::to_json(t->result));
    else
      mousetrap::fail_validation("format must be csv or json");
  });
}

mt_status mt_table_write_outputs(const mt_table* t, const char* dir, const char* stem,
                                 const char* format) {
  return guarded([&] {
    need(t, "table");
    need(dir, "dir");
    need(stem, "stem");
    need(format, "format");
    mousetrap::write_outputs(t->result, dir, stem, format);
  });
}

void mt_string_free(char* text) { std::free(text); }

mt_status mt_trimer_eigenvalues(double b, double out[8]) {
  return guarded([&] {
    need(out, "out");
    if (!std::isfinite(b)) mousetrap::fail_validation("b must be finite");
    const auto l = mousetrap::trimer_eigenvalues_z(b);
    std::copy(l.begin(), l.end(), out);
  });
}

mt_status mt_sensor_eigenvalues(const char* model, double b, double* out, size_t capacity,
                                size_t* count) {
  return guarded([&] {
    need(model, "model");
    need(count, "count");
    if (!std::isfinite(b)) mousetrap::fail_validation("b must be finite");
    const auto l = mousetrap::branch_eigenvalues(mousetrap::parse_sensor_kind(model), b);
    *count = l.size();
    if (capacity < l.size()) mousetrap::fail_validation("output buffer too small");
    need(out, "out");
    std::copy(l.begin(), l.end(), out);
  });
}

mt_status mt_series_coefficients_json(char** out) {
  return guarded([&] {
    need(out, "out");
    *out = duplicate(mousetrap::coefficients_json());
  });
}

mt_status mt_ramsey_probability(double chi, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = mousetrap::ramsey_probability(chi);
  });
}

mt_status mt_multi_sensor_probability(double chi, int n, const char* mode, double* out) {
  return guarded([&] {
    need(mode, "mode");
    need(out, "out");
    *out = mousetrap::multi_sensor_probability(chi, n, mousetrap::parse_input_mode(mode));
  });
}

mt_status mt_fisher_information(double chi, int n, const char* mode, double* out) {
  return guarded([&] {
    need(mode, "mode");
    need(out, "out");
    *out = mousetrap::fisher_information(chi, n, mousetrap::parse_input_mode(mode));
  });
}

mt_status mt_qcrb(int n, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = mousetrap::qcrb(n);
  });
}

}  // extern "C"
