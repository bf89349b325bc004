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
#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <string>

#include "mousetrap.h"

namespace {

struct ConfigDeleter {
  void operator()(mt_config* c) const { mt_config_destroy(c); }
};
struct TableDeleter {
  void operator()(mt_table* t) const { mt_table_destroy(t); }
};
using Config = std::unique_ptr<mt_config, ConfigDeleter>;
using Table = std::unique_ptr<mt_table, TableDeleter>;

Config make_config(std::initializer_list<std::pair<const char*, const char*>> kv) {
  mt_config* raw = nullptr;
  EXPECT_EQ(mt_config_create(&raw), MT_OK);
  Config c(raw);
  for (const auto& [k, v] : kv) EXPECT_EQ(mt_config_set(c.get(), k, v), MT_OK) << k;
  return c;
}

std::string take(char* text) {
  std::string out = text ? text : "";
  mt_string_free(text);
  return out;
}

TEST(CApi, VersionAndKeyCatalogue) {
  EXPECT_STREQ(mt_version(), MOUSETRAP_VERSION);
  ASSERT_GT(mt_config_key_count(), 20u);
  bool saw_refine = false;
  for (size_t i = 0; i < mt_config_key_count(); ++i) {
    EXPECT_NE(mt_config_key_name(i), nullptr);
    EXPECT_NE(std::string(mt_config_key_help(i)), "");
    if (std::string(mt_config_key_name(i)) == "refine") {
      saw_refine = true;
      EXPECT_EQ(mt_config_key_is_flag(i), 1);
      EXPECT_STREQ(mt_config_key_section(i), "grid");
      EXPECT_STREQ(mt_config_key_default(i), "true");
    }
  }
  EXPECT_TRUE(saw_refine);
  EXPECT_EQ(mt_config_key_name(mt_config_key_count()), nullptr);
}

TEST(CApi, ConfigSetGetAndErrors) {
  Config c = make_config({{"waveform.epsilon", "0.4"}});
  EXPECT_EQ(take([&] { char* s = nullptr; mt_config_get(c.get(), "epsilon", &s); return s; }()), "0.4");
  EXPECT_EQ(take([&] { char* s = nullptr; mt_config_get(c.get(), "steps", &s); return s; }()), "512");
  EXPECT_EQ(mt_config_is_set(c.get(), "epsilon"), 1);
  EXPECT_EQ(mt_config_is_set(c.get(), "steps"), 0);
  EXPECT_EQ(mt_config_is_set(c.get(), "bogus"), -1);
  EXPECT_EQ(mt_config_set(c.get(), "bogus", "1"), MT_ERR_USAGE);
  EXPECT_NE(std::string(mt_last_error()).find("bogus"), std::string::npos);
  EXPECT_EQ(mt_config_set(c.get(), "epsilon", "abc"), MT_OK);  // text is checked on validate
  EXPECT_EQ(mt_config_validate(c.get()), MT_ERR_USAGE);
  EXPECT_NE(std::string(mt_last_error()).find("waveform.epsilon"), std::string::npos);
  EXPECT_EQ(mt_config_load(c.get(), "/nonexistent/run.ini"), MT_ERR_IO);
  EXPECT_EQ(mt_config_set(nullptr, "epsilon", "1"), MT_ERR_USAGE);
}

TEST(CApi, ConfigLoadFromFile) {
  const auto path = std::filesystem::temp_directory_path() / "mt_capi_run.ini";
  std::ofstream(path) << "[waveform]\nepsilon = 0.25\n[grid]\nrefine = false\n";
  Config c = make_config({});
  ASSERT_EQ(mt_config_load(c.get(), path.c_str()), MT_OK);
  EXPECT_EQ(mt_config_is_set(c.get(), "refine"), 1);
  EXPECT_EQ(mt_config_validate(c.get()), MT_OK);
  std::filesystem::remove(path);
}

TEST(CApi, RunSpectrumTable) {
  Config c = make_config({{"b", "0,1"}});
  mt_table* raw = nullptr;
  ASSERT_EQ(mt_run(c.get(), "spectrum", &raw), MT_OK);
  Table t(raw);
  EXPECT_EQ(mt_table_rows(t.get()), 2u);
  EXPECT_EQ(mt_table_cols(t.get()), 9u);
  EXPECT_STREQ(mt_table_column_name(t.get(), 8), "lambda_8");
  double v = 0.0;
  ASSERT_EQ(mt_table_value(t.get(), 1, 8, &v), MT_OK);
  EXPECT_NEAR(v, 1 + std::sqrt(11.0), 1e-14);
  EXPECT_EQ(mt_table_value(t.get(), 5, 0, &v), MT_ERR_USAGE);
  EXPECT_EQ(mt_table_column_name(t.get(), 99), nullptr);
  EXPECT_GE(mt_table_metadata_count(t.get()), 1u);
  EXPECT_STREQ(mt_table_metadata_key(t.get(), 0), "command");
  EXPECT_STREQ(mt_table_metadata_value(t.get(), 0), "spectrum");
}

TEST(CApi, RunEvolveFormatsAndWrites) {
  Config c = make_config({{"epsilon", "0.5"}, {"steps", "512"}, {"refine", "false"}, {"checkpoint", "128"}});
  mt_table* raw = nullptr;
  ASSERT_EQ(mt_run(c.get(), "evolve", &raw), MT_OK);
  Table t(raw);
  EXPECT_EQ(mt_table_rows(t.get()), 5u);
  char* csv = nullptr;
  ASSERT_EQ(mt_table_format(t.get(), "csv", &csv), MT_OK);
  const std::string text = take(csv);
  EXPECT_NE(text.find("t,survival_numeric,survival_adiabatic,delta,phase"), std::string::npos);
  EXPECT_EQ(mt_table_format(t.get(), "xml", &csv), MT_ERR_USAGE);
  EXPECT_NE(std::string(mt_table_summary(t.get())).find("evolve:"), std::string::npos);

  const auto dir = std::filesystem::temp_directory_path() / "mt_capi_out";
  std::filesystem::remove_all(dir);
  ASSERT_EQ(mt_table_write_outputs(t.get(), dir.c_str(), "run", "both"), MT_OK);
  std::ifstream in(dir / "run.csv");
  std::stringstream buf;
  buf << in.rdbuf();
  EXPECT_EQ(buf.str(), text);
  EXPECT_TRUE(std::filesystem::exists(dir / "run.json"));
  EXPECT_EQ(mt_table_write_csv(t.get(), "/nonexistent/x.csv"), MT_ERR_IO);
  std::filesystem::remove_all(dir);
}

TEST(CApi, StatusCodesForFailures) {
  mt_table* raw = nullptr;
  Config bad = make_config({{"shape", "gaussian-sine"}, {"k", "0.05"}, {"t0", "0"}, {"t1", "1"}});
  EXPECT_EQ(mt_run(bad.get(), "evolve", &raw), MT_ERR_USAGE);
  EXPECT_NE(std::string(mt_last_error()).find("waveform.s"), std::string::npos);
  EXPECT_EQ(raw, nullptr);

  Config floor = make_config({{"gap-floor", "100"}, {"eps-list", "1.0"}, {"refine", "false"}, {"steps", "128"}});
  EXPECT_EQ(mt_run(floor.get(), "error", &raw), MT_ERR_NUMERICAL);
  EXPECT_NE(std::string(mt_last_error()).find("gap-floor"), std::string::npos);

  Config plain = make_config({});
  EXPECT_EQ(mt_run(plain.get(), "plot", &raw), MT_ERR_USAGE);
  EXPECT_EQ(mt_reproduce(plain.get(), "fig9", &raw), MT_ERR_USAGE);
  EXPECT_EQ(mt_run(plain.get(), "spectrum", nullptr), MT_ERR_USAGE);
}

TEST(CApi, ReproduceAppliesFigureSettings) {
  Config c = make_config({{"eps-list", "0,0.1"}, {"refine", "false"}, {"steps", "256"}});
  mt_table* raw = nullptr;
  ASSERT_EQ(mt_reproduce(c.get(), "fig2", &raw), MT_OK);
  Table t(raw);
  EXPECT_EQ(mt_table_rows(t.get()), 2u);
  EXPECT_STREQ(mt_table_metadata_key(t.get(), 0), "figure");
  EXPECT_STREQ(mt_table_metadata_value(t.get(), 0), "fig2");
}

TEST(CApi, DirectQueries) {
  double l[8];
  ASSERT_EQ(mt_trimer_eigenvalues(1.0, l), MT_OK);
  EXPECT_NEAR(l[7], 1 + std::sqrt(11.0), 1e-14);
  double d[4];
  size_t n = 0;
  ASSERT_EQ(mt_sensor_eigenvalues("dimer", 1.0, d, 4, &n), MT_OK);
  EXPECT_EQ(n, 4u);
  EXPECT_NEAR(d[3], std::sqrt(5.0), 1e-15);
  EXPECT_EQ(mt_sensor_eigenvalues("trimer", 0.0, d, 4, &n), MT_ERR_USAGE);
  EXPECT_EQ(n, 8u);
  EXPECT_EQ(mt_sensor_eigenvalues("quartet", 0.0, d, 4, &n), MT_ERR_USAGE);

  double v = 0.0;
  ASSERT_EQ(mt_ramsey_probability(0.7853981633974483, &v), MT_OK);
  EXPECT_NEAR(v, 0.5, 1e-15);
  ASSERT_EQ(mt_multi_sensor_probability(0.7853981633974483, 2, "product", &v), MT_OK);
  EXPECT_NEAR(v, 0.25, 1e-15);
  ASSERT_EQ(mt_fisher_information(0.4487989505128276, 3, "ghz", &v), MT_OK);
  EXPECT_NEAR(v, 36.0, 1e-10);
  EXPECT_EQ(mt_fisher_information(0.0, 3, "ghz", &v), MT_ERR_USAGE);
  EXPECT_EQ(mt_multi_sensor_probability(0.1, 2, "w", &v), MT_ERR_USAGE);
  ASSERT_EQ(mt_qcrb(3, &v), MT_OK);
  EXPECT_NEAR(v, 1.0 / 36.0, 1e-17);
  EXPECT_EQ(mt_qcrb(0, &v), MT_ERR_USAGE);
  char* json = nullptr;
  ASSERT_EQ(mt_series_coefficients_json(&json), MT_OK);
  EXPECT_NE(take(json).find("mousetrap"), std::string::npos);
}

}  // namespace
