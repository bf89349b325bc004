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
// Command-line front end. Talks to the simulator only through the C interface.
#include <cstdio>
#include <iostream>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mousetrap.h"

namespace {

constexpr int kExitUsage = 2;

struct ConfigDeleter {
  void operator()(mt_config* c) const { mt_config_destroy(c); }
};
struct TableDeleter {
  void operator()(mt_table* t) const { mt_table_destroy(t); }
};
using ConfigPtr = std::unique_ptr<mt_config, ConfigDeleter>;
using TablePtr = std::unique_ptr<mt_table, TableDeleter>;

int report(mt_status status) {
  std::cerr << "mousetrap: " << mt_last_error() << '\n';
  return static_cast<int>(status);
}

std::string get_text(const mt_config* config, const char* key) {
  char* raw = nullptr;
  if (mt_config_get(config, key, &raw) != MT_OK || raw == nullptr) return "";
  std::string out = raw;
  mt_string_free(raw);
  return out;
}

bool truthy(const std::string& v) { return v == "true" || v == "1" || v == "yes" || v == "on"; }

// Every configuration key becomes a flag of the same name on every subcommand.
struct FlagSet {
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;
  std::string config_path;

  void attach(CLI::App& app) {
    app.add_option("--config", config_path, "configuration file ([section] key = value)");
    for (size_t i = 0; i < mt_config_key_count(); ++i) {
      const std::string name = mt_config_key_name(i);
      std::string help = std::string(mt_config_key_help(i)) + " [" + mt_config_key_section(i) + "]";
      const std::string def = mt_config_key_default(i);
      if (!def.empty()) help += " (default " + def + ")";
      if (mt_config_key_is_flag(i))
        options[name] = app.add_flag("--" + name + "{true}", values[name], help);
      else
        options[name] = app.add_option("--" + name, values[name], help);
    }
  }

  // Config file first, then flags on top of it.
  mt_status apply(mt_config* config) const {
    if (!config_path.empty()) {
      if (const mt_status s = mt_config_load(config, config_path.c_str()); s != MT_OK) return s;
    }
    for (const auto& [name, option] : options) {
      if (option->count() == 0) continue;
      if (const mt_status s = mt_config_set(config, name.c_str(), values.at(name).c_str()); s != MT_OK)
        return s;
    }
    return MT_OK;
  }
};

// Without an output directory the table goes to stdout and the summary to stderr.
int emit(const mt_config* config, const mt_table* table, const std::string& stem,
         const std::string& default_dir, const std::string& default_format, bool explicit_format) {
  std::string dir = get_text(config, "out");
  if (dir.empty()) dir = default_dir;
  std::string format = get_text(config, "format");
  if (!default_format.empty() && !explicit_format) format = default_format;
  const std::string summary = mt_table_summary(table);
  if (dir.empty()) {
    char* text = nullptr;
    const mt_status s = mt_table_format(table, format == "json" ? "json" : "csv", &text);
    if (s != MT_OK) return report(s);
    std::fputs(text, stdout);
    mt_string_free(text);
    if (!summary.empty()) std::cerr << summary << '\n';
    return 0;
  }
  if (const mt_status s = mt_table_write_outputs(table, dir.c_str(), stem.c_str(), format.c_str());
      s != MT_OK)
    return report(s);
  if (!summary.empty()) std::cout << summary << '\n';
  std::cout << "wrote " << dir << "/" << stem << (format == "both" ? ".{csv,json}" : "." + format)
            << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kitaev-trimer quantum mousetrap simulator"};
  app.set_version_flag("--version", std::string(mt_version()));
  app.require_subcommand(1);

  struct Sub {
    const char* name;
    const char* help;
  };
  const std::vector<Sub> subs{
      {"spectrum", "labelled eigenvalues at the --b field amplitudes"},
      {"evolve", "single trajectory: numeric and adiabatic survival, delta, phase"},
      {"sweep", "response probability against signal amplitude (N=1, N=3 product, N=3 GHZ)"},
      {"timeline", "time-resolved response for every amplitude"},
      {"direction", "response over field directions in one octant"},
      {"error", "adiabatic error and its lower bound against amplitude"},
      {"reproduce", "regenerate the data behind fig2, fig3, fig4 or fig5"},
  };
  std::map<std::string, FlagSet> flags;
  std::map<std::string, CLI::App*> apps;
  std::string figure;
  for (const auto& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    flags[s.name].attach(*sub);
    apps[s.name] = sub;
  }
  apps["reproduce"]->add_option("figure", figure, "fig2, fig3, fig4 or fig5")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  std::string command;
  for (const auto& s : subs)
    if (apps[s.name]->parsed()) command = s.name;

  mt_config* raw = nullptr;
  if (const mt_status s = mt_config_create(&raw); s != MT_OK) return report(s);
  ConfigPtr config(raw);
  if (const mt_status s = flags[command].apply(config.get()); s != MT_OK) return report(s);

  if (command == "spectrum") {
    if (const mt_status s = mt_config_validate(config.get()); s != MT_OK) return report(s);
    if (truthy(get_text(config.get(), "coefficients"))) {
      char* json = nullptr;
      if (const mt_status s = mt_series_coefficients_json(&json); s != MT_OK) return report(s);
      std::fputs(json, stdout);
      mt_string_free(json);
      return 0;
    }
  }

  mt_table* table_raw = nullptr;
  const mt_status status = command == "reproduce"
                               ? mt_reproduce(config.get(), figure.c_str(), &table_raw)
                               : mt_run(config.get(), command.c_str(), &table_raw);
  if (status != MT_OK) return report(status);
  TablePtr table(table_raw);
  // reproduce writes CSV and JSON unless a format was chosen
  const bool explicit_format = mt_config_is_set(config.get(), "format") == 1;
  if (command == "reproduce")
    return emit(config.get(), table.get(), figure, "results", "both", explicit_format);
  return emit(config.get(), table.get(), command, "", "", true);
}
