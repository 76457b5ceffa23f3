#pragma once

// Golden-file runner for the command-line front end. tests/golden/cases.json
// lists {name, args, exit}; every case runs twice, in text mode against
// <name>.txt (stdout then stderr) and with --json against <name>.json.
// Arguments starting with "@" name files under tests/golden/inputs.
// Setting ODF_UPDATE_GOLDENS=1 rewrites the expected files instead.

#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "odf/cli.hpp"

namespace odf::test {

struct GoldenOutcome {
  std::string name;
  bool ok = true;
  std::string detail;
};

struct CliRun {
  int exit_code = 0;
  std::string out;
  std::string err;
};

inline CliRun run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  CliRun r;
  r.exit_code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return "<missing " + path + ">";
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline std::vector<GoldenOutcome> run_goldens(const std::string& dir) {
  std::vector<GoldenOutcome> outcomes;
  nlohmann::json cases = nlohmann::json::parse(slurp(dir + "/cases.json"));
  const char* update_env = std::getenv("ODF_UPDATE_GOLDENS");
  bool update = update_env && std::string(update_env) == "1";
  for (const auto& c : cases) {
    std::vector<std::string> args;
    for (const auto& a : c.at("args")) {
      std::string s = a.get<std::string>();
      if (!s.empty() && s[0] == '@') s = dir + "/inputs/" + s.substr(1);
      args.push_back(s);
    }
    int expected_exit = c.at("exit").get<int>();
    std::string name = c.at("name").get<std::string>();
    for (bool as_json : {false, true}) {
      std::vector<std::string> full = args;
      if (as_json) full.insert(full.begin(), "--json");
      CliRun r = run_cli(full);
      std::string got = as_json ? r.out : r.out + r.err;
      // Keep goldens independent of the checkout location.
      for (std::size_t at; (at = got.find(dir + "/inputs/")) != std::string::npos;)
        got.replace(at, dir.size() + 8, "@");
      std::string path = dir + "/" + name + (as_json ? ".json" : ".txt");
      GoldenOutcome o;
      o.name = name + (as_json ? " [json]" : " [text]");
      if (update) {
        std::ofstream(path, std::ios::binary) << got;
      } else if (std::string want = slurp(path); want != got) {
        o.ok = false;
        o.detail = "output differs from " + path + ":\n" + got;
      }
      if (r.exit_code != expected_exit) {
        o.ok = false;
        o.detail += "exit code " + std::to_string(r.exit_code) + ", expected " + std::to_string(expected_exit);
      }
      if (as_json && !r.err.empty()) {
        o.ok = false;
        o.detail += "stderr not empty in --json mode: " + r.err;
      }
      outcomes.push_back(std::move(o));
    }
  }
  return outcomes;
}

}  // namespace odf::test
