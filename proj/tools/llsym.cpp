/*
 * Copyright 2026 The llsym Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <llsym/cli_report.hpp>

namespace {

using namespace llsym;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

std::vector<Rational> parse_rates(const std::string& s) {
  std::vector<Rational> out;
  for (const auto& r : llsym::detail::split_list(s)) out.push_back(parse_rational(r));
  if (out.empty()) throw std::invalid_argument("empty --exp-rates list");
  return out;
}

int emit(const VerificationReport& rep, bool json, bool timings) {
  if (json)
    std::cout << rep.json(timings).dump(2) << "\n";
  else
    std::cout << rep.text(timings);
  return rep.passed() ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"llsym: symmetry operators of Levy-Leblond type equations and their graded algebras"};
  app.require_subcommand(1);
  app.fallthrough();

  bool json = false, timings = false, size8 = false;
  std::string lambda_opt, rates_opt, golden_dir, out_dir;
  int max_degree = -1;
  app.add_flag("--json", json, "JSON output");
  app.add_flag("--timings", timings, "include per-check runtimes");

  auto* cat = app.add_subcommand("catalog", "operator catalog");
  cat->require_subcommand(1);
  auto* cat_list = cat->add_subcommand("list", "list catalog identifiers");
  auto* cat_show = cat->add_subcommand("show", "show one operator in the JSON operator format");
  std::string show_id;
  cat_show->add_option("id", show_id, "catalog identifier")->required();

  auto* suite = app.add_subcommand("suite", "run a verification suite");
  std::string suite_name;
  suite->add_option("name", suite_name, "free-1d | schrodinger-1d | harmonic | free-2d | graded-abstract | all")
      ->required();

  auto* search = app.add_subcommand("search", "run an ansatz search from a config file");
  std::string config_path;
  search->add_option("config", config_path, "search config file")->required();
  search->add_option("--out", out_dir, "directory for the basis in the JSON operator format");

  for (auto* sc : {suite, search}) {
    sc->add_option("--lambda", lambda_opt, "numeric lambda (default symbolic)");
    sc->add_flag("--lambda-symbolic", "keep lambda symbolic (default)");
    sc->add_option("--max-degree", max_degree, "polynomial degree bound");
    sc->add_option("--exp-rates", rates_opt, "comma separated exponential rates");
  }
  suite->add_flag("--size-8", size8, "run the 8x8 Schrodinger search");
  suite->add_option("--check-golden", golden_dir, "directory of golden tables");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  SuiteOptions opts;
  opts.workers = worker_count();
  opts.size8 = size8;
  try {
    if (!lambda_opt.empty() && lambda_opt != "symbolic") opts.lambda = parse_rational(lambda_opt);
    if (max_degree >= 0) opts.max_degree = max_degree;
    if (!rates_opt.empty()) opts.exp_rates = parse_rates(rates_opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  if (!golden_dir.empty()) opts.golden_dir = golden_dir;

  if (*cat_list) {
    if (json) {
      auto arr = nlohmann::ordered_json::array();
      for (const auto& e : catalog()) arr.push_back(catalog_entry_json(e, false));
      std::cout << arr.dump(2) << "\n";
    } else {
      for (const auto& e : catalog())
        std::cout << e.id << "  " << (e.kind ? to_string(*e.kind) : "-") << "  " << e.description << "\n";
    }
    return kExitPass;
  }
  if (*cat_show) {
    try {
      const auto& e = catalog_entry(show_id);
      auto j = catalog_entry_json(e, true);
      if (json)
        std::cout << j.dump(2) << "\n";
      else
        std::cout << e.id << ": " << e.description << "\n" << e.make({}).str() << "\n";
    } catch (const std::out_of_range& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitUsage;
    }
    return kExitPass;
  }
  if (*suite) {
    std::vector<CheckSpec> specs;
    try {
      specs = suite_checks(suite_name, opts);
    } catch (const std::invalid_argument& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitUsage;
    }
    return emit(run_checks(suite_name, specs, opts), json, timings);
  }
  if (*search) {
    std::ifstream f(config_path);
    if (!f) {
      std::cerr << "error: cannot open " << config_path << "\n";
      return kExitUsage;
    }
    std::stringstream buf;
    buf << f.rdbuf();
    SearchConfig cfg;
    try {
      cfg = parse_search_config(buf.str());
    } catch (const ParseError& e) {
      std::cerr << config_path << ": " << e.what() << "\n";
      return kExitUsage;
    }
    auto out = run_search(cfg, opts);
    if (!out_dir.empty()) {
      std::filesystem::create_directories(out_dir);
      auto arr = nlohmann::json::array();
      for (const auto& op : out.basis) arr.push_back(op.to_json());
      std::ofstream(std::filesystem::path(out_dir) / "basis.json") << arr.dump(2) << "\n";
    }
    return emit(out.report, json, timings);
  }
  return kExitUsage;
}
