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

#include <catch2/catch_amalgamated.hpp>

#include <llsym/cli_report.hpp>

using namespace llsym;

namespace {

std::string config_error(const std::string& text) {
  try {
    parse_search_config(text);
  } catch (const ParseError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("search config parsing", "[cli]") {
  auto c = parse_search_config(
      "# comment\nname = t\nomega = free2.Omega\nbracket = anticommutator\nmax_degree = 1\n"
      "exp_rates = 0, 2, -2\nlambda = 3/2\nfamily = free2.Lw\nexpect = free2.L1 free2.L2\n");
  CHECK(c.name == "t");
  CHECK(c.omega == "free2.Omega");
  CHECK(c.spec.kind == BracketKind::anticommutator);
  CHECK(c.spec.max_poly_degree == 1);
  CHECK(c.spec.exp_rates.size() == 3);
  CHECK(c.lambda == Rational(3, 2));
  CHECK(c.families == std::vector<std::string>{"free2.Lw"});
  CHECK(c.expect.size() == 2);
}

TEST_CASE("search config errors carry line numbers", "[cli]") {
  CHECK(config_error("omega = free2.Omega\nbracket = sideways\n").rfind("line 2:", 0) == 0);
  CHECK(config_error("\n\nnonsense\n").rfind("line 3:", 0) == 0);
  CHECK(config_error("omega = nosuch\n").rfind("line 1:", 0) == 0);
  CHECK(config_error("max_degree = -1\n").rfind("line 1:", 0) == 0);
  CHECK(config_error("exp_rates = 1/0x\n").rfind("line 1:", 0) == 0);
  CHECK(config_error("colour = red\n").rfind("line 1:", 0) == 0);
  CHECK(config_error("# x\nexpect = free2.H\n").rfind("line 2:", 0) == 0);
}

TEST_CASE("empty search config gives an empty passing report", "[cli]") {
  auto out = run_search(parse_search_config("# nothing\n"), {});
  CHECK(out.report.checks.empty());
  CHECK(out.report.passed());
}

TEST_CASE("search config run", "[cli]") {
  auto cfg = parse_search_config(
      "omega = free2.Omega\nfamily = free2.Omega\nexpect = free2.H free2.C\nexpect_quotient = 6\n");
  auto out = run_search(cfg, {});
  REQUIRE(out.report.checks.size() == 4);
  CHECK(out.report.passed());
  CHECK(out.basis.size() == 12);
  auto wrong = parse_search_config("omega = free2.Omega\nexpect_dimension = 11\nexpect = free2.L2\n");
  auto bad = run_search(wrong, {});
  CHECK_FALSE(bad.report.passed());
  CHECK(bad.report.failures() == 2);
}

TEST_CASE("suites", "[cli]") {
  CHECK_THROWS_AS(suite_checks("nosuch"), std::invalid_argument);
  auto all = suite_checks("all");
  std::size_t parts = 0;
  for (const auto& n : suite_names())
    if (n != "all") parts += suite_checks(n).size();
  CHECK(all.size() == parts);
  SuiteOptions big;
  big.size8 = true;
  CHECK(suite_checks("schrodinger-1d", big).size() == suite_checks("schrodinger-1d").size() + 1);
}

TEST_CASE("reports are deterministic and ordered", "[cli]") {
  SuiteOptions one, two;
  one.workers = 1;
  two.workers = 2;
  auto a = run_suite("graded-abstract", one);
  auto b = run_suite("graded-abstract", two);
  CHECK(a.text() == b.text());
  CHECK(a.json().dump() == b.json().dump());
  CHECK(a.passed());
  REQUIRE(a.checks.size() == 7);
  CHECK(a.checks[0].id == "abstract.jacobi");
  CHECK(a.checks[1].status == CheckStatus::absent_as_expected);
}

TEST_CASE("check failures are reported, not thrown", "[cli]") {
  CheckSpec boom{"boom", [](const SuiteOptions&) -> CheckOutcome { throw std::runtime_error("bad"); }};
  auto r = run_check(boom, {});
  CHECK(r.status == CheckStatus::fail);
  CHECK(r.detail == "error: bad");
  VerificationReport rep;
  rep.suite = "x";
  rep.checks.push_back(r);
  CHECK_FALSE(rep.passed());
  CHECK(rep.text().find("overall fail (1 checks, 1 failed)") != std::string::npos);
}

TEST_CASE("missing golden directory fails the table check", "[cli]") {
  SuiteOptions o;
  o.golden_dir = "/nonexistent";
  auto specs = suite_checks("free-1d", o);
  for (const auto& s : specs)
    if (s.id == "table.sch1") {
      auto r = run_check(s, o);
      CHECK(r.status == CheckStatus::fail);
      CHECK(r.detail.find("missing golden file") != std::string::npos);
    }
}
