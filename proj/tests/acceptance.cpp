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

#include <chrono>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <llsym/cli_report.hpp>

namespace {

struct Criterion {
  int number;
  std::string title;
  double limit_ms;
  std::vector<std::string> checks;
};

const std::vector<Criterion> kCriteria{
    {1, "operator squares", 1000, {"squares.heat", "squares.schrodinger", "squares.harmonic", "squares.d2"}},
    {2, "supersymmetric quantum mechanics algebra", 1000, {"sqm.algebra"}},
    {3, "symmetry witnesses", 30000, {"witness.free2", "witness.free4", "witness.harmonic", "witness.d2"}},
    {4, "exhaustive free 2x2 search", 60000, {"search.free2.commutator", "search.free2.anticommutator"}},
    {5, "J doubling of the free 4x4 symmetries", 30000, {"doubling.free4"}},
    {6,
     "graded tables against golden files",
     10000,
     {"table.sch1", "table.osp_P", "table.osp_Omega", "table.osp_Q", "table.ssch1", "table.z2z2_13"}},
    {7, "13-generator Z2xZ2 graded superalgebra", 30000, {"algebra.z2z2_13"}},
    {8,
     "obstructions",
     60000,
     {"obstruction.omega_gamma", "obstruction.mixed_q_omega", "obstruction.alternative_grading"}},
    {9, "harmonic no-go and sch(1) embedding", 120000, {"harmonic.nogo", "harmonic.sch1"}},
    {10, "1+2 dimensional algebras", 120000, {"algebra.ssch2", "algebra.z2z2_d2", "relations.d2"}},
    {11,
     "quaternion and split-quaternion gradings",
     5000,
     {"composition.quaternions", "composition.split", "theta.quaternions", "theta.split"}},
    {12, "abstract 17-generator table", 5000, {"abstract.jacobi", "abstract.perturbation"}},
    {13, "solution mapping", 30000, {"solutions.free2", "solutions.free4"}},
};

}  // namespace

int main() {
  using namespace llsym;
  SuiteOptions opts;
  opts.workers = worker_count();
  std::map<std::string, CheckSpec> specs;
  for (auto& s : suite_checks("all", opts)) specs.emplace(s.id, s);
  int failed = 0;
  for (const auto& c : kCriteria) {
    bool ok = true;
    double total = 0;
    std::vector<std::string> notes;
    for (const auto& id : c.checks) {
      auto it = specs.find(id);
      if (it == specs.end()) {
        ok = false;
        notes.push_back(id + ": not registered");
        continue;
      }
      auto r = run_check(it->second, opts);
      total += r.ms;
      if (r.status == CheckStatus::fail) ok = false;
      notes.push_back(id + " " + to_string(r.status) + ": " + r.detail);
    }
    bool in_time = total < c.limit_ms;
    if (!in_time) notes.push_back("runtime limit exceeded");
    ok = ok && in_time;
    failed += !ok;
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << c.number << " " << c.title << " ("
              << static_cast<long>(total) << " ms, limit " << static_cast<long>(c.limit_ms) << " ms)\n";
    for (const auto& n : notes) std::cout << "    " << n << "\n";
  }
  std::cout << kCriteria.size() - failed << "/" << kCriteria.size() << " criteria pass\n";
  return failed ? 1 : 0;
}
