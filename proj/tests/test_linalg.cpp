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

#include <random>

#include <llsym/linalg.hpp>

using namespace llsym;

namespace {

std::vector<Rational> dense_times(const std::vector<SparseRow>& rows, const SparseRow& v, std::size_t ncols) {
  std::vector<Rational> x(ncols);
  for (const auto& [c, val] : v) x[c] = val;
  std::vector<Rational> out;
  for (const auto& r : rows) {
    Rational s = 0;
    for (const auto& [c, val] : r) s += val * x[c];
    out.push_back(s);
  }
  return out;
}

SparseRow random_row(std::mt19937& rng, std::size_t ncols) {
  SparseRow r;
  for (std::size_t c = 0; c < ncols; ++c) {
    int v = std::uniform_int_distribution<int>(-3, 3)(rng);
    if (std::uniform_int_distribution<int>(0, 2)(rng) == 0 && v != 0) r.emplace_back(c, v);
  }
  return r;
}

}  // namespace

TEST_CASE("nullspace vectors are annihilated and independent", "[linalg]") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t ncols = 3 + trial % 7;
    std::vector<SparseRow> rows;
    for (int k = 0; k < 1 + trial % 5; ++k) rows.push_back(random_row(rng, ncols));
    auto ns = nullspace(rows, ncols);
    RowEchelon rank_rows;
    for (const auto& r : rows) rank_rows.insert(r);
    CHECK(ns.size() == ncols - rank_rows.rank());
    RowEchelon indep;
    for (const auto& v : ns) {
      for (const auto& s : dense_times(rows, v, ncols)) REQUIRE(s == 0);
      CHECK(indep.insert(v));
    }
  }
}

TEST_CASE("solve_linear finds solutions and detects inconsistency", "[linalg]") {
  // x + y = 3, x - y = 1
  std::vector<std::pair<SparseRow, Rational>> sys{{{{0, 1}, {1, 1}}, 3}, {{{0, 1}, {1, -1}}, 1}};
  auto sol = solve_linear(sys, 2);
  REQUIRE(sol.has_value());
  CHECK((*sol)[0] == 2);
  CHECK((*sol)[1] == 1);
  sys.push_back({{{0, 2}, {1, 2}}, 7});
  CHECK_FALSE(solve_linear(sys, 2).has_value());
}

TEST_CASE("LinearSpan membership and coefficient recovery", "[linalg]") {
  LinearSpan<int> span;
  CHECK(span.contains({}));
  CHECK(span.insert({{1, 1}, {2, 1}}));
  CHECK(span.insert({{2, 1}, {3, 2}}));
  CHECK_FALSE(span.insert({{1, 2}, {2, 2}}));
  auto c = span.express({{1, 3}, {2, 5}, {3, 4}});
  REQUIRE(c.has_value());
  // 3 v0 + 2 v1, with v2 = 2 v0 free
  CHECK((*c)[0] + 2 * (*c)[2] == 3);
  CHECK((*c)[1] == 2);
  CHECK_FALSE(span.contains({{3, 1}}));
  CHECK_FALSE(span.contains({{9, 1}}));
  CHECK(span.rank() == 2);
}
