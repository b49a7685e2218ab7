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

#include <map>
#include <tuple>

#include <llsym/diff_op.hpp>

#include "generators.hpp"

using namespace llsym;

namespace {

const CoeffExpr x = CoeffExpr::var(Var::x);
const CoeffExpr t = CoeffExpr::var(Var::t);
const CoeffExpr lam = CoeffExpr::lambda();

DiffOp M(const char* s) { return DiffOp(MatExpr::parse(s)); }
DiffOp M(const char* s, DerivIndex d) { return DiffOp(MatExpr::parse(s), d); }

const DiffOp I2 = DiffOp::identity(2);
const DiffOp gp = M("1/2*Y + 1/2*A");
const DiffOp gm = M("1/2*Y - 1/2*A");
const DiffOp g3 = M("X");
const DiffOp omega = M("1/2*Y + 1/2*A", kDt) + lam * gm + M("X", kDx);

// Scalar oracle: one derivative moved past one coefficient at a time.
using ScalarOp = std::map<std::pair<Monomial, std::tuple<int, int, int>>, Rational>;

void add_to(ScalarOp& s, const Monomial& m, DerivIndex d, const Rational& c) {
  if (c == 0) return;
  auto key = std::make_pair(m, std::make_tuple(d.t, d.x, d.x2));
  s[key] += c;
  if (s[key] == 0) s.erase(key);
}

// d^alpha applied to (m * d^beta), recursively.
void push_through(ScalarOp& out, DerivIndex alpha, const Monomial& m, DerivIndex beta, const Rational& c) {
  if (alpha.order() == 0) {
    add_to(out, m, beta, c);
    return;
  }
  Var v = alpha.t ? Var::t : (alpha.x ? Var::x : Var::x2);
  DerivIndex rest = alpha;
  DerivIndex unit{};
  if (v == Var::t) { rest.t--; unit.t = 1; }
  if (v == Var::x) { rest.x--; unit.x = 1; }
  if (v == Var::x2) { rest.x2--; unit.x2 = 1; }
  // d_v (m d^beta) = (d_v m) d^beta + m d^(beta + v); then apply the rest
  ScalarOp mid;
  CoeffExpr dm = CoeffExpr(m, 1).derive(v);
  for (const auto& [mm, cc] : dm.terms()) add_to(mid, mm, beta, cc);
  add_to(mid, m, beta + unit, 1);
  for (const auto& [key, cc] : mid) {
    auto [tt, xx, yy] = key.second;
    push_through(out, rest, key.first, DerivIndex{tt, xx, yy}, c * cc);
  }
}

DiffOp oracle_compose(const DiffOp& a, const DiffOp& b) {
  std::size_t n = a.size();
  std::map<std::pair<std::size_t, std::size_t>, ScalarOp> entries;
  for (const auto& [ka, va] : a.coordinates())
    for (const auto& [kb, vb] : b.coordinates()) {
      if (ka.col != kb.row) continue;
      ScalarOp tmp;
      push_through(tmp, ka.deriv, kb.mono, kb.deriv, va * vb);
      auto& dst = entries[{ka.row, kb.col}];
      for (const auto& [key, c] : tmp) {
        auto [tt, xx, yy] = key.second;
        add_to(dst, ka.mono * key.first, DerivIndex{tt, xx, yy}, c);
      }
    }
  std::map<OpCoord, Rational> coords;
  for (const auto& [pos, s] : entries)
    for (const auto& [key, c] : s) {
      auto [tt, xx, yy] = key.second;
      coords[OpCoord{DerivIndex{tt, xx, yy}, pos.first, pos.second, key.first}] += c;
    }
  std::erase_if(coords, [](const auto& e) { return e.second == 0; });
  return DiffOp::from_coordinates(n, coords);
}

std::vector<Spinor> test_spinors(std::size_t n, int max_degree) {
  std::vector<Spinor> out;
  for (int a = 0; a <= max_degree; ++a)
    for (int b = 0; a + b <= max_degree; ++b)
      for (std::size_t k = 0; k < n; ++k) {
        Spinor s(n);
        s[k] = CoeffExpr::var(Var::x, a) * CoeffExpr::var(Var::t, b);
        out.push_back(s);
      }
  return out;
}

}  // namespace

TEST_CASE("compose: Omega squared", "[diff_op]") {
  DiffOp expect = lam * DiffOp(CoeffMatrix::identity(2), kDt) + DiffOp(CoeffMatrix::identity(2), {0, 2, 0});
  CHECK(compose(omega, omega) == expect);
}

TEST_CASE("compose: identity and d_x o x", "[diff_op]") {
  testing::Gen g(7);
  DiffOp b = g.op(2, 2);
  CHECK(compose(I2, b) == b);
  CHECK(compose(b, I2) == b);
  DiffOp dx = DiffOp(CoeffMatrix::identity(2), kDx);
  DiffOp lhs = compose(dx, x * I2);
  DiffOp rhs = x * dx + I2;
  CHECK(lhs == rhs);
  for (const CoeffExpr& f : {CoeffExpr(1), x, x * x}) {
    Spinor psi{f, Rational(3) * f};
    CHECK((llsym::apply(lhs, psi) == llsym::apply(dx, llsym::apply(x * I2, psi))));
    CHECK((llsym::apply(lhs, psi) == llsym::apply(rhs, psi)));
  }
}

TEST_CASE("commutator and anticommutator examples", "[diff_op]") {
  CHECK(commutator(omega, t * omega) == compose(gp, omega));
  testing::Gen g(11);
  DiffOp a = g.op(2, 2);
  CHECK(commutator(a, a).is_zero());
  DiffOp qp = CoeffExpr::lambda_half(-1) * (M("1/2*Y + 1/2*A", kDt) - lam * gm);
  DiffOp h = DiffOp(CoeffMatrix::identity(2), kDt);
  CHECK(anticommutator(qp, qp) == Rational(-2) * h);
}

TEST_CASE("size mismatch is rejected", "[diff_op]") {
  CHECK_THROWS_AS(compose(I2, DiffOp::identity(4)), std::invalid_argument);
  CHECK_THROWS_AS(llsym::apply(I2, Spinor(3)), std::invalid_argument);
}

TEST_CASE("apply: solutions, identity, H", "[diff_op]") {
  CoeffExpr heat = lam * x * x - Rational(2) * t;
  Spinor psi0{heat, heat + CoeffExpr(1)};
  Spinor psi = llsym::apply(omega, psi0);
  CHECK(is_zero(llsym::apply(omega, psi)));
  CHECK((llsym::apply(I2, psi) == psi));
  DiffOp h = DiffOp(CoeffMatrix::identity(2), kDt);
  Spinor phi{x * t * t, CoeffExpr::exp_t(2) * x};
  CHECK((llsym::apply(h, phi) == Spinor{phi[0].derive(Var::t), phi[1].derive(Var::t)}));
}

TEST_CASE("grade_of", "[diff_op]") {
  DiffOp d = Rational(-1) * (t * DiffOp(CoeffMatrix::identity(2), kDt) +
                             Rational(1, 2) * x * DiffOp(CoeffMatrix::identity(2), kDx) + Rational(1, 2) * I2 +
                             Rational(1, 4) * g3);
  CHECK(grade_of(d, omega) == Rational(1, 2));
  CHECK(grade_of(d, d) == Rational(0));
  CHECK(grade_of(d, t * omega) == Rational(-1, 2));
  CHECK_FALSE(grade_of(d, omega + I2).has_value());
}

TEST_CASE("compose agrees with the scalar oracle on random operators", "[diff_op]") {
  testing::Gen g(2026);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n = trial % 2 ? 2 : 4;
    DiffOp a = g.op(n, 1 + trial % 2, trial % 3 == 0);
    DiffOp b = g.op(n, 1 + (trial / 2) % 2, trial % 3 == 0);
    REQUIRE(compose(a, b) == oracle_compose(a, b));
  }
  CHECK(compose(omega, omega) == oracle_compose(omega, omega));
}

TEST_CASE("apply o compose consistency on polynomial spinors", "[diff_op]") {
  testing::Gen g(99);
  for (int trial = 0; trial < 10; ++trial) {
    DiffOp a = g.op(2, 2), b = g.op(2, 1);
    DiffOp ab = compose(a, b);
    for (const auto& psi : test_spinors(2, 4)) REQUIRE((llsym::apply(ab, psi) == llsym::apply(a, llsym::apply(b, psi))));
  }
}

TEST_CASE("Jacobi identity of the commutator", "[diff_op]") {
  testing::Gen g(5);
  for (int trial = 0; trial < 15; ++trial) {
    DiffOp a = g.op(2), b = g.op(2), c = g.op(2);
    DiffOp j = commutator(commutator(a, b), c) + commutator(commutator(b, c), a) + commutator(commutator(c, a), b);
    REQUIRE(j.is_zero());
  }
}

TEST_CASE("JSON round trip", "[diff_op]") {
  testing::Gen g(3);
  for (int trial = 0; trial < 30; ++trial) {
    DiffOp a = g.op(trial % 2 ? 2 : 4, 2, true);
    nlohmann::json j = a.to_json();
    CHECK(DiffOp::from_json(nlohmann::json::parse(j.dump())) == a);
  }
  CHECK_THROWS_AS(DiffOp::from_json(nlohmann::json::parse(R"({"size":2,"terms":[{"deriv":[0,0],"entries":[]}]})")),
                  ParseError);
  CHECK_THROWS_AS(DiffOp::from_json(nlohmann::json::parse(R"({"size":2})")), ParseError);
}

TEST_CASE("order and canonical form", "[diff_op]") {
  CHECK(omega.order() == 1);
  CHECK(compose(omega, omega).order() == 2);
  CHECK((omega - omega).is_zero());
  CHECK((omega - omega).terms().empty());
}
