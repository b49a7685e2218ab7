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

#include <set>

#include <llsym/model_catalog.hpp>

using namespace llsym;

namespace {

const CoeffExpr x = CoeffExpr::var(Var::x);
const CoeffExpr t = CoeffExpr::var(Var::t);
const CoeffExpr lam = CoeffExpr::lambda();
const DerivIndex kDxx{0, 2, 0};
const DerivIndex kDyy{0, 0, 2};

DiffOp W(const char* s, DerivIndex d = kNoDeriv) { return DiffOp(MatExpr::parse(s), d); }
DiffOp sq(const DiffOp& a) { return compose(a, a); }

const std::set<std::string> kPrintedFailures{"free2.L5", "free4.L5", "harm.S4", "harm.S13", "harm.S17"};

}  // namespace

TEST_CASE("operator squares", "[catalog]") {
  CHECK(sq(heat_free_2x2()) == -lam * W("I", kDt) + W("I", kDxx));
  CHECK(sq(heat_free_4x4()) == lam * W("II", kDt) - W("II", kDxx));
  for (const CoeffExpr& f : {x, x * x + CoeffExpr(1), CoeffExpr(3) * x}) {
    CHECK(sq(heat_potential_4x4(f)) == lam * W("II", kDt) - W("II", kDxx) + f * f * W("II") + f.derive(Var::x) * W("XX"));
    CHECK(sq(sch_potential_8x8(f)) ==
          -lam * W("AII", kDt) - W("III", kDxx) + f * f * W("III") + f.derive(Var::x) * W("IXX"));
  }
  CHECK(sq(sch_free_4x4()) == lam * W("AI", kDt) - W("II", kDxx));
  for (const auto& g : {gammas_2x2(), gammas_4x4()}) {
    FreeModel m(g);
    CHECK(sq(m.omega()) == lam * DiffOp(g.I, kDt) + DiffOp(g.I, kDxx));
  }
  CoeffMatrix I4 = CoeffMatrix::identity(4);
  CHECK(sq(harmonic::omega()) == DiffOp(I4, kDt) - DiffOp(I4, kDxx) + x * x * DiffOp(I4) +
                                     DiffOp(detail::e(11) + detail::e(44) - detail::e(22) - detail::e(33)));
  Free2dModel d2;
  CHECK(sq(d2.omega()) == lam * W("II", kDt) + W("II", kDxx) + W("II", kDyy));
}

TEST_CASE("free Omega gamma relations in both realizations", "[catalog]") {
  for (const auto& g : {gammas_2x2(), gammas_4x4()}) {
    MatExpr I = g.I;
    CHECK(g.gp * g.gp == Rational(0) * g.I);
    CHECK(g.gm * g.gm == Rational(0) * g.I);
    CHECK(g.g3 * g.g3 == I);
    CHECK(g.gp * g.gm == Rational(1, 2) * (I + g.g3));
    CHECK(g.gm * g.gp == Rational(1, 2) * (I - g.g3));
    CHECK(g.g3 * g.gp == g.gp);
    CHECK(g.gp * g.g3 == -g.gp);
    CHECK(g.g3 * g.gm == -g.gm);
  }
  auto g4 = gammas_4x4();
  REQUIRE(g4.J);
  CHECK(*g4.J * *g4.J == -MatExpr::parse("II"));
  CHECK(*g4.J == MatExpr::parse("AA") * MatExpr::parse("AY") * MatExpr::parse("AX"));
  for (const auto& m : {g4.gp, g4.gm, g4.g3}) CHECK(*g4.J * m == m * *g4.J);
}

TEST_CASE("SQM algebra", "[catalog]") {
  for (const CoeffExpr& f : {CoeffExpr(0), CoeffExpr(5) * x, x * x}) {
    DiffOp q1 = sqm_q1(f), q2 = sqm_q2(f), h = sqm_h(f);
    CHECK(anticommutator(q1, q1) == CoeffExpr(2) * h);
    CHECK(anticommutator(q2, q2) == CoeffExpr(2) * h);
    CHECK(anticommutator(q1, q2).is_zero());
    CHECK(commutator(h, q1).is_zero());
    CHECK(commutator(h, q2).is_zero());
  }
}

TEST_CASE("every designated catalog operator has a witness", "[catalog]") {
  std::set<std::string> failing;
  for (const auto& e : catalog()) {
    if (!e.kind || e.omega_id.empty()) continue;
    DiffOp om = build(e.omega_id);
    std::vector<CoeffExpr> slots{CoeffExpr(1)};
    if (e.family) slots = {CoeffExpr(1), x, t, x * t};
    for (const auto& z : slots) {
      ModelParams p;
      p.z = z;
      auto w = is_symmetry(om, e.make(p), *e.kind);
      if (w) {
        CHECK(compose(DiffOp(w->phi), om) == bracket(*e.kind, om, e.make(p)));
      } else {
        failing.insert(e.id);
      }
    }
  }
  CHECK(failing == kPrintedFailures);
}

TEST_CASE("free supersymmetric roots and osp relations", "[catalog]") {
  for (const auto& g : {gammas_2x2(), gammas_4x4()}) {
    FreeModel m(g);
    CHECK(sq(m.Q_plus()) == -m.H());
    CHECK(sq(m.Q_minus()) == m.K());
    CHECK(m.Q_minus() == CoeffExpr::lambda_half(-1) * (m.L3() + m.lambda_w(x)));
    CHECK(m.X() == CoeffExpr::lambda_half(-1) * m.lambda_w(1) + CoeffExpr(make_rational(1, 2)) *
                                                                     CoeffExpr::lambda_half(1) * m.L1());
    CHECK(commutator(m.K(), m.omega()) == t * m.omega());
    CHECK(commutator(m.omega(), t * m.omega()) == g.gp * m.omega());
    CHECK(commutator(m.omega(), g.gp * m.omega()) == compose(m.T(), m.omega()));
    for (int s = -2; s <= 2; ++s) CHECK(commutator(m.omega(), m.P(s)).is_zero());
    CHECK(anticommutator(m.omega(), m.X()).is_zero());
    CHECK(anticommutator(m.omega(), m.X_half(1)).is_zero());
    CHECK(anticommutator(m.omega(), m.X_half(-1)).is_zero());
  }
}

TEST_CASE("J doubling of the 4x4 free symmetries", "[catalog]") {
  FreeModel m(gammas_4x4());
  DiffOp om = m.omega();
  DiffOp J(*m.gammas().J);
  for (const auto& e : catalog()) {
    if (e.omega_id != "free4.Omega" || !e.kind || kPrintedFailures.count(e.id)) continue;
    CHECK(is_symmetry(om, compose(J, build(e.id)), *e.kind));
  }
}

TEST_CASE("Schrodinger transform", "[catalog]") {
  FreeModel m(gammas_4x4());
  MatExpr J = *m.gammas().J;
  DiffOp bar = schrodinger_transform(m.omega(), J);
  CHECK(bar == DiffOp(m.gammas().gp, kDt) + lam * DiffOp(m.gammas().gm * J) + DiffOp(m.gammas().g3, kDx));
  CHECK(sq(bar) == lam * DiffOp(J, kDt) + W("II", kDxx));
  CHECK(schrodinger_transform(m.H(), J) == m.H());
  CHECK(schrodinger_transform(lam * lam * m.C(), J) == -lam * lam * m.C());
  CHECK_THROWS_AS(schrodinger_transform(m.Q_plus(), J), std::invalid_argument);
  CHECK_THROWS_AS(schrodinger_transform(W("YI"), J), std::invalid_argument);
  CHECK_THROWS_AS(schrodinger_transform(m.omega(), MatExpr::parse("XI")), std::invalid_argument);
  CHECK_THROWS_AS(schrodinger_transform(heat_free_2x2(), J), std::invalid_argument);
  auto dual = schrodinger_transform(t * m.omega(), J);
  CHECK(is_symmetry(bar, dual));
}

TEST_CASE("harmonic catalog identities", "[catalog]") {
  DiffOp om = harmonic::omega();
  CHECK(harmonic::sigma_tilde3_printed(1) == om);
  CHECK(harmonic::sigma_tilde(3, 1) == om);
  CHECK(harmonic::C() == DiffOp::identity(4));
  CHECK(harmonic::D() == CoeffExpr(make_rational(1, 4)) * DiffOp(CoeffMatrix::identity(4), kDt));
  CHECK(commutator(harmonic::D(), om).is_zero());
  CHECK(grade_of(harmonic::D(), harmonic::H()) == Rational(1));
  CHECK(grade_of(harmonic::D(), harmonic::K()) == Rational(-1));
  CHECK(grade_of(harmonic::D(), harmonic::P_plus()) == make_rational(1, 2));
  CHECK(grade_of(harmonic::D(), harmonic::P_minus()) == make_rational(-1, 2));
  CHECK(grade_of(harmonic::D(), harmonic::C()) == Rational(0));
  for (int s : {-2, 0, 2}) {
    DiffOp p = s == 2   ? CoeffExpr(2) * sq(harmonic::P_plus())
               : s == 0 ? anticommutator(harmonic::P_plus(), harmonic::P_minus())
                        : CoeffExpr(2) * sq(harmonic::P_minus());
    CHECK(commutator(om, p).is_zero());
  }
  CHECK(commutator(om, harmonic::P_plus()).is_zero());
  CHECK(commutator(om, harmonic::P_minus()).is_zero());
}

TEST_CASE("harmonic candidate root squares to r1 r2 H", "[catalog]") {
  for (int r1 : {1, -2})
    for (int r2 : {1, 3})
      for (int r3 : {0, 1}) {
        DiffOp q = harmonic::Q(r1, r2, r3);
        CHECK(sq(q) == CoeffExpr(r1 * r2) * harmonic::H());
      }
}

TEST_CASE("1+2 free catalog", "[catalog]") {
  Free2dModel m;
  auto gs = m.gammas();
  CHECK(is_clifford_set(gs, 3, 2));
  DiffOp D = m.D();
  CHECK(grade_of(D, m.H()) == Rational(1));
  CHECK(grade_of(D, m.K()) == Rational(-1));
  for (int i : {1, 2}) {
    CHECK(grade_of(D, m.P_plus(i)) == make_rational(1, 2));
    CHECK(grade_of(D, m.P_minus(i)) == make_rational(-1, 2));
    CHECK(grade_of(D, m.X(i)) == Rational(0));
  }
  CHECK(grade_of(D, m.J()) == Rational(0));
  CHECK(grade_of(D, m.X_tilde()) == Rational(0));
  CHECK(grade_of(D, m.C()) == Rational(0));
  CHECK(grade_of(D, m.Q_plus()) == make_rational(1, 2));
  CHECK(grade_of(D, m.Q_minus()) == make_rational(-1, 2));
  CHECK(commutator(D, m.omega()) == CoeffExpr(make_rational(1, 2)) * m.omega());
  CHECK(commutator(m.K(), m.omega()) == t * m.omega());
  CHECK(anticommutator(m.Q_plus(), m.omega()).is_zero());
  CHECK(anticommutator(m.X(1), m.omega()).is_zero());
  CHECK(anticommutator(m.X(2), m.omega()).is_zero());
  CHECK(anticommutator(m.Q_minus(), m.omega()) == -compose(m.gamma_plus(), m.omega()));
}

TEST_CASE("heat polynomials and solution spinors", "[catalog]") {
  CHECK(heat_polynomial(0) == CoeffExpr(1));
  CHECK(heat_polynomial(2) == lam * x * x - CoeffExpr(2) * t);
  for (int n = 0; n <= 10; ++n) {
    CoeffExpr p = heat_polynomial(n);
    CHECK((lam * p.derive(Var::t) + p.derive(Var::x, 2)).is_zero());
    CHECK(p.poly_degree() == n);
  }
  CHECK_THROWS_AS(heat_polynomial(-1), std::invalid_argument);
  for (std::size_t size : {std::size_t{2}, std::size_t{4}}) {
    FreeModel m(size == 2 ? gammas_2x2() : gammas_4x4());
    for (int n = 0; n < 10; ++n) {
      Spinor psi = heat_polynomial_spinor(n, size);
      CHECK(is_zero(llsym::apply(m.omega(), psi)));
      if (n >= 1) CHECK_FALSE(is_zero(psi));
    }
  }
  CHECK_THROWS_AS(heat_polynomial_spinor(1, 3), std::invalid_argument);
  Spinor psi0 = heat_polynomial_spinor(0, 2);
  FreeModel m(gammas_2x2());
  CHECK((psi0 == llsym::apply(m.omega(), Spinor{CoeffExpr(1), CoeffExpr(1)})));
}

TEST_CASE("catalog lookup", "[catalog]") {
  CHECK_THROWS_AS(build("nope"), std::out_of_range);
  ModelParams p;
  p.z = x;
  CHECK_THROWS_AS(build("free2.H", p), std::invalid_argument);
  CHECK(build("free2.Omega_z", p) == x * build("free2.Omega"));
  std::set<std::string> ids;
  for (const auto& e : catalog()) CHECK(ids.insert(e.id).second);
  CHECK(build("harm.S4v") == harmonic::sigma(4, true));
}
