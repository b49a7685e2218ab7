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

#include <llsym/symmetry_engine.hpp>

#include "generators.hpp"

using namespace llsym;

namespace {

const CoeffExpr x = CoeffExpr::var(Var::x);
const CoeffExpr t = CoeffExpr::var(Var::t);
const CoeffExpr lam = CoeffExpr::lambda();

DiffOp M(const char* s, DerivIndex d = kNoDeriv) { return DiffOp(MatExpr::parse(s), d); }

DiffOp free_omega() { return M("1/2*Y + 1/2*A", kDt) + lam * M("1/2*Y - 1/2*A") + M("X", kDx); }

// Dense rank over the rationals, written independently of linalg.hpp.
std::size_t dense_rank(std::vector<std::vector<Rational>> a) {
  std::size_t rank = 0;
  std::size_t cols = a.empty() ? 0 : a[0].size();
  for (std::size_t c = 0; c < cols && rank < a.size(); ++c) {
    std::size_t p = rank;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[rank]);
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == rank || a[r][c] == 0) continue;
      Rational f = a[r][c] / a[rank][c];
      for (std::size_t k = c; k < cols; ++k) a[r][k] -= f * a[rank][k];
    }
    ++rank;
  }
  return rank;
}

// Dimension of {Z : [Omega, Z] = Phi Omega} by brute force over unit operators, numeric lambda only.
std::size_t brute_force_dimension(const DiffOp& omega, BracketKind kind, int degree, int phi_degree) {
  std::size_t n = omega.size();
  std::vector<DiffOp> zimg, pimg;
  for (DerivIndex d : {kNoDeriv, kDt, kDx})
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (int a = 0; a <= degree; ++a)
          for (int b = 0; a + b <= degree; ++b) {
            DiffOp u(CoeffExpr::var(Var::x, a) * CoeffExpr::var(Var::t, b) * CoeffMatrix::unit(n, i, j), d);
            zimg.push_back(bracket(kind, omega, u));
          }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (int a = 0; a <= phi_degree; ++a)
        for (int b = 0; a + b <= phi_degree; ++b) {
          DiffOp u(CoeffExpr::var(Var::x, a) * CoeffExpr::var(Var::t, b) * CoeffMatrix::unit(n, i, j));
          pimg.push_back(compose(u, omega));
        }
  std::map<OpCoord, std::size_t> rows;
  for (const auto* v : {&zimg, &pimg})
    for (const auto& op : *v)
      for (const auto& [k, c] : op.coordinates()) rows.emplace(k, rows.size());
  auto column_matrix = [&](const std::vector<const DiffOp*>& cols) {
    std::vector<std::vector<Rational>> m(rows.size(), std::vector<Rational>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c)
      for (const auto& [k, v] : cols[c]->coordinates()) m[rows.at(k)][c] = v;
    return m;
  };
  std::vector<const DiffOp*> all, phis;
  for (const auto& op : zimg) all.push_back(&op);
  for (const auto& op : pimg) {
    all.push_back(&op);
    phis.push_back(&op);
  }
  std::size_t null_all = all.size() - dense_rank(column_matrix(all));
  std::size_t null_phi = phis.size() - dense_rank(column_matrix(phis));
  return null_all - null_phi;
}

}  // namespace

TEST_CASE("factor_through recovers a constant-invertible witness", "[symmetry]") {
  DiffOp om = free_omega();
  testing::Gen g(7);
  for (int rep = 0; rep < 20; ++rep) {
    CoeffMatrix phi(2);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) phi(i, j) = g.expr(2);
    auto got = factor_through(om, compose(DiffOp(phi), om));
    REQUIRE(got);
    CHECK(*got == phi);
  }
  CHECK_FALSE(factor_through(om, M("I", kDx)));
  CHECK_FALSE(factor_through(om, M("I", DerivIndex{0, 2, 0})));
  CHECK(factor_through(om, DiffOp::zero(2)) == CoeffMatrix(2));
  CHECK_THROWS_AS(factor_through(om, DiffOp::identity(4)), std::invalid_argument);
}

TEST_CASE("factor_through general path without invertible constant coefficient", "[symmetry]") {
  // Every coefficient is singular or non-constant.
  DiffOp om = x * M("1/2*I + 1/2*X", kDx) + M("1/2*I - 1/2*X", kDt) + t * M("1/2*Y + 1/2*A");
  testing::Gen g(11);
  for (int rep = 0; rep < 15; ++rep) {
    CoeffMatrix phi(2);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) {
        CoeffExpr e;
        for (int k = 0; k < 2; ++k) {
          Monomial m;
          m.x = g.uniform(0, 1);
          m.t = g.uniform(0, 1);
          e.add_term(m, g.small_rational());
        }
        phi(i, j) = e;
      }
    DiffOp r = compose(DiffOp(phi), om);
    auto got = factor_through(om, r);
    REQUIRE(got);
    CHECK(compose(DiffOp(*got), om) == r);
  }
  CHECK_FALSE(factor_through(om, M("I", kDx)));
}

TEST_CASE("is_symmetry on simple cases", "[symmetry]") {
  DiffOp om = free_omega();
  auto w = is_symmetry(om, DiffOp::identity(2));
  REQUIRE(w);
  CHECK(w->kind == BracketKind::commutator);
  CHECK(w->phi == CoeffMatrix(2));
  auto tw = is_symmetry(om, t * om, BracketKind::commutator);
  REQUIRE(tw);
  CHECK(tw->phi == CoeffMatrix::from(MatExpr::parse("1/2*Y + 1/2*A")));
  auto aw = is_symmetry(om, DiffOp::identity(2), BracketKind::anticommutator);
  REQUIRE(aw);
  CHECK(aw->phi == CoeffMatrix::from(MatExpr::parse("2*I")));
  CHECK_FALSE(is_symmetry(om, M("I", kDt), BracketKind::anticommutator));
  CHECK_FALSE(is_symmetry(om, x * M("I", kDx)));
}

TEST_CASE("lambda grading", "[symmetry]") {
  DiffOp om = free_omega();
  auto g = Grading::of(om);
  REQUIRE(g);
  CHECK(g->omega_weight() == 1);
  CHECK(g->x_weight() == -1);
  CHECK(g->homogeneous_weight(om) == Rational(1));
  CHECK(g->homogeneous_weight(M("I", kDt)) == Rational(0));
  CHECK(g->homogeneous_weight(M("I", kDx)) == Rational(1));
  CHECK_FALSE(g->homogeneous_weight(M("I", kDt) + M("I", kDx)));
  CHECK(g->normalize(lam * lam * om) == om.shifted_lambda(-1));
  CHECK_FALSE(Grading::of(om + lam * M("I") + M("I")));
  CHECK_THROWS_AS(ansatz_search(om + lam * M("I") + M("I"), AnsatzSpec{}), std::invalid_argument);
}

TEST_CASE("free 2x2 searches", "[symmetry]") {
  DiffOp om = free_omega();
  DiffOp lt = M("1/2*Y + 1/2*A", kDx) - CoeffExpr(make_rational(1, 2)) * lam * M("I + X");
  for (auto kind : {BracketKind::commutator, BracketKind::anticommutator}) {
    AnsatzSpec spec;
    spec.kind = kind;
    auto res = ansatz_search(om, spec);
    CHECK(res.basis.size() == 12);
    for (const auto& z : res.basis) CHECK(is_symmetry(om, z, kind));
    DiffOp family = kind == BracketKind::commutator ? om : lt;
    CHECK(quotient_dimension(res, spec, {family}) == 6);
    for (const auto& m : family_members(family, spec)) CHECK(span_contains(res.basis, m));
  }
}

TEST_CASE("search basis is complete against brute force at numeric lambda", "[symmetry]") {
  for (int lv : {1, 2})
    for (auto kind : {BracketKind::commutator, BracketKind::anticommutator})
      for (int deg : {0, 1}) {
        DiffOp om = free_omega().evaluate_lambda(lv);
        AnsatzSpec spec;
        spec.kind = kind;
        spec.max_poly_degree = deg;
        auto res = ansatz_search(om, spec);
        CAPTURE(lv, to_string(kind), deg);
        CHECK(res.basis.size() == brute_force_dimension(om, kind, deg, deg));
        AnsatzSpec sym = spec;
        CHECK(ansatz_search(free_omega(), sym).basis.size() == res.basis.size());
      }
}

TEST_CASE("search with exponential rates and parallel determinism", "[symmetry]") {
  DiffOp om = free_omega();
  AnsatzSpec spec;
  spec.exp_rates = {0, 2, -2};
  spec.max_poly_degree = 1;
  auto a = ansatz_search(om, spec, 1);
  auto b = ansatz_search(om, spec, 3);
  REQUIRE(a.basis.size() == b.basis.size());
  for (std::size_t i = 0; i < a.basis.size(); ++i) CHECK(a.basis[i] == b.basis[i]);
  CHECK(a.subproblems == 3);
  for (const auto& z : a.basis) CHECK(is_symmetry(om, z, BracketKind::commutator));
}

TEST_CASE("span_contains uses Laurent coefficients in sqrt(lam)", "[symmetry]") {
  DiffOp om = free_omega();
  std::vector<DiffOp> basis{lam * om, M("I", kDt)};
  CHECK(span_contains(basis, om));
  CHECK(span_contains(basis, om.shifted_lambda(3) + M("I", kDt).shifted_lambda(-1)));
  CHECK_FALSE(span_contains(basis, M("I", kDx)));
  CHECK(span_contains({}, DiffOp::zero(2)));
  CHECK_FALSE(span_contains({}, om));
}

TEST_CASE("zero omega short-circuits", "[symmetry]") {
  AnsatzSpec spec;
  spec.max_poly_degree = 0;
  auto res = ansatz_search(DiffOp::zero(2), spec);
  CHECK_FALSE(res.diagnostic.empty());
  CHECK(res.basis.size() == 12);
}
