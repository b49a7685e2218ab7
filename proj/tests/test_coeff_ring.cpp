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

#include <llsym/coeff_ring.hpp>

#include "generators.hpp"

using namespace llsym;

namespace {
const CoeffExpr x = CoeffExpr::var(Var::x);
const CoeffExpr t = CoeffExpr::var(Var::t);
const CoeffExpr lam = CoeffExpr::lambda();
}  // namespace

TEST_CASE("add: inverses, disjoint monomials, like terms", "[coeff_ring]") {
  CHECK((x + (-x)).is_zero());
  CHECK((lam * x * x + (-2 * t)).str() == "-2*t + lam*x^2");
  CoeffExpr e = CoeffExpr::exp_t(2) * x;
  CHECK((e + e) == Rational(2) * e);
  CHECK((e + e).str() == "2*x*exp(2*t)");
}

TEST_CASE("mul: exponent cancellation and expansion", "[coeff_ring]") {
  CHECK(CoeffExpr::exp_t(2) * CoeffExpr::exp_t(-2) == CoeffExpr(1));
  CHECK(x * lam == lam * x);
  CHECK((x + t) * (x - t) == x * x - t * t);
  CHECK(CoeffExpr::lambda_half(1) * CoeffExpr::lambda_half(1) == lam);
  CHECK(CoeffExpr::lambda_half(-1) * CoeffExpr::lambda_half(1) == CoeffExpr(1));
}

TEST_CASE("derive: exponential, power rule, heat polynomial", "[coeff_ring]") {
  CHECK((CoeffExpr::exp_t(4) * x).derive(Var::t) == Rational(4) * CoeffExpr::exp_t(4) * x);
  CoeffExpr p = lam * x * x - 2 * t;
  CHECK(p.derive(Var::x) == Rational(2) * lam * x);
  CoeffExpr heat = lam * p.derive(Var::t) + p.derive(Var::x, 2);
  CHECK(heat.is_zero());
  CHECK((t * t * CoeffExpr::exp_t(3)).derive(Var::t) ==
        Rational(2) * t * CoeffExpr::exp_t(3) + Rational(3) * t * t * CoeffExpr::exp_t(3));
  CHECK(CoeffExpr::var(Var::x2, 2).derive(Var::x2) == Rational(2) * CoeffExpr::var(Var::x2));
  CHECK(x.derive(Var::x2).is_zero());
}

TEST_CASE("evaluate_lambda substitutes the ring variable", "[coeff_ring]") {
  CoeffExpr e = lam * x + CoeffExpr::lambda_half(1) * t;
  CHECK(e.evaluate_lambda(1) == x + t);
  CHECK(e.evaluate_lambda(4) == Rational(4) * x + Rational(2) * t);
  CHECK_THROWS_AS(e.evaluate_lambda(2), std::domain_error);
}

TEST_CASE("text rendering is canonical and parses back", "[coeff_ring]") {
  CHECK(CoeffExpr().str() == "0");
  CHECK(CoeffExpr::parse("-1/2*lam*x^2 + t*exp(-4*t) + lam^(-1/2)").str() ==
        "lam^(-1/2) + t*exp(-4*t) - 1/2*lam*x^2");
  CHECK(CoeffExpr::parse("(x+t)*(x-t)") == x * x - t * t);
  CHECK(CoeffExpr::parse("x/lam") == CoeffExpr::lambda(-1) * x);
  CHECK_THROWS_AS(CoeffExpr::parse("x/(x+1)"), ParseError);
  CHECK_THROWS_AS(CoeffExpr::parse("y"), ParseError);
  CHECK_THROWS_AS(CoeffExpr::parse("exp(x)"), ParseError);
}

TEST_CASE("ring axioms and Leibniz rule on random expressions", "[coeff_ring][property]") {
  testing::Gen gen(20261014);
  for (int trial = 0; trial < 200; ++trial) {
    CoeffExpr a = gen.expr(), b = gen.expr(), c = gen.expr();
    REQUIRE((a * b) * c == a * (b * c));
    REQUIRE(a * (b + c) == a * b + a * c);
    REQUIRE(a * b == b * a);
    REQUIRE(a + b == b + a);
    for (Var v : {Var::t, Var::x}) REQUIRE((a * b).derive(v) == a.derive(v) * b + a * b.derive(v));
    REQUIRE(a.derive(Var::t).derive(Var::x) == a.derive(Var::x).derive(Var::t));
    REQUIRE(CoeffExpr::parse(a.str()) == a);
    REQUIRE(CoeffExpr::parse(CoeffExpr::parse(a.str()).str()).str() == a.str());
  }
}
