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

// Small hand-rolled generators used by the property-style tests.

#ifndef LLSYM_TESTS_GENERATORS_HPP
#define LLSYM_TESTS_GENERATORS_HPP

#include <random>

#include <llsym/coeff_ring.hpp>
#include <llsym/diff_op.hpp>

namespace llsym::testing {

class Gen {
 public:
  explicit Gen(unsigned seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  Rational small_rational() {
    int num = uniform(-4, 4);
    int den = uniform(1, 3);
    return make_rational(num, den);
  }

  Monomial monomial(bool with_x2 = false) {
    Monomial m;
    m.lam_half = uniform(-1, 2);
    m.x = uniform(0, 2);
    m.t = uniform(0, 2);
    m.x2 = with_x2 ? uniform(0, 1) : 0;
    static const int rates[] = {0, 0, 2, -2, 4};
    m.rate = rates[uniform(0, 4)];
    return m;
  }

  CoeffExpr expr(int max_terms = 3, bool with_x2 = false) {
    CoeffExpr e;
    int n = uniform(0, max_terms);
    for (int i = 0; i < n; ++i) e.add_term(monomial(with_x2), small_rational());
    return e;
  }

  /// Random first-order (or up to `order`) operator of size n with sparse entries.
  DiffOp op(std::size_t n, int order = 1, bool with_x2 = false) {
    DiffOp r(n);
    std::vector<DerivIndex> ds = {kNoDeriv, kDt, kDx};
    if (with_x2) ds.push_back(kDx2);
    if (order >= 2) ds.push_back({0, 2, 0});
    for (const auto& d : ds) {
      CoeffMatrix m(n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (uniform(0, 2) == 0) m(i, j) = expr(2, with_x2);
      r.add_term(d, m);
    }
    return r;
  }

 private:
  std::mt19937 rng_;
};

}  // namespace llsym::testing

#endif  // LLSYM_TESTS_GENERATORS_HPP
