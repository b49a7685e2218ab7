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

#ifndef LLSYM_SYMMETRY_ENGINE_HPP
#define LLSYM_SYMMETRY_ENGINE_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "diff_op.hpp"
#include "linalg.hpp"
#include "parallel.hpp"

namespace llsym {

enum class BracketKind { commutator, anticommutator };

inline const char* to_string(BracketKind k) { return k == BracketKind::commutator ? "commutator" : "anticommutator"; }

inline DiffOp bracket(BracketKind k, const DiffOp& a, const DiffOp& b) {
  return k == BracketKind::commutator ? commutator(a, b) : anticommutator(a, b);
}

/// Phi with bracket(Omega, Z) = Phi Omega.
struct SymmetryWitness {
  BracketKind kind;
  CoeffMatrix phi;
};

namespace detail {

inline std::optional<RMatrix> constant_matrix(const CoeffMatrix& m) {
  RMatrix r(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) {
      auto c = m(i, j).constant_value();
      if (!c) return std::nullopt;
      r(i, j) = *c;
    }
  return r;
}

// Gauss-Jordan over the rationals.
inline std::optional<RMatrix> invert(const RMatrix& m) {
  std::size_t n = m.size();
  RMatrix a = m, inv = RMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) return std::nullopt;
    if (p != c)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(p, j), a(c, j));
        std::swap(inv(p, j), inv(c, j));
      }
    Rational f = Rational(1) / a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) *= f;
      inv(c, j) *= f;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a(r, c) == 0) continue;
      Rational g = a(r, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(r, j) -= g * a(c, j);
        inv(r, j) -= g * inv(c, j);
      }
    }
  }
  return inv;
}

inline DiffOp unit_op(std::size_t n, const DerivIndex& d, std::size_t i, std::size_t j, const Monomial& m) {
  CoeffMatrix c(n);
  c(i, j) = CoeffExpr(m, 1);
  return DiffOp(c, d);
}

struct ExprStats {
  int min_lam = 0, max_lam = 0, degree = 0;
  std::set<Rational> rates;
  bool any = false;
  bool uses_x2 = false;
  bool non_constant = false;
};

inline ExprStats stats(const DiffOp& op) {
  ExprStats s;
  for (const auto& [d, m] : op.terms()) {
    if (d.x2 > 0) s.uses_x2 = true;
    for (std::size_t i = 0; i < op.size(); ++i)
      for (std::size_t j = 0; j < op.size(); ++j)
        for (const auto& [mono, c] : m(i, j).terms()) {
          if (!s.any) {
            s.min_lam = s.max_lam = mono.lam_half;
            s.any = true;
          }
          s.min_lam = std::min(s.min_lam, mono.lam_half);
          s.max_lam = std::max(s.max_lam, mono.lam_half);
          s.degree = std::max(s.degree, mono.poly_degree());
          s.rates.insert(mono.rate);
          if (mono.x2 > 0) s.uses_x2 = true;
          if (mono.poly_degree() > 0 || mono.rate != 0) s.non_constant = true;
        }
  }
  return s;
}

}  // namespace detail

/// Phi with compose(Phi, omega) == r, or nullopt if none exists in the closed monomial support.
inline std::optional<CoeffMatrix> factor_through(const DiffOp& omega, const DiffOp& r) {
  if (omega.size() != r.size()) throw std::invalid_argument("operator size mismatch");
  std::size_t n = omega.size();
  if (r.is_zero()) return CoeffMatrix(n);
  if (omega.is_zero()) return std::nullopt;
  for (const auto& [d, m] : r.terms())
    if (!omega.terms().count(d)) return std::nullopt;

  auto verify = [&](const CoeffMatrix& phi) -> std::optional<CoeffMatrix> {
    if (compose(DiffOp(phi), omega) == r) return phi;
    return std::nullopt;
  };

  // An invertible constant coefficient pins Phi down.
  for (const auto& [d, m] : omega.terms()) {
    auto c = detail::constant_matrix(m);
    if (!c) continue;
    auto inv = detail::invert(*c);
    if (!inv) continue;
    return verify(r.coefficient(d) * CoeffMatrix::from(*inv));
  }

  // General case: linear system on the closed candidate support.
  auto rs = detail::stats(r), os = detail::stats(omega);
  int lam_lo = rs.min_lam - os.max_lam, lam_hi = rs.max_lam - os.min_lam;
  std::set<Rational> rate_ok;
  for (const auto& a : rs.rates)
    for (const auto& b : os.rates) rate_ok.insert(a - b);
  auto admissible = [&](const Monomial& q) {
    return q.lam_half >= lam_lo && q.lam_half <= lam_hi && q.poly_degree() <= rs.degree && rate_ok.count(q.rate);
  };

  std::vector<std::vector<std::set<Monomial>>> cand(n, std::vector<std::set<Monomial>>(n));
  std::vector<std::tuple<std::size_t, std::size_t, Monomial>> work;
  auto offer = [&](std::size_t i, std::size_t k, const Monomial& q) {
    if (admissible(q) && cand[i][k].insert(q).second) work.emplace_back(i, k, q);
  };
  for (const auto& [d, rm] : r.terms()) {
    const CoeffMatrix& om = omega.terms().at(d);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (const auto& [mr, cr] : rm(i, j).terms())
          for (std::size_t k = 0; k < n; ++k)
            for (const auto& [mo, co] : om(k, j).terms())
              if (auto q = Monomial::divide(mr, mo)) offer(i, k, *q);
  }
  while (!work.empty()) {
    auto [i, k, q] = work.back();
    work.pop_back();
    for (const auto& [d, om] : omega.terms())
      for (std::size_t j = 0; j < n; ++j)
        for (const auto& [mo, co] : om(k, j).terms()) {
          Monomial p = q * mo;
          for (std::size_t k2 = 0; k2 < n; ++k2)
            for (const auto& [mo2, co2] : om(k2, j).terms())
              if (auto q2 = Monomial::divide(p, mo2)) offer(i, k2, *q2);
        }
  }

  std::vector<std::tuple<std::size_t, std::size_t, Monomial>> unknowns;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (const auto& q : cand[i][k]) unknowns.emplace_back(i, k, q);

  std::map<OpCoord, std::map<std::size_t, Rational>> lhs;
  for (std::size_t u = 0; u < unknowns.size(); ++u) {
    const auto& [i, k, q] = unknowns[u];
    for (const auto& [d, om] : omega.terms())
      for (std::size_t j = 0; j < n; ++j)
        for (const auto& [mo, co] : om(k, j).terms()) lhs[OpCoord{d, i, j, q * mo}][u] += co;
  }
  auto rc = r.coordinates();
  std::vector<std::pair<SparseRow, Rational>> system;
  std::set<OpCoord> seen;
  for (const auto& [key, row] : lhs) {
    SparseRow sr;
    for (const auto& [u, c] : row)
      if (c != 0) sr.emplace_back(u, c);
    auto it = rc.find(key);
    system.emplace_back(std::move(sr), it == rc.end() ? Rational(0) : it->second);
    seen.insert(key);
  }
  for (const auto& [key, c] : rc)
    if (!seen.count(key)) return std::nullopt;
  auto sol = solve_linear(system, unknowns.size());
  if (!sol) return std::nullopt;
  CoeffMatrix phi(n);
  for (std::size_t u = 0; u < unknowns.size(); ++u) {
    const auto& [i, k, q] = unknowns[u];
    phi(i, k).add_term(q, (*sol)[u]);
  }
  return verify(phi);
}

inline std::optional<SymmetryWitness> is_symmetry(const DiffOp& omega, const DiffOp& z, BracketKind kind) {
  if (auto phi = factor_through(omega, bracket(kind, omega, z))) return SymmetryWitness{kind, *phi};
  return std::nullopt;
}

/// Tries the commutator first, then the anticommutator.
inline std::optional<SymmetryWitness> is_symmetry(const DiffOp& omega, const DiffOp& z) {
  if (omega.size() != z.size()) throw std::invalid_argument("operator size mismatch");
  if (auto w = is_symmetry(omega, z, BracketKind::commutator)) return w;
  return is_symmetry(omega, z, BracketKind::anticommutator);
}

/// Rational weights making omega homogeneous, with sqrt(lam) of weight one and t of weight zero.
class Grading {
 public:
  Grading() = default;

  static std::optional<Grading> of(const DiffOp& omega) {
    std::size_t n = omega.size();
    // unknowns: xi, xi2, m_0..m_{n-1}, W
    std::size_t nv = n + 3;
    std::vector<std::pair<SparseRow, Rational>> system;
    for (const auto& [key, c] : omega.coordinates()) {
      std::map<std::size_t, Rational> row;
      row[0] += key.mono.x - key.deriv.x;
      row[1] += key.mono.x2 - key.deriv.x2;
      row[2 + key.col] += 1;
      row[2 + key.row] -= 1;
      row[n + 2] -= 1;
      SparseRow sr;
      for (const auto& [k, v] : row)
        if (v != 0) sr.emplace_back(k, v);
      system.emplace_back(std::move(sr), Rational(-key.mono.lam_half));
    }
    auto sol = solve_linear(system, nv);
    if (!sol) return std::nullopt;
    Grading g;
    g.xi_ = (*sol)[0];
    g.xi2_ = (*sol)[1];
    g.m_.assign(sol->begin() + 2, sol->begin() + 2 + static_cast<long>(n));
    g.w_ = (*sol)[n + 2];
    return g;
  }

  const Rational& x_weight() const { return xi_; }
  const Rational& x2_weight() const { return xi2_; }
  const Rational& omega_weight() const { return w_; }
  const std::vector<Rational>& index_weights() const { return m_; }

  /// Weight of a coordinate ignoring its lam power.
  Rational base_weight(const DerivIndex& d, std::size_t row, std::size_t col, const Monomial& m) const {
    return xi_ * (m.x - d.x) + xi2_ * (m.x2 - d.x2) + m_.at(col) - m_.at(row);
  }
  Rational weight(const OpCoord& c) const { return base_weight(c.deriv, c.row, c.col, c.mono) + c.mono.lam_half; }

  std::optional<Rational> homogeneous_weight(const DiffOp& op) const {
    std::optional<Rational> w;
    for (const auto& [key, c] : op.coordinates()) {
      Rational k = weight(key);
      if (w && *w != k) return std::nullopt;
      w = k;
    }
    return w;
  }

  /// s^k op with weight in [0, 1); throws on inhomogeneous input.
  DiffOp normalize(const DiffOp& op) const {
    if (op.is_zero()) return op;
    auto w = homogeneous_weight(op);
    if (!w) throw std::invalid_argument("operator is not homogeneous in the lambda grading");
    Rational fl = floor_of(*w);
    return op.shifted_lambda(-static_cast<int>(fl.get_num().get_si()));
  }

  static Rational floor_of(const Rational& q) {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return Rational(f);
  }

 private:
  Rational xi_ = 0, xi2_ = 0, w_ = 0;
  std::vector<Rational> m_;
};

struct AnsatzSpec {
  BracketKind kind = BracketKind::commutator;
  int max_deriv_order = 1;
  int max_poly_degree = 2;
  std::vector<Rational> exp_rates{Rational(0)};
  std::optional<int> phi_poly_degree;
};

struct SearchResult {
  std::vector<DiffOp> basis;
  Grading grading;
  std::size_t unknowns = 0;
  std::size_t subproblems = 0;
  std::string diagnostic;
};

namespace detail {

inline std::vector<DerivIndex> deriv_indices(int max_order, bool use_x2) {
  std::vector<DerivIndex> out;
  for (int a = 0; a <= max_order; ++a)
    for (int b = 0; a + b <= max_order; ++b)
      for (int c = 0; a + b + c <= max_order; ++c) {
        if (c > 0 && !use_x2) continue;
        out.push_back({a, b, c});
      }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<Monomial> poly_monomials(int degree, bool use_x2, const Rational& rate) {
  std::vector<Monomial> out;
  for (int a = 0; a <= degree; ++a)
    for (int b = 0; a + b <= degree; ++b)
      for (int c = 0; a + b + c <= degree; ++c) {
        if (c > 0 && !use_x2) continue;
        Monomial m;
        m.x = a;
        m.t = b;
        m.x2 = c;
        m.rate = rate;
        out.push_back(m);
      }
  std::sort(out.begin(), out.end());
  return out;
}

inline Rational frac_part(const Rational& q) { return q - Grading::floor_of(q); }

struct Unknown {
  OpCoord coord;
  bool is_phi;
};

}  // namespace detail

/// Basis (over Q(sqrt lam)) of the first-order operators Z in the ansatz admitting a witness Phi.
inline SearchResult ansatz_search(const DiffOp& omega, const AnsatzSpec& spec, unsigned workers = 0) {
  SearchResult res;
  std::size_t n = omega.size();
  auto os = detail::stats(omega);
  bool use_x2 = os.uses_x2;
  int d = spec.max_poly_degree;
  int phi_d = spec.phi_poly_degree ? *spec.phi_poly_degree : d + (os.non_constant ? 1 : 0);
  auto derivs = detail::deriv_indices(spec.max_deriv_order, use_x2);

  if (omega.is_zero()) {
    res.diagnostic = "omega is zero: every operator is a symmetry";
    for (const auto& r : spec.exp_rates)
      for (const auto& a : derivs)
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j)
            for (const auto& m : detail::poly_monomials(d, use_x2, r)) res.basis.push_back(detail::unit_op(n, a, i, j, m));
    return res;
  }

  auto g = Grading::of(omega);
  if (!g) throw std::invalid_argument("operator is not homogeneous in lambda; substitute a value for lambda first");
  res.grading = *g;

  std::vector<std::vector<Rational>> buckets;
  bool rate_free = os.rates.size() == 1 && *os.rates.begin() == 0;
  if (rate_free) {
    for (const auto& r : spec.exp_rates) buckets.push_back({r});
  } else {
    buckets.push_back(spec.exp_rates);
  }

  std::set<Rational> classes;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& a : derivs)
        for (const auto& m : detail::poly_monomials(d, use_x2, 0))
          classes.insert(detail::frac_part(g->base_weight(a, i, j, m)));

  std::vector<std::pair<std::size_t, Rational>> subs;
  for (std::size_t b = 0; b < buckets.size(); ++b)
    for (const auto& c : classes) subs.emplace_back(b, c);
  res.subproblems = subs.size();

  struct SubResult {
    std::vector<DiffOp> basis;
    std::size_t unknowns = 0;
  };

  auto solve_sub = [&](std::size_t s) -> SubResult {
    const auto& [b, c] = subs[s];
    std::vector<detail::Unknown> zs, phis;
    auto place = [&](const DerivIndex& a, std::size_t i, std::size_t j, Monomial m) -> std::optional<Monomial> {
      Rational k = c - g->base_weight(a, i, j, m);
      if (k.get_den() != 1) return std::nullopt;
      m.lam_half = static_cast<int>(k.get_num().get_si());
      return m;
    };
    for (const auto& r : buckets[b]) {
      for (const auto& a : derivs)
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j)
            for (const auto& m : detail::poly_monomials(d, use_x2, r))
              if (auto pm = place(a, i, j, m)) zs.push_back({OpCoord{a, i, j, *pm}, false});
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          for (const auto& m : detail::poly_monomials(phi_d, use_x2, r))
            if (auto pm = place(kNoDeriv, i, j, m)) phis.push_back({OpCoord{kNoDeriv, i, j, *pm}, true});
    }
    std::sort(zs.begin(), zs.end(), [](const auto& a, const auto& b2) { return a.coord < b2.coord; });
    std::size_t nz = zs.size();
    std::vector<detail::Unknown> all = zs;
    all.insert(all.end(), phis.begin(), phis.end());

    std::map<OpCoord, SparseRow> rows;
    for (std::size_t u = 0; u < all.size(); ++u) {
      const auto& k = all[u].coord;
      DiffOp unit = detail::unit_op(n, k.deriv, k.row, k.col, k.mono);
      DiffOp img = all[u].is_phi ? -compose(unit, omega) : bracket(spec.kind, omega, unit);
      for (const auto& [key, v] : img.coordinates()) rows[key].emplace_back(u, v);
    }
    std::vector<SparseRow> mat;
    mat.reserve(rows.size());
    for (auto& [key, r] : rows) mat.push_back(std::move(r));
    auto ns = nullspace(mat, all.size());

    RowEchelon ech;
    for (const auto& v : ns) {
      SparseRow zpart;
      for (const auto& [col, val] : v)
        if (col < nz) zpart.emplace_back(col, val);
      if (!zpart.empty()) ech.insert(std::move(zpart));
    }
    SubResult out;
    out.unknowns = all.size();
    for (const auto& [pc, prow] : ech.pivots()) {
      std::map<OpCoord, Rational> coords;
      for (const auto& [col, val] : prow) coords[zs[col].coord] = val;
      out.basis.push_back(DiffOp::from_coordinates(n, coords));
    }
    return out;
  };

  auto parts = parallel_map<SubResult>(subs.size(), solve_sub, workers);
  for (auto& p : parts) {
    res.unknowns += p.unknowns;
    for (auto& op : p.basis) res.basis.push_back(std::move(op));
  }
  return res;
}

/// Membership of z in the span of basis with Laurent-polynomial coefficients in sqrt(lam).
inline bool span_contains(const std::vector<DiffOp>& basis, const DiffOp& z) {
  if (z.is_zero()) return true;
  if (basis.empty()) return false;
  auto zs = detail::stats(z);
  int blo = 0, bhi = 0;
  bool any = false;
  for (const auto& b : basis) {
    auto s = detail::stats(b);
    if (!s.any) continue;
    blo = any ? std::min(blo, s.min_lam) : s.min_lam;
    bhi = any ? std::max(bhi, s.max_lam) : s.max_lam;
    any = true;
  }
  if (!any) return false;
  LinearSpan<OpCoord> span;
  for (int k = zs.min_lam - bhi - 2; k <= zs.max_lam - blo + 2; ++k)
    for (const auto& b : basis) span.insert(b.shifted_lambda(k).coordinates());
  return span.contains(z.coordinates());
}

/// Members z*F of a function family that fit inside the ansatz.
inline std::vector<DiffOp> family_members(const DiffOp& family, const AnsatzSpec& spec) {
  auto fs = detail::stats(family);
  std::vector<DiffOp> out;
  if (family.order() > spec.max_deriv_order) return out;
  int room = spec.max_poly_degree - fs.degree;
  if (room < 0) return out;
  for (const auto& r : spec.exp_rates)
    for (const auto& m : detail::poly_monomials(room, fs.uses_x2, r)) out.push_back(CoeffExpr(m, 1) * family);
  return out;
}

/// Rank over Q(sqrt lam) of homogeneous operators.
inline std::size_t graded_rank(const std::vector<DiffOp>& ops, const Grading& g) {
  LinearSpan<OpCoord> span;
  for (const auto& op : ops)
    if (!op.is_zero()) span.insert(g.normalize(op).coordinates());
  return span.rank();
}

/// dim span(basis) modulo the family members, over Q(sqrt lam).
inline std::size_t quotient_dimension(const SearchResult& res, const AnsatzSpec& spec,
                                      const std::vector<DiffOp>& families) {
  std::vector<DiffOp> members;
  for (const auto& f : families)
    for (auto& m : family_members(f, spec)) members.push_back(std::move(m));
  std::vector<DiffOp> all = res.basis;
  all.insert(all.end(), members.begin(), members.end());
  return graded_rank(all, res.grading) - graded_rank(members, res.grading);
}

}  // namespace llsym

#endif  // LLSYM_SYMMETRY_ENGINE_HPP
