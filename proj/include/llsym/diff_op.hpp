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

#ifndef LLSYM_DIFF_OP_HPP
#define LLSYM_DIFF_OP_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "coeff_ring.hpp"
#include "gamma_words.hpp"

namespace llsym {

/// Multi-index of a derivative d_t^t d_x^x d_x2^x2.
struct DerivIndex {
  int t = 0;
  int x = 0;
  int x2 = 0;

  int order() const { return t + x + x2; }
  DerivIndex operator+(const DerivIndex& o) const { return {t + o.t, x + o.x, x2 + o.x2}; }

  friend bool operator==(const DerivIndex&, const DerivIndex&) = default;
  // graded lex: total order first
  friend bool operator<(const DerivIndex& a, const DerivIndex& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    if (a.t != b.t) return a.t > b.t;
    if (a.x != b.x) return a.x > b.x;
    return a.x2 > b.x2;
  }

  std::string str() const {
    std::string s;
    auto put = [&s](const char* v, int p) {
      if (p == 0) return;
      if (!s.empty()) s += '*';
      s += "d_";
      s += v;
      if (p > 1) s += "^" + std::to_string(p);
    };
    put("t", t);
    put("x", x);
    put("x2", x2);
    return s;
  }
};

constexpr DerivIndex kDt{1, 0, 0};
constexpr DerivIndex kDx{0, 1, 0};
constexpr DerivIndex kDx2{0, 0, 1};
constexpr DerivIndex kNoDeriv{0, 0, 0};

/// Square matrix of coefficient-ring elements.
class CoeffMatrix {
 public:
  CoeffMatrix() = default;
  explicit CoeffMatrix(std::size_t n) : n_(n), a_(n * n) {}

  static CoeffMatrix identity(std::size_t n) {
    CoeffMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = CoeffExpr(1);
    return m;
  }
  static CoeffMatrix from(const RMatrix& r) {
    CoeffMatrix m(r.size());
    for (std::size_t i = 0; i < r.size(); ++i)
      for (std::size_t j = 0; j < r.size(); ++j) m(i, j) = CoeffExpr(r(i, j));
    return m;
  }
  static CoeffMatrix from(const MatExpr& e) { return from(e.dense()); }
  /// Matrix unit with entry 1 at (i, j), zero-based.
  static CoeffMatrix unit(std::size_t n, std::size_t i, std::size_t j) {
    CoeffMatrix m(n);
    m(i, j) = CoeffExpr(1);
    return m;
  }

  std::size_t size() const { return n_; }
  CoeffExpr& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const CoeffExpr& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  bool is_zero() const {
    for (const auto& e : a_)
      if (!e.is_zero()) return false;
    return true;
  }

  CoeffMatrix& operator+=(const CoeffMatrix& o) {
    check(o);
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
    return *this;
  }
  CoeffMatrix& operator-=(const CoeffMatrix& o) {
    check(o);
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
    return *this;
  }
  /// this += a * b
  void add_product(const CoeffMatrix& a, const CoeffMatrix& b) {
    a.check(b);
    check(a);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t k = 0; k < n_; ++k) {
        const CoeffExpr& aik = a(i, k);
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < n_; ++j) {
          const CoeffExpr& bkj = b(k, j);
          if (!bkj.is_zero()) (*this)(i, j).add_product(aik, bkj);
        }
      }
  }
  friend CoeffMatrix operator+(CoeffMatrix a, const CoeffMatrix& b) { return a += b; }
  friend CoeffMatrix operator-(CoeffMatrix a, const CoeffMatrix& b) { return a -= b; }
  friend CoeffMatrix operator*(const CoeffMatrix& a, const CoeffMatrix& b) {
    CoeffMatrix c(a.n_);
    c.add_product(a, b);
    return c;
  }
  friend CoeffMatrix operator*(const CoeffExpr& f, const CoeffMatrix& m) {
    CoeffMatrix c(m.n_);
    for (std::size_t k = 0; k < m.a_.size(); ++k) c.a_[k] = f * m.a_[k];
    return c;
  }
  friend bool operator==(const CoeffMatrix& a, const CoeffMatrix& b) { return a.n_ == b.n_ && a.a_ == b.a_; }

  CoeffMatrix derive(Var v, int times) const {
    CoeffMatrix c(n_);
    for (std::size_t k = 0; k < a_.size(); ++k) c.a_[k] = a_[k].derive(v, times);
    return c;
  }
  CoeffMatrix evaluate_lambda(const Rational& value) const {
    CoeffMatrix c(n_);
    for (std::size_t k = 0; k < a_.size(); ++k) c.a_[k] = a_[k].evaluate_lambda(value);
    return c;
  }

 private:
  void check(const CoeffMatrix& o) const {
    if (n_ != o.n_) throw std::invalid_argument("operator size mismatch");
  }

  std::size_t n_ = 0;
  std::vector<CoeffExpr> a_;
};

using Spinor = std::vector<CoeffExpr>;

/// Canonical coordinate of an operator: derivative, matrix position, monomial.
struct OpCoord {
  DerivIndex deriv;
  std::size_t row = 0;
  std::size_t col = 0;
  Monomial mono;

  friend bool operator<(const OpCoord& a, const OpCoord& b) {
    if (!(a.deriv == b.deriv)) return a.deriv < b.deriv;
    if (a.row != b.row) return a.row < b.row;
    if (a.col != b.col) return a.col < b.col;
    return a.mono < b.mono;
  }
  friend bool operator==(const OpCoord& a, const OpCoord& b) {
    return a.deriv == b.deriv && a.row == b.row && a.col == b.col && a.mono == b.mono;
  }
};

/// Matrix-valued linear differential operator, sum of M_a(x,t) d^a.
class DiffOp {
 public:
  using TermMap = std::map<DerivIndex, CoeffMatrix>;

  DiffOp() = default;
  explicit DiffOp(std::size_t n) : n_(n) {}
  DiffOp(const CoeffMatrix& m, DerivIndex d = kNoDeriv) : n_(m.size()) {  // NOLINT
    if (!m.is_zero()) terms_.emplace(d, m);
  }
  DiffOp(const MatExpr& m, DerivIndex d = kNoDeriv) : DiffOp(CoeffMatrix::from(m), d) {}  // NOLINT

  static DiffOp identity(std::size_t n) { return DiffOp(CoeffMatrix::identity(n)); }
  static DiffOp zero(std::size_t n) { return DiffOp(n); }

  std::size_t size() const { return n_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  int order() const {
    int o = 0;
    for (const auto& [d, m] : terms_) o = std::max(o, d.order());
    return o;
  }

  /// Coefficient matrix at a derivative, zero if absent.
  CoeffMatrix coefficient(const DerivIndex& d) const {
    auto it = terms_.find(d);
    return it == terms_.end() ? CoeffMatrix(n_) : it->second;
  }

  void add_term(const DerivIndex& d, const CoeffMatrix& m) {
    check_size(m.size());
    auto [it, ins] = terms_.try_emplace(d, m);
    if (!ins) {
      it->second += m;
      if (it->second.is_zero()) terms_.erase(it);
    } else if (m.is_zero()) {
      terms_.erase(it);
    }
  }

  DiffOp& operator+=(const DiffOp& o) {
    check_size(o.n_);
    for (const auto& [d, m] : o.terms_) add_term(d, m);
    return *this;
  }
  DiffOp& operator-=(const DiffOp& o) {
    check_size(o.n_);
    for (const auto& [d, m] : o.terms_) add_term(d, CoeffExpr(-1) * m);
    return *this;
  }
  friend DiffOp operator+(DiffOp a, const DiffOp& b) { return a += b; }
  friend DiffOp operator-(DiffOp a, const DiffOp& b) { return a -= b; }
  friend DiffOp operator-(const DiffOp& a) { return CoeffExpr(-1) * a; }

  /// Left multiplication of every coefficient by a scalar function.
  friend DiffOp operator*(const CoeffExpr& f, const DiffOp& a) {
    DiffOp r(a.n_);
    if (f.is_zero()) return r;
    for (const auto& [d, m] : a.terms_) r.add_term(d, f * m);
    return r;
  }
  /// Left multiplication by a function matrix.
  friend DiffOp operator*(const CoeffMatrix& f, const DiffOp& a) {
    DiffOp r(a.n_);
    for (const auto& [d, m] : a.terms_) r.add_term(d, f * m);
    return r;
  }
  friend DiffOp operator*(const MatExpr& f, const DiffOp& a) { return CoeffMatrix::from(f) * a; }

  friend bool operator==(const DiffOp& a, const DiffOp& b) { return a.n_ == b.n_ && a.terms_ == b.terms_; }

  DiffOp evaluate_lambda(const Rational& value) const {
    DiffOp r(n_);
    for (const auto& [d, m] : terms_) r.add_term(d, m.evaluate_lambda(value));
    return r;
  }
  DiffOp shifted_lambda(int half) const { return CoeffExpr::lambda_half(half) * *this; }

  std::map<OpCoord, Rational> coordinates() const {
    std::map<OpCoord, Rational> out;
    for (const auto& [d, m] : terms_)
      for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
          for (const auto& [mono, c] : m(i, j).terms()) out.emplace_hint(out.end(), OpCoord{d, i, j, mono}, c);
    return out;
  }
  static DiffOp from_coordinates(std::size_t n, const std::map<OpCoord, Rational>& coords) {
    DiffOp r(n);
    for (const auto& [k, c] : coords) {
      CoeffMatrix m(n);
      m(k.row, k.col) = CoeffExpr(k.mono, c);
      r.add_term(k.deriv, m);
    }
    return r;
  }

  std::string str() const;

  nlohmann::json to_json() const;
  static DiffOp from_json(const nlohmann::json& j);

 private:
  void check_size(std::size_t n) const {
    if (n != n_) throw std::invalid_argument("operator size mismatch");
  }

  std::size_t n_ = 0;
  TermMap terms_;
};

namespace detail {

inline long binomial(int n, int k) {
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline CoeffMatrix derive_multi(const CoeffMatrix& m, const DerivIndex& g) {
  CoeffMatrix r = m;
  if (g.t) r = r.derive(Var::t, g.t);
  if (g.x) r = r.derive(Var::x, g.x);
  if (g.x2) r = r.derive(Var::x2, g.x2);
  return r;
}

inline CoeffExpr derive_multi(const CoeffExpr& f, const DerivIndex& g) {
  CoeffExpr r = f;
  if (g.t) r = r.derive(Var::t, g.t);
  if (g.x) r = r.derive(Var::x, g.x);
  if (g.x2) r = r.derive(Var::x2, g.x2);
  return r;
}

}  // namespace detail

/// a o b, moving the derivatives of a through the coefficients of b (Leibniz).
inline DiffOp compose(const DiffOp& a, const DiffOp& b) {
  if (a.size() != b.size()) throw std::invalid_argument("operator size mismatch");
  std::size_t n = a.size();
  std::map<DerivIndex, CoeffMatrix> acc;
  for (const auto& [alpha, am] : a.terms()) {
    for (const auto& [beta, bm] : b.terms()) {
      for (int gt = 0; gt <= alpha.t; ++gt)
        for (int gx = 0; gx <= alpha.x; ++gx)
          for (int gx2 = 0; gx2 <= alpha.x2; ++gx2) {
            DerivIndex g{gt, gx, gx2};
            CoeffMatrix db = detail::derive_multi(bm, g);
            if (db.is_zero()) continue;
            long mult = detail::binomial(alpha.t, gt) * detail::binomial(alpha.x, gx) *
                        detail::binomial(alpha.x2, gx2);
            DerivIndex out{alpha.t - gt + beta.t, alpha.x - gx + beta.x, alpha.x2 - gx2 + beta.x2};
            auto [it, ins] = acc.try_emplace(out, n);
            if (mult == 1) {
              it->second.add_product(am, db);
            } else {
              it->second.add_product(CoeffExpr(mult) * am, db);
            }
          }
    }
  }
  DiffOp r(n);
  for (auto& [d, m] : acc)
    if (!m.is_zero()) r.add_term(d, m);
  return r;
}

inline DiffOp commutator(const DiffOp& a, const DiffOp& b) { return compose(a, b) - compose(b, a); }
inline DiffOp anticommutator(const DiffOp& a, const DiffOp& b) { return compose(a, b) + compose(b, a); }

inline Spinor apply(const DiffOp& op, const Spinor& psi) {
  if (psi.size() != op.size()) throw std::invalid_argument("spinor size mismatch");
  Spinor out(op.size());
  for (const auto& [d, m] : op.terms()) {
    Spinor dpsi(psi.size());
    for (std::size_t j = 0; j < psi.size(); ++j) dpsi[j] = detail::derive_multi(psi[j], d);
    for (std::size_t i = 0; i < op.size(); ++i)
      for (std::size_t j = 0; j < op.size(); ++j)
        if (!m(i, j).is_zero() && !dpsi[j].is_zero()) out[i].add_product(m(i, j), dpsi[j]);
  }
  return out;
}

inline bool is_zero(const Spinor& psi) {
  for (const auto& c : psi)
    if (!c.is_zero()) return false;
  return true;
}

/// s with [d, z] = s z exactly, if any.
inline std::optional<Rational> grade_of(const DiffOp& d, const DiffOp& z) {
  DiffOp br = commutator(d, z);
  if (z.is_zero()) return Rational(0);
  auto zc = z.coordinates();
  auto bc = br.coordinates();
  const auto& [key, zval] = *zc.begin();
  auto it = bc.find(key);
  Rational s = it == bc.end() ? Rational(0) : it->second / zval;
  if (br == s * z) return s;
  return std::nullopt;
}

inline std::string DiffOp::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first_term = true;
  for (const auto& [d, m] : terms_) {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) {
        if (m(i, j).is_zero()) continue;
        if (!first_term) out += " + ";
        first_term = false;
        out += "(" + m(i, j).str() + ")*e" + std::to_string(i + 1) + std::to_string(j + 1);
        if (d.order() > 0) out += "*" + d.str();
      }
  }
  return out;
}

inline nlohmann::json DiffOp::to_json() const {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [d, m] : terms_) {
    nlohmann::json entries = nlohmann::json::array();
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        if (!m(i, j).is_zero()) entries.push_back({i, j, m(i, j).str()});
    terms.push_back({{"deriv", {d.t, d.x, d.x2}}, {"entries", entries}});
  }
  return {{"size", n_}, {"terms", terms}};
}

inline DiffOp DiffOp::from_json(const nlohmann::json& j) {
  try {
    std::size_t n = j.at("size").get<std::size_t>();
    DiffOp r(n);
    for (const auto& term : j.at("terms")) {
      const auto& dv = term.at("deriv");
      if (dv.size() != 3) throw ParseError("deriv must have three entries");
      DerivIndex d{dv[0].get<int>(), dv[1].get<int>(), dv[2].get<int>()};
      if (d.t < 0 || d.x < 0 || d.x2 < 0) throw ParseError("negative derivative order");
      CoeffMatrix m(n);
      for (const auto& e : term.at("entries")) {
        std::size_t row = e.at(0).get<std::size_t>(), col = e.at(1).get<std::size_t>();
        if (row >= n || col >= n) throw ParseError("matrix entry out of range");
        m(row, col) += CoeffExpr::parse(e.at(2).get<std::string>());
      }
      r.add_term(d, m);
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad operator JSON: ") + e.what());
  }
}

}  // namespace llsym

#endif  // LLSYM_DIFF_OP_HPP
