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

#ifndef LLSYM_COEFF_RING_HPP
#define LLSYM_COEFF_RING_HPP

#include <cctype>
#include <compare>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "rational.hpp"

namespace llsym {

/// Independent variables of the coefficient ring.
enum class Var { t, x, x2 };

/// lam^(half/2) * x^x * t^t * x2^x2 * exp(rate*t).
///
/// The lambda exponent is stored in half units so that the normalisations
/// 1/sqrt(lam) of the supercharges live in the same ring. It may be negative.
struct Monomial {
  int lam_half = 0;
  int x = 0;
  int t = 0;
  int x2 = 0;
  Rational rate = 0;

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.lam_half == b.lam_half && a.x == b.x && a.t == b.t && a.x2 == b.x2 &&
           a.rate == b.rate;
  }
  friend bool operator<(const Monomial& a, const Monomial& b) {
    if (a.lam_half != b.lam_half) return a.lam_half < b.lam_half;
    if (a.x != b.x) return a.x < b.x;
    if (a.t != b.t) return a.t < b.t;
    if (a.x2 != b.x2) return a.x2 < b.x2;
    return cmp(a.rate, b.rate) < 0;
  }

  Monomial operator*(const Monomial& o) const {
    return Monomial{lam_half + o.lam_half, x + o.x, t + o.t, x2 + o.x2, rate + o.rate};
  }

  bool is_one() const { return lam_half == 0 && x == 0 && t == 0 && x2 == 0 && rate == 0; }
  int poly_degree() const { return x + t + x2; }

  /// a / b when every polynomial exponent stays non-negative.
  static std::optional<Monomial> divide(const Monomial& a, const Monomial& b) {
    Monomial q{a.lam_half - b.lam_half, a.x - b.x, a.t - b.t, a.x2 - b.x2, a.rate - b.rate};
    if (q.x < 0 || q.t < 0 || q.x2 < 0) return std::nullopt;
    return q;
  }
};

/// Finite rational combination of monomials, kept canonical (no zero terms).
class CoeffExpr {
 public:
  using TermMap = std::map<Monomial, Rational>;

  CoeffExpr() = default;
  CoeffExpr(const Rational& c) {  // NOLINT(google-explicit-constructor)
    if (c != 0) terms_.emplace(Monomial{}, c);
  }
  CoeffExpr(long c) : CoeffExpr(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  CoeffExpr(int c) : CoeffExpr(Rational(c)) {}   // NOLINT(google-explicit-constructor)
  CoeffExpr(const Monomial& m, const Rational& c) {
    if (c != 0) terms_.emplace(m, c);
  }

  static CoeffExpr var(Var v, int power = 1) {
    Monomial m;
    switch (v) {
      case Var::t: m.t = power; break;
      case Var::x: m.x = power; break;
      case Var::x2: m.x2 = power; break;
    }
    return CoeffExpr(m, 1);
  }
  /// lam^k for integer k.
  static CoeffExpr lambda(int power = 1) { return lambda_half(2 * power); }
  /// lam^(k/2).
  static CoeffExpr lambda_half(int half_power) {
    Monomial m;
    m.lam_half = half_power;
    return CoeffExpr(m, 1);
  }
  static CoeffExpr exp_t(const Rational& rate) {
    Monomial m;
    m.rate = rate;
    return CoeffExpr(m, 1);
  }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Rational value when the expression is a constant.
  std::optional<Rational> constant_value() const {
    if (terms_.empty()) return Rational(0);
    if (terms_.size() == 1 && terms_.begin()->first.is_one()) return terms_.begin()->second;
    return std::nullopt;
  }

  void add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  CoeffExpr& operator+=(const CoeffExpr& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  CoeffExpr& operator-=(const CoeffExpr& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  CoeffExpr& operator*=(const Rational& s) {
    if (s == 0) {
      terms_.clear();
    } else {
      for (auto& [m, c] : terms_) c *= s;
    }
    return *this;
  }

  /// this += a * b without materialising the product.
  void add_product(const CoeffExpr& a, const CoeffExpr& b) {
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) add_term(ma * mb, ca * cb);
  }

  friend CoeffExpr operator+(CoeffExpr a, const CoeffExpr& b) { return a += b; }
  friend CoeffExpr operator-(CoeffExpr a, const CoeffExpr& b) { return a -= b; }
  friend CoeffExpr operator-(CoeffExpr a) { return a *= Rational(-1); }
  friend CoeffExpr operator*(const CoeffExpr& a, const CoeffExpr& b) {
    CoeffExpr r;
    r.add_product(a, b);
    return r;
  }
  friend bool operator==(const CoeffExpr& a, const CoeffExpr& b) { return a.terms_ == b.terms_; }

  /// Multiply by lam^(half/2).
  CoeffExpr shifted_lambda(int half) const {
    CoeffExpr r;
    for (const auto& [m, c] : terms_) {
      Monomial n = m;
      n.lam_half += half;
      r.terms_.emplace_hint(r.terms_.end(), n, c);
    }
    return r;
  }

  CoeffExpr derive(Var v) const {
    CoeffExpr r;
    for (const auto& [m, c] : terms_) {
      switch (v) {
        case Var::x:
          if (m.x > 0) {
            Monomial n = m;
            n.x -= 1;
            r.add_term(n, c * m.x);
          }
          break;
        case Var::x2:
          if (m.x2 > 0) {
            Monomial n = m;
            n.x2 -= 1;
            r.add_term(n, c * m.x2);
          }
          break;
        case Var::t:
          if (m.t > 0) {
            Monomial n = m;
            n.t -= 1;
            r.add_term(n, c * m.t);
          }
          if (m.rate != 0) r.add_term(m, c * m.rate);
          break;
      }
    }
    return r;
  }

  CoeffExpr derive(Var v, int times) const {
    CoeffExpr r = *this;
    for (int i = 0; i < times && !r.is_zero(); ++i) r = r.derive(v);
    return r;
  }

  /// Substitute lam = value. Odd half powers need value to be a rational square.
  CoeffExpr evaluate_lambda(const Rational& value) const;

  /// Range of lam half-exponents present; nullopt for zero.
  std::optional<std::pair<int, int>> lambda_range() const {
    if (terms_.empty()) return std::nullopt;
    int lo = terms_.begin()->first.lam_half, hi = lo;
    for (const auto& [m, c] : terms_) {
      lo = std::min(lo, m.lam_half);
      hi = std::max(hi, m.lam_half);
    }
    return std::pair{lo, hi};
  }

  int poly_degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.poly_degree());
    return d;
  }

  std::string str() const;
  static CoeffExpr parse(std::string_view text);

 private:
  TermMap terms_;
};

inline std::ostream& operator<<(std::ostream& os, const CoeffExpr& e) { return os << e.str(); }

namespace detail {

inline bool rational_sqrt(const Rational& v, Rational& out) {
  if (v < 0) return false;
  mpz_class n = v.get_num(), d = v.get_den();
  mpz_class rn = sqrt(n), rd = sqrt(d);
  if (rn * rn != n || rd * rd != d) return false;
  out = Rational(rn, rd);
  out.canonicalize();
  return true;
}

inline Rational rational_pow(const Rational& base, int e) {
  Rational r = 1;
  Rational b = e < 0 ? Rational(1) / base : base;
  for (int i = 0; i < (e < 0 ? -e : e); ++i) r *= b;
  return r;
}

inline std::string monomial_factors(const Monomial& m) {
  std::string out;
  auto push = [&out](const std::string& f) {
    if (!out.empty()) out += '*';
    out += f;
  };
  if (m.lam_half != 0) {
    if (m.lam_half % 2 == 0) {
      int k = m.lam_half / 2;
      if (k == 1)
        push("lam");
      else if (k > 0)
        push("lam^" + std::to_string(k));
      else
        push("lam^(" + std::to_string(k) + ")");
    } else {
      push("lam^(" + std::to_string(m.lam_half) + "/2)");
    }
  }
  auto var = [&push](const char* name, int p) {
    if (p == 1)
      push(name);
    else if (p > 1)
      push(std::string(name) + "^" + std::to_string(p));
  };
  var("x", m.x);
  var("t", m.t);
  var("x2", m.x2);
  if (m.rate != 0) {
    if (m.rate == 1)
      push("exp(t)");
    else if (m.rate == -1)
      push("exp(-t)");
    else
      push("exp(" + m.rate.get_str() + "*t)");
  }
  return out;
}

/// Recursive-descent parser for the canonical text form (and hand-written variants).
class ExprParser {
 public:
  explicit ExprParser(std::string_view s) : s_(s) {}

  CoeffExpr parse_all() {
    CoeffExpr e = parse_sum();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("expression '" + std::string(s_) + "': " + what + " at offset " +
                     std::to_string(pos_));
  }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  long parse_int() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return std::stol(std::string(s_.substr(start, pos_ - start)));
  }

  CoeffExpr parse_sum() {
    CoeffExpr acc = parse_product();
    for (;;) {
      if (accept('+'))
        acc += parse_product();
      else if (accept('-'))
        acc -= parse_product();
      else
        return acc;
    }
  }

  CoeffExpr parse_product() {
    CoeffExpr acc = parse_unary();
    for (;;) {
      if (accept('*')) {
        acc = acc * parse_unary();
      } else if (accept('/')) {
        CoeffExpr d = parse_unary();
        acc = acc * invert_monomial(d);
      } else {
        return acc;
      }
    }
  }

  CoeffExpr invert_monomial(const CoeffExpr& d) {
    if (d.size() != 1) fail("division by a non-monomial");
    const auto& [m, c] = *d.terms().begin();
    if (m.x != 0 || m.t != 0 || m.x2 != 0) fail("division by a polynomial variable");
    Monomial inv;
    inv.lam_half = -m.lam_half;
    inv.rate = -m.rate;
    return CoeffExpr(inv, Rational(1) / c);
  }

  CoeffExpr parse_unary() {
    if (accept('-')) return -parse_unary();
    if (accept('+')) return parse_unary();
    return parse_power();
  }

  // Exponent in half units when `half` is set, otherwise a plain integer.
  int parse_exponent(bool allow_half) {
    skip_ws();
    if (accept('(')) {
      bool neg = accept('-');
      long num = parse_int();
      long den = 1;
      if (accept('/')) den = parse_int();
      expect(')');
      if (den != 1 && !(allow_half && den == 2)) fail("unsupported fractional exponent");
      long half = (den == 2 ? num : 2 * num) * (neg ? -1 : 1);
      return static_cast<int>(allow_half ? half : half / 2);
    }
    bool neg = accept('-');
    long v = parse_int();
    return static_cast<int>((allow_half ? 2 * v : v) * (neg ? -1 : 1));
  }

  CoeffExpr parse_power() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) {
      while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      std::string id(s_.substr(start, pos_ - start));
      if (id == "lam") {
        int half = 2;
        if (accept('^')) half = parse_exponent(true);
        return CoeffExpr::lambda_half(half);
      }
      if (id == "exp") {
        expect('(');
        CoeffExpr arg = parse_sum();
        expect(')');
        if (arg.is_zero()) return CoeffExpr(1);
        if (arg.size() != 1) fail("exp argument must be q*t");
        const auto& [m, c] = *arg.terms().begin();
        if (m.t != 1 || m.x != 0 || m.x2 != 0 || m.lam_half != 0 || m.rate != 0)
          fail("exp argument must be q*t");
        CoeffExpr e = CoeffExpr::exp_t(c);
        return raise(e);
      }
      CoeffExpr base;
      if (id == "x")
        base = CoeffExpr::var(Var::x);
      else if (id == "t")
        base = CoeffExpr::var(Var::t);
      else if (id == "x2")
        base = CoeffExpr::var(Var::x2);
      else
        fail("unknown symbol '" + id + "'");
      return raise(base);
    }
    CoeffExpr base;
    if (accept('(')) {
      base = parse_sum();
      expect(')');
    } else {
      base = CoeffExpr(Rational(parse_int()));
    }
    return raise(base);
  }

  CoeffExpr raise(const CoeffExpr& base) {
    if (!accept('^')) return base;
    int e = parse_exponent(false);
    if (e < 0) {
      CoeffExpr inv = invert_monomial(base);
      CoeffExpr r(1);
      for (int i = 0; i < -e; ++i) r = r * inv;
      return r;
    }
    CoeffExpr r(1);
    for (int i = 0; i < e; ++i) r = r * base;
    return r;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline CoeffExpr CoeffExpr::evaluate_lambda(const Rational& value) const {
  CoeffExpr r;
  Rational root;
  bool have_root = detail::rational_sqrt(value, root);
  for (const auto& [m, c] : terms_) {
    Rational f;
    if (m.lam_half % 2 == 0) {
      if (value == 0 && m.lam_half < 0) throw std::domain_error("negative lambda power at lam=0");
      f = detail::rational_pow(value, m.lam_half / 2);
    } else {
      if (!have_root || root == 0)
        throw std::domain_error("half-integer lambda power needs a rational square root");
      f = detail::rational_pow(root, m.lam_half);
    }
    Monomial n = m;
    n.lam_half = 0;
    r.add_term(n, c * f);
  }
  return r;
}

inline std::string CoeffExpr::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational mag = abs(c);
    bool neg = c < 0;
    if (first) {
      if (neg) out += '-';
    } else {
      out += neg ? " - " : " + ";
    }
    first = false;
    std::string factors = detail::monomial_factors(m);
    if (factors.empty()) {
      out += mag.get_str();
    } else if (mag == 1) {
      out += factors;
    } else {
      out += mag.get_str() + "*" + factors;
    }
  }
  return out;
}

inline CoeffExpr CoeffExpr::parse(std::string_view text) { return detail::ExprParser(text).parse_all(); }

inline CoeffExpr operator""_ce(const char* s, std::size_t n) { return CoeffExpr::parse({s, n}); }

}  // namespace llsym

#endif  // LLSYM_COEFF_RING_HPP
