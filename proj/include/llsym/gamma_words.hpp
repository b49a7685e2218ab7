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

#ifndef LLSYM_GAMMA_WORDS_HPP
#define LLSYM_GAMMA_WORDS_HPP

#include <array>
#include <cctype>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace llsym {

/// Dense square matrix over the rationals, row-major.
class RMatrix {
 public:
  RMatrix() = default;
  explicit RMatrix(std::size_t n) : n_(n), a_(n * n) {}

  static RMatrix identity(std::size_t n) {
    RMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t size() const { return n_; }
  Rational& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  bool is_zero() const {
    for (const auto& v : a_)
      if (v != 0) return false;
    return true;
  }

  friend RMatrix operator*(const RMatrix& a, const RMatrix& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("matrix size mismatch");
    RMatrix c(a.n_);
    for (std::size_t i = 0; i < a.n_; ++i)
      for (std::size_t k = 0; k < a.n_; ++k) {
        if (a(i, k) == 0) continue;
        for (std::size_t j = 0; j < a.n_; ++j) c(i, j) += a(i, k) * b(k, j);
      }
    return c;
  }
  friend RMatrix operator+(RMatrix a, const RMatrix& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("matrix size mismatch");
    for (std::size_t i = 0; i < a.a_.size(); ++i) a.a_[i] += b.a_[i];
    return a;
  }
  friend RMatrix operator-(RMatrix a, const RMatrix& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("matrix size mismatch");
    for (std::size_t i = 0; i < a.a_.size(); ++i) a.a_[i] -= b.a_[i];
    return a;
  }
  friend RMatrix operator*(const Rational& s, RMatrix a) {
    for (auto& v : a.a_) v *= s;
    return a;
  }
  friend bool operator==(const RMatrix& a, const RMatrix& b) { return a.n_ == b.n_ && a.a_ == b.a_; }

  /// Kronecker product a (x) b.
  static RMatrix kron(const RMatrix& a, const RMatrix& b) {
    RMatrix c(a.n_ * b.n_);
    for (std::size_t i = 0; i < a.n_; ++i)
      for (std::size_t j = 0; j < a.n_; ++j)
        for (std::size_t k = 0; k < b.n_; ++k)
          for (std::size_t l = 0; l < b.n_; ++l) c(i * b.n_ + k, j * b.n_ + l) = a(i, j) * b(k, l);
    return c;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Rational> a_;
};

enum class Letter : unsigned char { I = 0, X = 1, Y = 2, A = 3 };

namespace detail {

using Int2x2 = std::array<std::array<int, 2>, 2>;

constexpr Int2x2 letter_matrix(Letter l) {
  switch (l) {
    case Letter::I: return {{{1, 0}, {0, 1}}};
    case Letter::X: return {{{1, 0}, {0, -1}}};
    case Letter::Y: return {{{0, 1}, {1, 0}}};
    case Letter::A: return {{{0, 1}, {-1, 0}}};
  }
  return {};
}

constexpr Int2x2 mul2(const Int2x2& a, const Int2x2& b) {
  Int2x2 c{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  return c;
}

struct SignedLetter {
  int sign;
  Letter letter;
};

// Letter products are read off the 2x2 realisations, never typed in.
constexpr SignedLetter letter_product(Letter a, Letter b) {
  Int2x2 p = mul2(letter_matrix(a), letter_matrix(b));
  for (int l = 0; l < 4; ++l) {
    Int2x2 m = letter_matrix(static_cast<Letter>(l));
    for (int s : {1, -1}) {
      bool eq = true;
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) eq = eq && (p[i][j] == s * m[i][j]);
      if (eq) return {s, static_cast<Letter>(l)};
    }
  }
  return {0, Letter::I};
}

constexpr std::array<std::array<SignedLetter, 4>, 4> make_letter_table() {
  std::array<std::array<SignedLetter, 4>, 4> t{};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) t[a][b] = letter_product(static_cast<Letter>(a), static_cast<Letter>(b));
  return t;
}

inline constexpr auto kLetterTable = make_letter_table();

}  // namespace detail

inline char letter_char(Letter l) { return "IXYA"[static_cast<int>(l)]; }

inline Letter parse_letter(char c) {
  switch (c) {
    case 'I': return Letter::I;
    case 'X': return Letter::X;
    case 'Y': return Letter::Y;
    case 'A': return Letter::A;
    default: throw ParseError(std::string("bad gamma letter '") + c + "'");
  }
}

inline RMatrix letter_dense(Letter l) {
  RMatrix m(2);
  auto a = detail::letter_matrix(l);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m(i, j) = a[i][j];
  return m;
}

/// Tensor product of letters, leftmost letter outermost.
class GammaWord {
 public:
  GammaWord() = default;
  explicit GammaWord(std::vector<Letter> letters) : letters_(std::move(letters)) {}

  static GammaWord parse(std::string_view s) {
    if (s.empty()) throw ParseError("empty gamma word");
    std::vector<Letter> l;
    for (char c : s) l.push_back(parse_letter(c));
    return GammaWord(std::move(l));
  }
  static GammaWord identity(std::size_t length) { return GammaWord(std::vector<Letter>(length, Letter::I)); }

  std::size_t length() const { return letters_.size(); }
  std::size_t dim() const { return std::size_t{1} << letters_.size(); }
  const std::vector<Letter>& letters() const { return letters_; }

  std::string str() const {
    std::string s;
    for (Letter l : letters_) s += letter_char(l);
    return s;
  }

  RMatrix dense() const {
    RMatrix m = RMatrix::identity(1);
    for (Letter l : letters_) m = RMatrix::kron(m, letter_dense(l));
    return m;
  }

  bool is_block_diagonal() const {
    return !letters_.empty() && (letters_[0] == Letter::I || letters_[0] == Letter::X);
  }
  int count_a() const {
    int n = 0;
    for (Letter l : letters_) n += (l == Letter::A);
    return n;
  }
  bool is_symmetric() const { return count_a() % 2 == 0; }

  friend bool operator==(const GammaWord&, const GammaWord&) = default;
  friend bool operator<(const GammaWord& a, const GammaWord& b) { return a.letters_ < b.letters_; }

  /// Every word of the given length in lexicographic letter order (I < X < Y < A).
  static std::vector<GammaWord> all(std::size_t length) {
    std::vector<GammaWord> out;
    std::size_t count = std::size_t{1} << (2 * length);
    for (std::size_t code = 0; code < count; ++code) {
      std::vector<Letter> l(length);
      std::size_t c = code;
      for (std::size_t k = length; k-- > 0;) {
        l[k] = static_cast<Letter>(c & 3);
        c >>= 2;
      }
      out.emplace_back(std::move(l));
    }
    return out;
  }

 private:
  std::vector<Letter> letters_;
};

struct SignedWord {
  int sign;
  GammaWord word;
};

inline SignedWord word_product(const GammaWord& w, const GammaWord& v) {
  if (w.length() != v.length()) throw std::invalid_argument("gamma word length mismatch");
  int sign = 1;
  std::vector<Letter> out(w.length());
  for (std::size_t k = 0; k < w.length(); ++k) {
    auto p = detail::kLetterTable[static_cast<int>(w.letters()[k])][static_cast<int>(v.letters()[k])];
    sign *= p.sign;
    out[k] = p.letter;
  }
  return {sign, GammaWord(std::move(out))};
}

enum class BlockStructure { diagonal, antidiagonal };

inline BlockStructure block_structure(const GammaWord& w) {
  return w.is_block_diagonal() ? BlockStructure::diagonal : BlockStructure::antidiagonal;
}

/// Rational linear combination of equal-length words.
class MatExpr {
 public:
  MatExpr() = default;
  MatExpr(const GammaWord& w, const Rational& c = 1) : length_(w.length()) {  // NOLINT
    if (c != 0) terms_.emplace(w, c);
  }

  static MatExpr identity(std::size_t length) { return MatExpr(GammaWord::identity(length)); }
  static MatExpr zero(std::size_t length) {
    MatExpr m;
    m.length_ = length;
    return m;
  }

  /// "1/2*AA + AY - 2*XI"; a bare word counts as coefficient 1.
  static MatExpr parse(std::string_view s);

  /// Decompose a dense matrix in the word basis (words are orthogonal signed permutations).
  static MatExpr from_dense(const RMatrix& m) {
    std::size_t n = m.size();
    std::size_t len = 0;
    while ((std::size_t{1} << len) < n) ++len;
    if ((std::size_t{1} << len) != n) throw std::invalid_argument("matrix size is not a power of two");
    MatExpr out = zero(len);
    for (const auto& w : GammaWord::all(len)) {
      RMatrix d = w.dense();
      Rational c = 0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) c += d(i, j) * m(i, j);
      c /= Rational(static_cast<long>(n));
      if (c != 0) out.terms_.emplace(w, c);
    }
    return out;
  }

  std::size_t length() const { return length_; }
  std::size_t dim() const { return std::size_t{1} << length_; }
  const std::map<GammaWord, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  RMatrix dense() const {
    RMatrix m(dim());
    for (const auto& [w, c] : terms_) m = m + c * w.dense();
    return m;
  }

  MatExpr& operator+=(const MatExpr& o) {
    check(o);
    for (const auto& [w, c] : o.terms_) add(w, c);
    return *this;
  }
  MatExpr& operator-=(const MatExpr& o) {
    check(o);
    for (const auto& [w, c] : o.terms_) add(w, -c);
    return *this;
  }
  friend MatExpr operator+(MatExpr a, const MatExpr& b) { return a += b; }
  friend MatExpr operator-(MatExpr a, const MatExpr& b) { return a -= b; }
  friend MatExpr operator-(const MatExpr& a) { return Rational(-1) * a; }
  friend MatExpr operator*(const Rational& s, const MatExpr& a) {
    MatExpr r = zero(a.length_);
    if (s != 0)
      for (const auto& [w, c] : a.terms_) r.terms_.emplace(w, s * c);
    return r;
  }
  friend MatExpr operator*(const MatExpr& a, const MatExpr& b) {
    a.check(b);
    MatExpr r = zero(a.length_);
    for (const auto& [w, c] : a.terms_)
      for (const auto& [v, d] : b.terms_) {
        auto p = word_product(w, v);
        r.add(p.word, c * d * p.sign);
      }
    return r;
  }
  friend bool operator==(const MatExpr& a, const MatExpr& b) {
    return a.length_ == b.length_ && a.terms_ == b.terms_;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [w, c] : terms_) {
      Rational mag = abs(c);
      out += first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ");
      first = false;
      if (mag != 1) out += mag.get_str() + "*";
      out += w.str();
    }
    return out;
  }

 private:
  void check(const MatExpr& o) const {
    if (length_ != o.length_) throw std::invalid_argument("gamma word length mismatch");
  }
  void add(const GammaWord& w, const Rational& c) {
    if (c == 0) return;
    auto [it, ins] = terms_.try_emplace(w, c);
    if (!ins) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  std::size_t length_ = 0;
  std::map<GammaWord, Rational> terms_;
};

inline MatExpr MatExpr::parse(std::string_view s) {
  MatExpr out;
  bool have_length = false;
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  };
  int sign = 1;
  skip();
  if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) {
    sign = s[pos] == '-' ? -1 : 1;
    ++pos;
  }
  for (;;) {
    skip();
    Rational coef = 1;
    std::size_t start = pos;
    while (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '/')) ++pos;
    if (pos > start) {
      coef = parse_rational(s.substr(start, pos - start));
      skip();
      if (pos >= s.size() || s[pos] != '*') throw ParseError("expected '*' after coefficient in '" + std::string(s) + "'");
      ++pos;
      skip();
    }
    start = pos;
    while (pos < s.size() && std::isalpha(static_cast<unsigned char>(s[pos]))) ++pos;
    GammaWord w = GammaWord::parse(s.substr(start, pos - start));
    if (!have_length) {
      out.length_ = w.length();
      have_length = true;
    } else if (w.length() != out.length_) {
      throw ParseError("mixed word lengths in '" + std::string(s) + "'");
    }
    out.add(w, sign * coef);
    skip();
    if (pos >= s.size()) break;
    if (s[pos] != '+' && s[pos] != '-') throw ParseError("unexpected character in '" + std::string(s) + "'");
    sign = s[pos] == '-' ? -1 : 1;
    ++pos;
  }
  return out;
}

/// True iff the gammas pairwise anticommute, and p of them square to +1 and q to -1.
inline bool is_clifford_set(const std::vector<MatExpr>& gammas, int p, int q) {
  if (static_cast<int>(gammas.size()) != p + q) return false;
  if (gammas.empty()) return true;
  std::size_t len = gammas[0].length();
  MatExpr id = MatExpr::identity(len);
  int pos = 0, neg = 0;
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    if (gammas[i].length() != len) return false;
    MatExpr sq = gammas[i] * gammas[i];
    if (sq == id)
      ++pos;
    else if (sq == -id)
      ++neg;
    else
      return false;
    for (std::size_t j = i + 1; j < gammas.size(); ++j)
      if (!(gammas[i] * gammas[j] + gammas[j] * gammas[i]).is_zero()) return false;
  }
  return pos == p && neg == q;
}

/// Words of J's length that commute with J; throws unless J^2 = -1.
inline std::vector<GammaWord> complex_structure_commutant(const MatExpr& j) {
  MatExpr id = MatExpr::identity(j.length());
  if (!(j * j == -id)) throw std::invalid_argument("not a complex structure: J^2 != -1");
  std::vector<GammaWord> out;
  for (const auto& w : GammaWord::all(j.length())) {
    MatExpr m(w);
    if ((m * j - j * m).is_zero()) out.push_back(w);
  }
  return out;
}

}  // namespace llsym

#endif  // LLSYM_GAMMA_WORDS_HPP
