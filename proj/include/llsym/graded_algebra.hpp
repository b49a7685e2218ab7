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

#ifndef LLSYM_GRADED_ALGEBRA_HPP
#define LLSYM_GRADED_ALGEBRA_HPP

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "coeff_ring.hpp"
#include "diff_op.hpp"
#include "gamma_words.hpp"
#include "linalg.hpp"
#include "parallel.hpp"
#include "symmetry_engine.hpp"

namespace llsym {

enum class GradingKind { lie, z2_super, color_algebra, color_superalgebra };

inline const char* to_string(GradingKind k) {
  switch (k) {
    case GradingKind::lie: return "lie";
    case GradingKind::z2_super: return "z2_super";
    case GradingKind::color_algebra: return "color_algebra";
    case GradingKind::color_superalgebra: return "color_superalgebra";
  }
  return "?";
}

inline std::optional<GradingKind> parse_grading_kind(std::string_view s) {
  for (GradingKind k : {GradingKind::lie, GradingKind::z2_super, GradingKind::color_algebra,
                        GradingKind::color_superalgebra})
    if (s == to_string(k)) return k;
  return std::nullopt;
}

inline bool is_color(GradingKind k) {
  return k == GradingKind::color_algebra || k == GradingKind::color_superalgebra;
}

/// Z2 x Z2 degree; plain Z2 gradings use a1 only.
struct Degree {
  int a1 = 0;
  int a2 = 0;

  friend Degree operator+(const Degree& a, const Degree& b) { return {(a.a1 + b.a1) & 1, (a.a2 + b.a2) & 1}; }
  friend bool operator==(const Degree& a, const Degree& b) { return a.a1 == b.a1 && a.a2 == b.a2; }
  friend bool operator<(const Degree& a, const Degree& b) {
    return a.a1 != b.a1 ? a.a1 < b.a1 : a.a2 < b.a2;
  }
  std::string str(GradingKind k) const {
    if (is_color(k)) return std::string{char('0' + a1), char('0' + a2)};
    return std::string(1, char('0' + a1));
  }
};

inline std::vector<Degree> degrees_of(GradingKind k) {
  if (k == GradingKind::lie) return {{0, 0}};
  if (k == GradingKind::z2_super) return {{0, 0}, {1, 0}};
  return {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
}

inline int inner_product(GradingKind k, const Degree& a, const Degree& b) {
  switch (k) {
    case GradingKind::lie: return 0;
    case GradingKind::z2_super: return a.a1 * b.a1;
    case GradingKind::color_algebra: return a.a1 * b.a2 - a.a2 * b.a1;
    case GradingKind::color_superalgebra: return a.a1 * b.a1 + a.a2 * b.a2;
  }
  return 0;
}

/// (-1)^(a.b)
inline int grade_sign(GradingKind k, const Degree& a, const Degree& b) {
  return (inner_product(k, a, b) & 1) ? -1 : 1;
}

inline BracketKind bracket_kind(GradingKind k, const Degree& a, const Degree& b) {
  return grade_sign(k, a, b) == 1 ? BracketKind::commutator : BracketKind::anticommutator;
}

struct GradedGenerator {
  std::string name;
  Degree degree;
  std::optional<DiffOp> op;
};

inline DiffOp graded_bracket(const GradedGenerator& x, const GradedGenerator& y, GradingKind kind) {
  if (!x.op || !y.op) throw std::invalid_argument("graded_bracket: abstract generator '" + (x.op ? y.name : x.name) + "'");
  return bracket(bracket_kind(kind, x.degree, y.degree), *x.op, *y.op);
}

/// Bracket right-hand side: generator index -> coefficient.
using Combination = std::map<std::size_t, CoeffExpr>;

class TableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline bool valid_name(std::string_view s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

inline Combination scaled(const Combination& c, const Rational& f) {
  Combination out;
  for (const auto& [k, v] : c) {
    CoeffExpr w = v;
    w *= f;
    if (!w.is_zero()) out.emplace(k, std::move(w));
  }
  return out;
}

inline void accumulate(Combination& acc, std::size_t k, const CoeffExpr& v) {
  if (v.is_zero()) return;
  auto [it, ins] = acc.try_emplace(k, v);
  if (!ins) {
    it->second += v;
    if (it->second.is_zero()) acc.erase(it);
  }
}

}  // namespace detail

/// Graded-antisymmetric bracket table on named generators.
class StructureTable {
 public:
  explicit StructureTable(GradingKind kind = GradingKind::color_superalgebra) : kind_(kind) {}

  GradingKind kind() const { return kind_; }
  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const Degree& degree(std::size_t i) const { return degrees_.at(i); }
  const std::vector<Degree>& degrees() const { return degrees_; }

  std::optional<std::size_t> find(std::string_view n) const {
    auto it = index_.find(std::string(n));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  std::size_t at(std::string_view n) const {
    auto i = find(n);
    if (!i) throw TableError("unknown generator '" + std::string(n) + "'");
    return *i;
  }

  std::size_t add_generator(const std::string& n, const Degree& d) {
    if (!detail::valid_name(n)) throw TableError("invalid generator name '" + n + "'");
    if (index_.count(n)) throw TableError("duplicate generator '" + n + "'");
    index_.emplace(n, names_.size());
    names_.push_back(n);
    degrees_.push_back(d);
    return names_.size() - 1;
  }

  /// Sets (i,j) and its graded-antisymmetric partner (j,i).
  void set(std::size_t i, std::size_t j, const Combination& rhs) {
    check_index(i);
    check_index(j);
    for (const auto& [k, v] : rhs) check_index(k);
    Combination clean;
    for (const auto& [k, v] : rhs)
      if (!v.is_zero()) clean.emplace(k, v);
    int sg = grade_sign(kind_, degrees_[i], degrees_[j]);
    Combination partner = detail::scaled(clean, Rational(-sg));
    if (i == j && sg == 1 && !clean.empty())
      throw TableError("(" + names_[i] + "," + names_[i] + ") is a commutator and must vanish");
    store(i, j, clean);
    store(j, i, partner);
  }

  void set(const std::string& a, const std::string& b, const std::map<std::string, CoeffExpr>& rhs) {
    Combination c;
    for (const auto& [n, v] : rhs) detail::accumulate(c, at(n), v);
    set(at(a), at(b), c);
  }

  void erase(std::size_t i, std::size_t j) {
    entries_.erase({i, j});
    entries_.erase({j, i});
  }

  const Combination& get(std::size_t i, std::size_t j) const {
    static const Combination kEmpty;
    auto it = entries_.find({i, j});
    return it == entries_.end() ? kEmpty : it->second;
  }

  /// Nonzero relations with i <= j.
  std::size_t relation_count() const {
    std::size_t n = 0;
    for (const auto& [key, v] : entries_)
      if (key.first <= key.second) ++n;
    return n;
  }

  /// Pairs whose right-hand side leaves the degree deg(i)+deg(j).
  std::vector<std::pair<std::size_t, std::size_t>> degree_violations() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (const auto& [key, v] : entries_) {
      if (key.first > key.second) continue;
      Degree d = degrees_[key.first] + degrees_[key.second];
      for (const auto& [k, c] : v)
        if (!(degrees_[k] == d)) {
          out.push_back(key);
          break;
        }
    }
    return out;
  }

  std::string render_combination(const Combination& c) const {
    if (c.empty()) return "0";
    std::string out;
    for (const auto& [k, v] : c) {
      std::string term;
      bool neg = false;
      if (v.size() == 1) {
        std::string s = v.str();
        if (s[0] == '-') {
          neg = true;
          s = s.substr(1);
        }
        term = s == "1" ? names_[k] : s + "*" + names_[k];
      } else {
        term = "(" + v.str() + ")*" + names_[k];
      }
      if (out.empty())
        out = neg ? "-" + term : term;
      else
        out += (neg ? " - " : " + ") + term;
    }
    return out;
  }

  /// Canonical text: kind, generators in declaration order, relations for i <= j.
  std::string render() const {
    std::ostringstream os;
    os << "kind " << to_string(kind_) << "\n";
    for (std::size_t i = 0; i < names_.size(); ++i) os << "gen " << names_[i] << " " << degrees_[i].str(kind_) << "\n";
    for (const auto& [key, v] : entries_) {
      if (key.first > key.second) continue;
      os << names_[key.first] << " " << names_[key.second] << " -> " << render_combination(v) << "\n";
    }
    return os.str();
  }

  static StructureTable parse(std::string_view text);

  friend bool operator==(const StructureTable& a, const StructureTable& b) {
    return a.kind_ == b.kind_ && a.names_ == b.names_ && a.degrees_ == b.degrees_ && a.entries_ == b.entries_;
  }

 private:
  void check_index(std::size_t i) const {
    if (i >= names_.size()) throw TableError("generator index out of range");
  }
  void store(std::size_t i, std::size_t j, const Combination& c) {
    auto it = entries_.find({i, j});
    if (it != entries_.end()) {
      if (it->second != c)
        throw TableError("inconsistent graded antisymmetry for (" + names_[i] + "," + names_[j] + ")");
      return;
    }
    if (!c.empty()) entries_.emplace(std::pair{i, j}, c);
  }

  GradingKind kind_;
  std::vector<std::string> names_;
  std::vector<Degree> degrees_;
  std::map<std::string, std::size_t> index_;
  std::map<std::pair<std::size_t, std::size_t>, Combination> entries_;
};

namespace detail {

inline std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

inline std::vector<std::string> split_ws(std::string_view s) {
  std::istringstream is{std::string(s)};
  std::vector<std::string> out;
  std::string w;
  while (is >> w) out.push_back(w);
  return out;
}

inline Degree parse_degree(const std::string& s, GradingKind k) {
  std::size_t want = is_color(k) ? 2 : 1;
  if (s.size() != want || !std::all_of(s.begin(), s.end(), [](char c) { return c == '0' || c == '1'; }))
    throw ParseError("bad degree '" + s + "'");
  Degree d{s[0] - '0', want == 2 ? s[1] - '0' : 0};
  if (k == GradingKind::lie && d.a1 != 0) throw ParseError("lie grading admits degree 0 only");
  return d;
}

// Right-hand side: signed terms "coef*NAME", "(expr)*NAME", "NAME" or "0".
inline Combination parse_rhs(const std::string& rhs, const StructureTable& t) {
  Combination out;
  if (trim(rhs) == "0") return out;
  std::vector<std::pair<bool, std::string>> terms;
  int depth = 0;
  std::string cur;
  bool neg = false;
  auto flush = [&] {
    std::string s = trim(cur);
    if (s.empty()) throw ParseError("empty term");
    terms.emplace_back(neg, s);
    cur.clear();
  };
  std::string body = trim(rhs);
  std::size_t start = 0;
  if (!body.empty() && (body[0] == '-' || body[0] == '+')) {
    neg = body[0] == '-';
    start = 1;
  }
  for (std::size_t i = start; i < body.size(); ++i) {
    char c = body[i];
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (depth < 0) throw ParseError("unbalanced parentheses");
    bool sep = depth == 0 && (c == '+' || c == '-') && i > start && body[i - 1] != '*' && body[i - 1] != '/' &&
               body[i - 1] != '^' && body[i - 1] != '(';
    if (sep) {
      flush();
      neg = c == '-';
      continue;
    }
    cur += c;
  }
  if (depth != 0) throw ParseError("unbalanced parentheses");
  flush();
  for (const auto& [n, s] : terms) {
    std::size_t star = std::string::npos;
    int d = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] == '(') ++d;
      if (s[i] == ')') --d;
      if (d == 0 && s[i] == '*') star = i;
    }
    std::string name = trim(star == std::string::npos ? s : s.substr(star + 1));
    CoeffExpr coef = 1;
    if (star != std::string::npos) coef = CoeffExpr::parse(s.substr(0, star));
    auto idx = t.find(name);
    if (!idx) throw ParseError("unknown generator '" + name + "'");
    if (n) coef = -coef;
    accumulate(out, *idx, coef);
  }
  return out;
}

}  // namespace detail

inline StructureTable StructureTable::parse(std::string_view text) {
  std::optional<StructureTable> t;
  std::istringstream is{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(is, raw)) {
    ++line_no;
    std::string line = raw.substr(0, raw.find('#'));
    line = detail::trim(line);
    if (line.empty()) continue;
    try {
      auto words = detail::split_ws(line);
      if (words[0] == "kind") {
        if (t) throw ParseError("kind declared twice");
        if (words.size() != 2) throw ParseError("expected 'kind <name>'");
        auto k = parse_grading_kind(words[1]);
        if (!k) throw ParseError("unknown kind '" + words[1] + "'");
        t.emplace(*k);
        continue;
      }
      if (!t) throw ParseError("missing 'kind' line");
      if (words[0] == "gen") {
        if (words.size() != 3) throw ParseError("expected 'gen <name> <degree>'");
        t->add_generator(words[1], detail::parse_degree(words[2], t->kind()));
        continue;
      }
      auto arrow = line.find("->");
      if (arrow == std::string::npos) throw ParseError("expected 'A B -> rhs'");
      auto lhs = detail::split_ws(line.substr(0, arrow));
      if (lhs.size() != 2) throw ParseError("left side needs two generators");
      auto i = t->find(lhs[0]);
      auto j = t->find(lhs[1]);
      if (!i) throw ParseError("unknown generator '" + lhs[0] + "'");
      if (!j) throw ParseError("unknown generator '" + lhs[1] + "'");
      t->set(*i, *j, detail::parse_rhs(line.substr(arrow + 2), *t));
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
    } catch (const TableError& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (!t) throw ParseError("line " + std::to_string(line_no) + ": missing 'kind' line");
  return *t;
}

/// Builds a table over abstract generators with the degrees of `gens`.
/// Table with lambda replaced by a rational value.
inline StructureTable with_lambda(const StructureTable& t, const Rational& value) {
  StructureTable out(t.kind());
  for (std::size_t i = 0; i < t.size(); ++i) out.add_generator(t.name(i), t.degrees()[i]);
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = i; j < t.size(); ++j) {
      Combination c;
      for (const auto& [k, v] : t.get(i, j)) {
        CoeffExpr e = v.evaluate_lambda(value);
        if (!e.is_zero()) c.emplace(k, e);
      }
      if (!c.empty()) out.set(i, j, c);
    }
  return out;
}

inline StructureTable empty_table(const std::vector<GradedGenerator>& gens, GradingKind kind) {
  StructureTable t(kind);
  for (const auto& g : gens) t.add_generator(g.name, g.degree);
  return t;
}

struct SpanExpression {
  Combination coeffs;
  std::map<OpCoord, Rational> remainder;
  bool exact() const { return remainder.empty(); }
};

/// Writes target as a Laurent-in-sqrt(lambda) combination of ops; the unexpressible part is the reduced remainder.
inline SpanExpression express_in_span(const DiffOp& target, const std::vector<DiffOp>& ops) {
  SpanExpression out;
  if (target.is_zero()) return out;
  auto range = [](const DiffOp& op) -> std::optional<std::pair<int, int>> {
    std::optional<std::pair<int, int>> r;
    for (const auto& [d, m] : op.terms())
      for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j)
          if (auto lr = m(i, j).lambda_range()) {
            if (!r)
              r = lr;
            else
              r = std::pair{std::min(r->first, lr->first), std::max(r->second, lr->second)};
          }
    return r;
  };
  auto tr = range(target);
  constexpr std::size_t kTag = std::size_t{1} << 40;
  KeyIndex<OpCoord> cols;
  RowEchelon ech(kTag);
  std::vector<std::pair<std::size_t, int>> row_of;
  for (std::size_t k = 0; k < ops.size(); ++k) {
    auto gr = range(ops[k]);
    if (!gr) continue;
    for (int h = tr->first - gr->second; h <= tr->second - gr->first; ++h) {
      auto coords = ops[k].coordinates();
      std::map<OpCoord, Rational> shifted;
      for (const auto& [c, v] : coords) {
        OpCoord s = c;
        s.mono.lam_half += h;
        shifted.emplace(s, v);
      }
      SparseRow r = cols.row(shifted);
      r.emplace_back(kTag + row_of.size(), Rational(1));
      row_of.emplace_back(k, h);
      ech.insert(std::move(r));
    }
  }
  std::map<OpCoord, Rational> tc = target.coordinates();
  SparseRow r;
  std::vector<std::pair<OpCoord, Rational>> unseen;
  for (const auto& [c, v] : tc) {
    if (auto idx = cols.find(c))
      r.emplace_back(*idx, v);
    else
      unseen.emplace_back(c, v);
  }
  std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseRow red = ech.reduce(std::move(r));
  for (const auto& [c, v] : red) {
    if (c < kTag) {
      out.remainder.emplace(cols.key(c), v);
    } else {
      auto [k, h] = row_of[c - kTag];
      detail::accumulate(out.coeffs, k, CoeffExpr(Monomial{h}, -v));
    }
  }
  for (auto& [c, v] : unseen) out.remainder.emplace(c, v);
  if (!out.remainder.empty()) out.coeffs.clear();
  return out;
}

struct ClosureResult {
  bool closed = false;
  StructureTable table;
  std::optional<std::pair<std::string, std::string>> failing_pair;
  std::optional<DiffOp> remainder;
  std::string reason;
};

/// Computes every bracket of realized generators and expresses it in their span.
inline ClosureResult closure_check(const std::vector<GradedGenerator>& gens, GradingKind kind, unsigned workers = 0) {
  ClosureResult res{false, empty_table(gens, kind), std::nullopt, std::nullopt, {}};
  std::vector<DiffOp> ops;
  for (const auto& g : gens) {
    if (!g.op) throw std::invalid_argument("closure_check: abstract generator '" + g.name + "'");
    if (!ops.empty() && g.op->size() != ops.front().size())
      throw std::invalid_argument("closure_check: generator sizes differ");
    ops.push_back(*g.op);
  }
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i; j < gens.size(); ++j) pairs.emplace_back(i, j);
  struct PairOut {
    DiffOp br;
    SpanExpression ex;
  };
  auto outs = parallel_map<PairOut>(
      pairs.size(),
      [&](std::size_t p) {
        auto [i, j] = pairs[p];
        DiffOp b = graded_bracket(gens[i], gens[j], kind);
        return PairOut{b, express_in_span(b, ops)};
      },
      workers);
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    auto [i, j] = pairs[p];
    const auto& o = outs[p];
    if (!o.ex.exact()) {
      res.failing_pair = std::pair{gens[i].name, gens[j].name};
      res.remainder = DiffOp::from_coordinates(ops[i].size(), o.ex.remainder);
      res.reason = "bracket outside the span";
      return res;
    }
    Degree d = gens[i].degree + gens[j].degree;
    for (const auto& [k, c] : o.ex.coeffs) {
      if (!(gens[k].degree == d)) {
        res.failing_pair = std::pair{gens[i].name, gens[j].name};
        res.remainder = o.br;
        res.reason = "bracket leaves degree " + d.str(kind) + " through " + gens[k].name;
        return res;
      }
    }
    try {
      res.table.set(i, j, o.ex.coeffs);
    } catch (const TableError& e) {
      res.failing_pair = std::pair{gens[i].name, gens[j].name};
      res.reason = e.what();
      return res;
    }
  }
  res.closed = true;
  return res;
}

struct JacobiResult {
  bool passed = true;
  std::size_t triples = 0;
  std::optional<std::array<std::string, 3>> witness;
  std::string residual;
};

namespace detail {

// Ordered triples whose rotation class starts with them; the Jacobi sum is rotation invariant.
inline std::vector<std::array<std::size_t, 3>> rotation_representatives(std::size_t n) {
  std::vector<std::array<std::size_t, 3>> out;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) {
        std::array<std::size_t, 3> t{a, b, c}, r1{b, c, a}, r2{c, a, b};
        if (t <= r1 && t <= r2) out.push_back(t);
      }
  return out;
}

}  // namespace detail

/// Operator-level graded Jacobi over all ordered triples.
inline JacobiResult jacobi_check(const std::vector<GradedGenerator>& gens, GradingKind kind, unsigned workers = 0) {
  std::size_t n = gens.size();
  JacobiResult res;
  res.triples = n * n * n;
  if (n == 0) return res;
  for (const auto& g : gens)
    if (!g.op) throw std::invalid_argument("jacobi_check: abstract generator '" + g.name + "'");
  auto inner = parallel_map<DiffOp>(
      n * n, [&](std::size_t p) { return graded_bracket(gens[p / n], gens[p % n], kind); }, workers);
  auto reps = detail::rotation_representatives(n);
  auto outer = [&](std::size_t x, std::size_t y, std::size_t z) {
    const DiffOp& in = inner[y * n + z];
    if (in.is_zero()) return DiffOp(in.size());
    Degree dyz = gens[y].degree + gens[z].degree;
    return bracket(bracket_kind(kind, gens[x].degree, dyz), *gens[x].op, in);
  };
  auto sums = parallel_map<std::optional<DiffOp>>(
      reps.size(),
      [&](std::size_t r) -> std::optional<DiffOp> {
        auto [a, b, c] = reps[r];
        const Degree &da = gens[a].degree, &db = gens[b].degree, &dc = gens[c].degree;
        DiffOp total(gens[a].op->size());
        auto add = [&total](int sg, const DiffOp& v) {
          if (sg == 1)
            total += v;
          else
            total -= v;
        };
        add(grade_sign(kind, da, dc), outer(a, b, c));
        add(grade_sign(kind, db, da), outer(b, c, a));
        add(grade_sign(kind, dc, db), outer(c, a, b));
        if (total.is_zero()) return std::nullopt;
        return total;
      },
      workers);
  for (std::size_t r = 0; r < reps.size(); ++r) {
    if (!sums[r]) continue;
    res.passed = false;
    auto [a, b, c] = reps[r];
    res.witness = std::array<std::string, 3>{gens[a].name, gens[b].name, gens[c].name};
    res.residual = sums[r]->str();
    break;
  }
  return res;
}

/// Jacobi from structure constants; R needs +, *, is_zero and construction from int.
template <class R, class Get>
JacobiResult abstract_jacobi(const std::vector<Degree>& degrees, GradingKind kind, const Get& get,
                             const std::vector<std::string>& names, unsigned workers = 0) {
  std::size_t n = degrees.size();
  JacobiResult res;
  res.triples = n * n * n;
  auto reps = detail::rotation_representatives(n);
  using Vec = std::map<std::size_t, R>;
  auto outer = [&](std::size_t x, std::size_t y, std::size_t z, int sg, Vec& acc) {
    for (const auto& [k, c] : get(y, z)) {
      for (const auto& [l, d] : get(x, k)) {
        R term = c * d;
        if (sg < 0) term = R(0) - term;
        auto [it, ins] = acc.try_emplace(l, term);
        if (!ins) it->second = it->second + term;
      }
    }
  };
  auto sums = parallel_map<std::optional<Vec>>(
      reps.size(),
      [&](std::size_t r) -> std::optional<Vec> {
        auto [a, b, c] = reps[r];
        Vec acc;
        outer(a, b, c, grade_sign(kind, degrees[a], degrees[c]), acc);
        outer(b, c, a, grade_sign(kind, degrees[b], degrees[a]), acc);
        outer(c, a, b, grade_sign(kind, degrees[c], degrees[b]), acc);
        for (auto it = acc.begin(); it != acc.end();) it = it->second.is_zero() ? acc.erase(it) : std::next(it);
        if (acc.empty()) return std::nullopt;
        return acc;
      },
      workers);
  for (std::size_t r = 0; r < reps.size(); ++r) {
    if (!sums[r]) continue;
    res.passed = false;
    auto [a, b, c] = reps[r];
    res.witness = std::array<std::string, 3>{names[a], names[b], names[c]};
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, v] : *sums[r]) {
      os << (first ? "" : " + ") << "(" << v.str() << ")*" << names[k];
      first = false;
    }
    res.residual = os.str();
    break;
  }
  return res;
}

inline JacobiResult table_jacobi(const StructureTable& t, unsigned workers = 0) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < t.size(); ++i) names.push_back(t.name(i));
  return abstract_jacobi<CoeffExpr>(
      t.degrees(), t.kind(), [&t](std::size_t i, std::size_t j) -> const Combination& { return t.get(i, j); }, names,
      workers);
}

/// Elements a(c) + s b(c) of Q[c, s] / (s^2 + c^2 - 1).
class CircleRing {
 public:
  using Poly = std::map<int, Rational>;

  CircleRing() = default;
  CircleRing(const Rational& v) {  // NOLINT(google-explicit-constructor)
    if (v != 0) a_[0] = v;
  }
  CircleRing(int v) : CircleRing(Rational(v)) {}  // NOLINT(google-explicit-constructor)
  CircleRing(Poly a, Poly b) : a_(std::move(a)), b_(std::move(b)) { clean(); }

  static CircleRing c() { return CircleRing(Poly{{1, Rational(1)}}, {}); }
  static CircleRing s() { return CircleRing({}, Poly{{0, Rational(1)}}); }

  bool is_zero() const { return a_.empty() && b_.empty(); }

  friend CircleRing operator+(const CircleRing& x, const CircleRing& y) {
    return CircleRing(add(x.a_, y.a_, 1), add(x.b_, y.b_, 1));
  }
  friend CircleRing operator-(const CircleRing& x, const CircleRing& y) {
    return CircleRing(add(x.a_, y.a_, -1), add(x.b_, y.b_, -1));
  }
  friend CircleRing operator-(const CircleRing& x) { return CircleRing(0) - x; }
  friend CircleRing operator*(const CircleRing& x, const CircleRing& y) {
    // (a1 + s b1)(a2 + s b2) = a1 a2 + (1 - c^2) b1 b2 + s (a1 b2 + b1 a2)
    Poly bb = mul(x.b_, y.b_);
    Poly one_minus_c2{{0, Rational(1)}, {2, Rational(-1)}};
    return CircleRing(add(mul(x.a_, y.a_), mul(one_minus_c2, bb), 1), add(mul(x.a_, y.b_), mul(x.b_, y.a_), 1));
  }
  friend bool operator==(const CircleRing& x, const CircleRing& y) { return x.a_ == y.a_ && x.b_ == y.b_; }

  Rational evaluate(const Rational& cv, const Rational& sv) const { return eval(a_, cv) + sv * eval(b_, cv); }

  std::string str() const {
    auto poly = [](const Poly& p) {
      CoeffExpr e;
      for (const auto& [k, v] : p) e.add_term(Monomial{0, k}, v);
      std::string s = e.str();
      for (auto& ch : s)
        if (ch == 'x') ch = 'c';
      return s;
    };
    if (is_zero()) return "0";
    std::string out;
    if (!a_.empty()) out = poly(a_);
    if (!b_.empty()) out += (out.empty() ? "" : " + ") + std::string("s*(") + poly(b_) + ")";
    return out;
  }

 private:
  static Poly add(const Poly& x, const Poly& y, int sg) {
    Poly r = x;
    for (const auto& [k, v] : y) r[k] += sg * v;
    return r;
  }
  static Poly mul(const Poly& x, const Poly& y) {
    Poly r;
    for (const auto& [i, u] : x)
      for (const auto& [j, v] : y) r[i + j] += u * v;
    return r;
  }
  static Rational eval(const Poly& p, const Rational& x) {
    Rational r = 0;
    for (const auto& [k, v] : p) {
      Rational term = v;
      for (int i = 0; i < k; ++i) term *= x;
      r += term;
    }
    return r;
  }
  void clean() {
    for (Poly* p : {&a_, &b_})
      for (auto it = p->begin(); it != p->end();) it = it->second == 0 ? p->erase(it) : std::next(it);
  }

  Poly a_, b_;
};

/// Four-dimensional unital algebra given by the products of its basis e0..e3.
struct CompositionAlgebra {
  std::string name;
  std::array<std::array<std::array<Rational, 4>, 4>, 4> mul{};

  /// e_i e_j = -eta_ij e0 + eps_ijk e_k for i, j >= 1.
  static CompositionAlgebra from_law(std::string n, const std::array<int, 3>& eta, const std::array<int, 3>& eps_cyclic) {
    CompositionAlgebra a;
    a.name = std::move(n);
    for (int i = 0; i < 4; ++i) {
      a.mul[0][i][i] = 1;
      a.mul[i][0][i] = 1;
    }
    // eps_cyclic holds eps_123, eps_231, eps_312; swapping two indices flips the sign
    const int cyc[3][3] = {{1, 2, 3}, {2, 3, 1}, {3, 1, 2}};
    for (int i = 1; i < 4; ++i) a.mul[i][i][0] = -eta[i - 1];
    for (int r = 0; r < 3; ++r) {
      auto [i, j, k] = std::array<int, 3>{cyc[r][0], cyc[r][1], cyc[r][2]};
      a.mul[i][j][k] = eps_cyclic[r];
      a.mul[j][i][k] = -eps_cyclic[r];
    }
    return a;
  }

  static CompositionAlgebra quaternions() { return from_law("quaternions", {1, 1, 1}, {1, 1, 1}); }
  static CompositionAlgebra split_quaternions_printed() {
    return from_law("split-quaternions (printed metric)", {1, 1, -1}, {-1, 1, 1});
  }

  /// Law read off a matrix basis with b[0] the identity.
  static std::optional<CompositionAlgebra> from_matrices(std::string n, const std::array<RMatrix, 4>& b) {
    CompositionAlgebra a;
    a.name = std::move(n);
    LinearSpan<std::pair<std::size_t, std::size_t>> span;
    auto entries = [](const RMatrix& m) {
      std::map<std::pair<std::size_t, std::size_t>, Rational> v;
      for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j)
          if (m(i, j) != 0) v[{i, j}] = m(i, j);
      return v;
    };
    for (const auto& m : b) span.insert(entries(m));
    if (span.rank() != 4) return std::nullopt;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        auto c = span.express(entries(b[i] * b[j]));
        if (!c) return std::nullopt;
        for (int k = 0; k < 4; ++k) a.mul[i][j][k] = (*c)[k];
      }
    return a;
  }

  /// Matrix realization e0 = I, e1 = Y, e2 = X, e3 = A.
  static CompositionAlgebra split_quaternions_realized() {
    auto a = from_matrices("split-quaternions (matrix realization)",
                           {letter_dense(Letter::I), letter_dense(Letter::Y), letter_dense(Letter::X),
                            letter_dense(Letter::A)});
    return *a;
  }

  template <class R>
  std::array<R, 4> product(const std::array<R, 4>& x, const std::array<R, 4>& y) const {
    std::array<R, 4> out{};
    for (int i = 0; i < 4; ++i) {
      if (x[i].is_zero()) continue;
      for (int j = 0; j < 4; ++j) {
        if (y[j].is_zero()) continue;
        R xy = x[i] * y[j];
        for (int k = 0; k < 4; ++k)
          if (mul[i][j][k] != 0) out[k] = out[k] + xy * R(mul[i][j][k]);
      }
    }
    return out;
  }

  bool associative() const {
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int c = 0; c < 4; ++c)
          for (int l = 0; l < 4; ++l) {
            Rational lhs = 0, rhs = 0;
            for (int k = 0; k < 4; ++k) {
              lhs += mul[a][b][k] * mul[k][c][l];
              rhs += mul[b][c][k] * mul[a][k][l];
            }
            if (lhs != rhs) return false;
          }
    return true;
  }
};

/// Scalar wrapper so rational vectors share the element code path.
struct RationalScalar {
  Rational v;
  RationalScalar() = default;
  RationalScalar(const Rational& x) : v(x) {}  // NOLINT(google-explicit-constructor)
  RationalScalar(int x) : v(x) {}              // NOLINT(google-explicit-constructor)
  bool is_zero() const { return v == 0; }
  friend RationalScalar operator+(const RationalScalar& a, const RationalScalar& b) { return Rational(a.v + b.v); }
  friend RationalScalar operator-(const RationalScalar& a, const RationalScalar& b) { return Rational(a.v - b.v); }
  friend RationalScalar operator*(const RationalScalar& a, const RationalScalar& b) { return Rational(a.v * b.v); }
  friend bool operator==(const RationalScalar& a, const RationalScalar& b) { return a.v == b.v; }
  std::string str() const { return v.get_str(); }
};

template <class R>
struct GradedElement {
  std::string name;
  std::array<R, 4> v;
  Degree degree;
};

template <class R>
std::array<R, 4> element_bracket(const CompositionAlgebra& alg, GradingKind kind, const std::array<R, 4>& x,
                                 const Degree& dx, const std::array<R, 4>& y, const Degree& dy) {
  auto xy = alg.product(x, y);
  auto yx = alg.product(y, x);
  int sg = grade_sign(kind, dx, dy);
  std::array<R, 4> out;
  for (int k = 0; k < 4; ++k) out[k] = sg == 1 ? xy[k] - yx[k] : xy[k] + yx[k];
  return out;
}

template <class R>
JacobiResult element_jacobi(const CompositionAlgebra& alg, GradingKind kind, const std::vector<GradedElement<R>>& els) {
  JacobiResult res;
  std::size_t n = els.size();
  res.triples = n * n * n;
  for (const auto& t : detail::rotation_representatives(n)) {
    const auto &x = els[t[0]], &y = els[t[1]], &z = els[t[2]];
    auto term = [&](const GradedElement<R>& p, const GradedElement<R>& q, const GradedElement<R>& r) {
      auto in = element_bracket(alg, kind, q.v, q.degree, r.v, r.degree);
      return element_bracket(alg, kind, p.v, p.degree, in, q.degree + r.degree);
    };
    auto t1 = term(x, y, z), t2 = term(y, z, x), t3 = term(z, x, y);
    int s1 = grade_sign(kind, x.degree, z.degree), s2 = grade_sign(kind, y.degree, x.degree),
        s3 = grade_sign(kind, z.degree, y.degree);
    bool zero = true;
    std::string resid;
    for (int k = 0; k < 4; ++k) {
      R v = R(s1) * t1[k] + R(s2) * t2[k] + R(s3) * t3[k];
      if (!v.is_zero()) {
        zero = false;
        resid += (resid.empty() ? "" : " + ") + std::string("(") + v.str() + ")*e" + std::to_string(k);
      }
    }
    if (!zero) {
      res.passed = false;
      res.witness = std::array<std::string, 3>{x.name, y.name, z.name};
      res.residual = resid;
      return res;
    }
  }
  return res;
}

/// Pairs whose bracket leaves the span of the elements of degree deg(x)+deg(y).
inline std::vector<std::pair<std::string, std::string>> sector_violations(
    const CompositionAlgebra& alg, GradingKind kind, const std::vector<GradedElement<RationalScalar>>& els) {
  std::vector<std::pair<std::string, std::string>> out;
  auto as_map = [](const std::array<RationalScalar, 4>& v) {
    std::map<int, Rational> m;
    for (int k = 0; k < 4; ++k)
      if (!v[k].is_zero()) m[k] = v[k].v;
    return m;
  };
  for (const auto& x : els)
    for (const auto& y : els) {
      auto b = element_bracket(alg, kind, x.v, x.degree, y.v, y.degree);
      Degree d = x.degree + y.degree;
      LinearSpan<int> span;
      for (const auto& e : els)
        if (e.degree == d) span.insert(as_map(e.v));
      if (!span.contains(as_map(b))) out.emplace_back(x.name, y.name);
    }
  return out;
}

/// e0 in degree 00 and e1, e2, e3 in the listed degrees.
struct Assignment {
  std::array<Degree, 3> deg;
  friend bool operator==(const Assignment& a, const Assignment& b) { return a.deg == b.deg; }
  friend bool operator<(const Assignment& a, const Assignment& b) { return a.deg < b.deg; }
  std::string str(GradingKind k) const {
    std::string s;
    for (int i = 0; i < 3; ++i) s += (i ? " " : "") + std::string("e") + std::to_string(i + 1) + ":" + deg[i].str(k);
    return s;
  }
};

inline std::vector<GradedElement<RationalScalar>> basis_elements(const Assignment& a) {
  std::vector<GradedElement<RationalScalar>> els;
  for (int i = 0; i < 4; ++i) {
    GradedElement<RationalScalar> e{"e" + std::to_string(i), {}, i == 0 ? Degree{} : a.deg[i - 1]};
    e.v[i] = 1;
    els.push_back(e);
  }
  return els;
}

/// Valid basis assignments: every nontrivial sector is used, brackets stay in sectors, Jacobi holds.
inline std::vector<Assignment> grading_assignment_scan(const CompositionAlgebra& alg, GradingKind kind) {
  std::vector<Assignment> out;
  auto degs = degrees_of(kind);
  for (const auto& d1 : degs)
    for (const auto& d2 : degs)
      for (const auto& d3 : degs) {
        Assignment a{{d1, d2, d3}};
        std::set<Degree> used(a.deg.begin(), a.deg.end());
        bool full = true;
        for (const auto& d : degs)
          if (!(d == Degree{}) && !used.count(d)) full = false;
        if (!full) continue;
        auto els = basis_elements(a);
        if (!sector_violations(alg, kind, els).empty()) continue;
        if (!element_jacobi(alg, kind, els).passed) continue;
        out.push_back(a);
      }
  return out;
}

/// Permutations p of e1, e2, e3 such that e_i -> +-e_p(i) preserves the law for some signs.
inline std::vector<std::array<int, 3>> law_relabelings(const CompositionAlgebra& alg) {
  std::vector<std::array<int, 3>> out;
  std::array<int, 3> p{0, 1, 2};
  do {
    bool found = false;
    for (int mask = 0; mask < 8 && !found; ++mask) {
      std::array<int, 4> img{0, p[0] + 1, p[1] + 1, p[2] + 1};
      std::array<int, 4> sg{1, (mask & 1) ? -1 : 1, (mask & 2) ? -1 : 1, (mask & 4) ? -1 : 1};
      bool ok = true;
      for (int i = 0; i < 4 && ok; ++i)
        for (int j = 0; j < 4 && ok; ++j)
          for (int k = 0; k < 4 && ok; ++k)
            if (alg.mul[img[i]][img[j]][img[k]] * sg[i] * sg[j] != alg.mul[i][j][k] * sg[k]) ok = false;
      found = ok;
    }
    if (found) out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

/// Degree maps preserving the inner product parity: all permutations of the nonzero sectors for the color
/// algebra, the swap 01 <-> 10 for the color superalgebra.
inline std::vector<std::array<Degree, 4>> sector_symmetries(GradingKind kind) {
  std::vector<std::array<Degree, 4>> out;
  auto degs = degrees_of(kind);
  std::vector<int> idx(degs.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
  do {
    if (idx[0] != 0) continue;
    std::array<Degree, 4> m{};
    for (std::size_t i = 0; i < degs.size(); ++i) m[i] = degs[idx[i]];
    bool ok = true;
    for (std::size_t i = 0; i < degs.size() && ok; ++i)
      for (std::size_t j = 0; j < degs.size() && ok; ++j) {
        if (grade_sign(kind, degs[i], degs[j]) != grade_sign(kind, m[i], m[j])) ok = false;
        Degree sum = degs[i] + degs[j];
        auto pos = std::find(degs.begin(), degs.end(), sum) - degs.begin();
        if (!(m[pos] == m[i] + m[j])) ok = false;
      }
    if (ok) out.push_back(m);
  } while (std::next_permutation(idx.begin(), idx.end()));
  return out;
}

/// Number of classes of assignments under law relabelings and sector symmetries.
inline std::size_t relabeling_orbits(const std::vector<Assignment>& as, const CompositionAlgebra& alg,
                                     GradingKind kind) {
  auto perms = law_relabelings(alg);
  auto secs = sector_symmetries(kind);
  auto degs = degrees_of(kind);
  auto map_deg = [&](const std::array<Degree, 4>& m, const Degree& d) {
    return m[std::find(degs.begin(), degs.end(), d) - degs.begin()];
  };
  std::set<Assignment> seen;
  std::size_t orbits = 0;
  for (const auto& a : as) {
    if (seen.count(a)) continue;
    ++orbits;
    for (const auto& p : perms)
      for (const auto& m : secs) {
        Assignment b;
        for (int i = 0; i < 3; ++i) b.deg[p[i]] = map_deg(m, a.deg[i]);
        seen.insert(b);
      }
  }
  return orbits;
}

struct ThetaFamilyReport {
  bool jacobi = false;
  JacobiResult jacobi_detail;
  bool closure = false;
  std::vector<std::string> closure_failures;
  bool closure_at_theta0 = false;
  std::string describe() const {
    std::string s = std::string("jacobi ") + (jacobi ? "identical" : "fails") + ", sector closure " +
                    (closure ? "at all circle points" : "fails");
    if (!closure_failures.empty()) s += " (" + closure_failures.front() + ")";
    return s;
  }
};

/// Rotated pair u = c e3 + s e1, v = sign*s e3 + c e1 together with e0 and e2.
/// Super case (z2_super): e0, u even; e2, v odd. Color cases: u in 11, v in 01, e2 in 10.
inline ThetaFamilyReport theta_family_check(const CompositionAlgebra& alg, GradingKind kind, int v_sign) {
  auto family = [&](auto cv, auto sv, auto vs) {
    using R = std::decay_t<decltype(cv)>;
    std::array<R, 4> e0{R(1), R(0), R(0), R(0)}, e2{R(0), R(0), R(1), R(0)};
    std::array<R, 4> u{R(0), sv, R(0), cv};
    std::array<R, 4> v{R(0), cv, R(0), vs * sv};
    Degree du, dv, d2;
    if (kind == GradingKind::z2_super) {
      du = {0, 0};
      dv = {1, 0};
      d2 = {1, 0};
    } else {
      du = {1, 1};
      dv = {0, 1};
      d2 = {1, 0};
    }
    return std::vector<GradedElement<R>>{{"e0", e0, {}}, {"u", u, du}, {"v", v, dv}, {"e2", e2, d2}};
  };
  ThetaFamilyReport rep;
  rep.jacobi_detail = element_jacobi(alg, kind, family(CircleRing::c(), CircleRing::s(), CircleRing(v_sign)));
  rep.jacobi = rep.jacobi_detail.passed;
  // exact rational points of the circle, theta = 0 first
  std::vector<std::pair<Rational, Rational>> points{{1, 0}};
  for (Rational t : {Rational(1, 2), Rational(1, 3), Rational(2), Rational(3, 5)})
    points.emplace_back((1 - t * t) / (1 + t * t), 2 * t / (1 + t * t));
  rep.closure = true;
  for (std::size_t p = 0; p < points.size(); ++p) {
    auto [cv, sv] = points[p];
    auto els = family(RationalScalar(cv), RationalScalar(sv), RationalScalar(v_sign));
    auto bad = sector_violations(alg, kind, els);
    if (p == 0) rep.closure_at_theta0 = bad.empty();
    if (!bad.empty()) {
      rep.closure = false;
      rep.closure_failures.push_back("(" + bad.front().first + "," + bad.front().second + ") at c=" + cv.get_str() +
                                     " s=" + sv.get_str());
    }
  }
  return rep;
}

struct GrowthResult {
  bool exceeded = false;
  int iterations = 0;
  std::vector<int> orders;
};

/// Iterates op -> bracket(by, op) from seed until the order passes max_order or cutoff steps are done.
inline GrowthResult order_growth(const DiffOp& by, const DiffOp& seed, BracketKind kind, int max_order = 2,
                                 int cutoff = 4) {
  GrowthResult g;
  DiffOp cur = seed;
  g.orders.push_back(cur.order());
  for (int i = 1; i <= cutoff; ++i) {
    cur = bracket(kind, by, cur);
    g.iterations = i;
    g.orders.push_back(cur.order());
    if (cur.order() > max_order) {
      g.exceeded = true;
      break;
    }
    if (cur.is_zero()) break;
  }
  return g;
}

struct GenerationResult {
  bool exceeded = false;
  bool closed = false;
  int rounds = 0;
  int max_order = 0;
  std::size_t dimension = 0;
  std::string witness;
};

/// Span generated by repeated graded brackets; stops once an element passes max_order or no new element appears.
inline GenerationResult generated_algebra(const std::vector<GradedGenerator>& gens, GradingKind kind, int max_order = 2,
                                          int rounds = 4) {
  GenerationResult r;
  std::vector<GradedGenerator> basis;
  std::vector<DiffOp> ops;
  auto add = [&](const GradedGenerator& g) {
    if (express_in_span(*g.op, ops).exact()) return false;
    basis.push_back(g);
    ops.push_back(*g.op);
    r.max_order = std::max(r.max_order, g.op->order());
    return true;
  };
  for (const auto& g : gens) add(g);
  std::size_t old = 0;
  for (int k = 1; k <= rounds; ++k) {
    r.rounds = k;
    std::size_t n = basis.size();
    bool grew = false;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = std::max(i, old); j < n; ++j) {
        DiffOp b = graded_bracket(basis[i], basis[j], kind);
        if (b.is_zero()) continue;
        GradedGenerator g{"(" + basis[i].name + "," + basis[j].name + ")", basis[i].degree + basis[j].degree, b};
        if (!add(g)) continue;
        grew = true;
        if (b.order() > max_order) {
          r.exceeded = true;
          r.witness = g.name;
          r.dimension = basis.size();
          return r;
        }
      }
    old = n;
    if (!grew) {
      r.closed = true;
      break;
    }
  }
  r.dimension = basis.size();
  return r;
}

}  // namespace llsym

#endif  // LLSYM_GRADED_ALGEBRA_HPP
