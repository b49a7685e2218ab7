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

#ifndef LLSYM_LINALG_HPP
#define LLSYM_LINALG_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace llsym {

/// Sparse row: strictly increasing column indices, no zero entries.
using SparseRow = std::vector<std::pair<std::size_t, Rational>>;

namespace detail {

// a - f * b, both sorted.
inline SparseRow axpy(const SparseRow& a, const Rational& f, const SparseRow& b) {
  SparseRow out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, -f * b[j].second);
      ++j;
    } else {
      Rational v = a[i].second - f * b[j].second;
      if (v != 0) out.emplace_back(a[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

inline const Rational* find_entry(const SparseRow& r, std::size_t col) {
  auto it = std::lower_bound(r.begin(), r.end(), col, [](const auto& e, std::size_t c) { return e.first < c; });
  if (it != r.end() && it->first == col) return &it->second;
  return nullptr;
}

}  // namespace detail

/// Incrementally maintained reduced row echelon form.
///
/// Pivots are taken on the smallest column index of a reduced row, restricted to
/// columns below `pivot_limit` (columns at or above it are bookkeeping tags).
class RowEchelon {
 public:
  explicit RowEchelon(std::size_t pivot_limit = static_cast<std::size_t>(-1)) : limit_(pivot_limit) {}

  SparseRow reduce(SparseRow row) const {
    std::size_t k = 0;
    while (k < row.size()) {
      std::size_t col = row[k].first;
      if (col >= limit_) break;
      auto it = pivots_.find(col);
      if (it == pivots_.end()) {
        ++k;
        continue;
      }
      Rational f = row[k].second;
      row = detail::axpy(row, f, it->second);
      // entry at k is now gone; later entries shift into place
    }
    return row;
  }

  /// Returns true when the row was independent of the current span.
  bool insert(SparseRow row) {
    row = reduce(std::move(row));
    if (row.empty() || row.front().first >= limit_) return false;
    std::size_t col = row.front().first;
    Rational inv = Rational(1) / row.front().second;
    for (auto& e : row) e.second *= inv;
    for (auto& [pc, prow] : pivots_) {
      if (const Rational* v = detail::find_entry(prow, col)) {
        Rational f = *v;
        prow = detail::axpy(prow, f, row);
      }
    }
    pivots_.emplace(col, std::move(row));
    return true;
  }

  std::size_t rank() const { return pivots_.size(); }
  const std::map<std::size_t, SparseRow>& pivots() const { return pivots_; }

 private:
  std::size_t limit_;
  std::map<std::size_t, SparseRow> pivots_;
};

/// Basis of {v : rows * v = 0} over `ncols` unknowns, one vector per free column.
inline std::vector<SparseRow> nullspace(const std::vector<SparseRow>& rows, std::size_t ncols) {
  RowEchelon ech;
  for (const auto& r : rows) ech.insert(r);
  std::vector<std::vector<std::pair<std::size_t, Rational>>> by_free(ncols);
  for (const auto& [pc, prow] : ech.pivots())
    for (const auto& [c, v] : prow)
      if (c != pc) by_free[c].emplace_back(pc, -v);
  std::vector<SparseRow> out;
  for (std::size_t f = 0; f < ncols; ++f) {
    if (ech.pivots().count(f)) continue;
    SparseRow v = by_free[f];
    v.emplace_back(f, Rational(1));
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    out.push_back(std::move(v));
  }
  return out;
}

/// Solve A x = b row-wise; rows are (sparse coefficients, rhs). Free unknowns are set to zero.
inline std::optional<std::vector<Rational>> solve_linear(const std::vector<std::pair<SparseRow, Rational>>& system,
                                                         std::size_t ncols) {
  RowEchelon ech(ncols);
  for (const auto& [row, rhs] : system) {
    SparseRow aug = row;
    if (rhs != 0) aug.emplace_back(ncols, rhs);
    SparseRow red = ech.reduce(aug);
    if (!red.empty() && red.front().first >= ncols) return std::nullopt;  // 0 = nonzero
    ech.insert(std::move(aug));
  }
  std::vector<Rational> x(ncols);
  for (const auto& [pc, prow] : ech.pivots())
    if (const Rational* v = detail::find_entry(prow, ncols)) x[pc] = *v;
  return x;
}

/// Interns keys as column indices in first-seen order.
template <class Key>
class KeyIndex {
 public:
  std::size_t index(const Key& k) {
    auto [it, ins] = map_.try_emplace(k, keys_.size());
    if (ins) keys_.push_back(k);
    return it->second;
  }
  std::optional<std::size_t> find(const Key& k) const {
    auto it = map_.find(k);
    if (it == map_.end()) return std::nullopt;
    return it->second;
  }
  const Key& key(std::size_t i) const { return keys_[i]; }
  std::size_t size() const { return keys_.size(); }

  SparseRow row(const std::map<Key, Rational>& v) {
    SparseRow r;
    r.reserve(v.size());
    for (const auto& [k, c] : v) r.emplace_back(index(k), c);
    std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return r;
  }

 private:
  std::map<Key, std::size_t> map_;
  std::vector<Key> keys_;
};

/// Span of labelled vectors with exact membership and coefficient recovery.
template <class Key>
class LinearSpan {
 public:
  static constexpr std::size_t kTagBase = std::size_t{1} << 40;

  LinearSpan() : ech_(kTagBase) {}

  /// Adds a vector; returns true if it enlarged the span.
  bool insert(const std::map<Key, Rational>& v) {
    SparseRow r = index_.row(v);
    r.emplace_back(kTagBase + count_, Rational(1));
    ++count_;
    return ech_.insert(std::move(r));
  }

  std::size_t vectors() const { return count_; }
  std::size_t rank() const { return ech_.rank(); }

  /// Coefficients c with sum c_k v_k = target, or nullopt if target is outside the span.
  std::optional<std::vector<Rational>> express(const std::map<Key, Rational>& target) const {
    SparseRow r;
    for (const auto& [k, c] : target) {
      auto idx = index_.find(k);
      if (!idx) return std::nullopt;
      r.emplace_back(*idx, c);
    }
    std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    SparseRow red = ech_.reduce(std::move(r));
    if (!red.empty() && red.front().first < kTagBase) return std::nullopt;
    std::vector<Rational> coeffs(count_);
    for (const auto& [c, v] : red) coeffs[c - kTagBase] = -v;
    return coeffs;
  }

  bool contains(const std::map<Key, Rational>& target) const { return express(target).has_value(); }

 private:
  KeyIndex<Key> index_;
  RowEchelon ech_;
  std::size_t count_ = 0;
};

}  // namespace llsym

#endif  // LLSYM_LINALG_HPP
