#pragma once

// Exact sparse linear algebra over Q: reduced row-echelon form and
// membership/coordinates with respect to an echelon basis.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "periodlab/rational.hpp"

namespace periodlab {

/// Sorted (column, value) pairs, no explicit zeros.
class SparseVector {
 public:
  using Entry = std::pair<std::size_t, BigRational>;

  SparseVector() = default;

  /// Builds from arbitrary entries: sorts, merges duplicates, drops zeros.
  explicit SparseVector(std::vector<Entry> entries) {
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.first < b.first; });
    for (auto& e : entries) {
      if (!entries_.empty() && entries_.back().first == e.first) {
        entries_.back().second += e.second;
        if (entries_.back().second == 0) entries_.pop_back();
      } else if (e.second != 0) {
        entries_.push_back(std::move(e));
      }
    }
  }

  static SparseVector from_dense(const std::vector<BigRational>& dense) {
    SparseVector v;
    for (std::size_t i = 0; i < dense.size(); ++i)
      if (dense[i] != 0) v.entries_.emplace_back(i, dense[i]);
    return v;
  }

  const std::vector<Entry>& entries() const noexcept { return entries_; }
  bool empty() const noexcept { return entries_.empty(); }
  std::size_t nnz() const noexcept { return entries_.size(); }
  std::size_t lead() const {
    return entries_.empty() ? std::numeric_limits<std::size_t>::max() : entries_.front().first;
  }

  BigRational at(std::size_t col) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), col,
                               [](const Entry& e, std::size_t c) { return e.first < c; });
    return (it != entries_.end() && it->first == col) ? it->second : BigRational(0);
  }

  std::size_t bit_cost() const {
    std::size_t s = 0;
    for (const auto& e : entries_) s += periodlab::bit_size(e.second);
    return s;
  }

  void scale(const BigRational& f) {
    if (f == 0) {
      entries_.clear();
      return;
    }
    for (auto& e : entries_) e.second *= f;
  }

  /// this += f * other, by sorted merge.
  void axpy(const BigRational& f, const SparseVector& other) {
    if (f == 0 || other.empty()) return;
    std::vector<Entry> out;
    out.reserve(entries_.size() + other.entries_.size());
    auto a = entries_.begin();
    auto b = other.entries_.begin();
    while (a != entries_.end() || b != other.entries_.end()) {
      if (b == other.entries_.end() || (a != entries_.end() && a->first < b->first)) {
        out.push_back(std::move(*a++));
      } else if (a == entries_.end() || b->first < a->first) {
        out.emplace_back(b->first, f * b->second);
        ++b;
      } else {
        BigRational v = a->second + f * b->second;
        if (v != 0) out.emplace_back(a->first, std::move(v));
        ++a;
        ++b;
      }
    }
    entries_ = std::move(out);
  }

  /// this += f * other through a dense scratch row; used when `other` is
  /// more than half full.
  void axpy_dense(const BigRational& f, const SparseVector& other, std::vector<BigRational>& scratch) {
    for (auto& e : entries_) scratch[e.first] = e.second;
    for (const auto& e : other.entries_) scratch[e.first] += f * e.second;
    entries_.clear();
    for (std::size_t i = 0; i < scratch.size(); ++i) {
      if (scratch[i] != 0) {
        entries_.emplace_back(i, scratch[i]);
        scratch[i] = 0;
      }
    }
  }

  friend bool operator==(const SparseVector&, const SparseVector&) = default;

 private:
  std::vector<Entry> entries_;
};

struct SparseMatrix {
  std::size_t cols = 0;
  std::vector<SparseVector> rows;

  void check() const {
    for (const auto& r : rows)
      if (!r.empty() && r.entries().back().first >= cols)
        throw std::out_of_range("SparseMatrix: column index out of range");
  }
};

struct RrefResult {
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;  // pivot column of rows[i]
  SparseMatrix rows;                // reduced row-echelon form, rank rows
};

namespace detail {

inline void eliminate(SparseVector& target, const BigRational& f, const SparseVector& pivot_row,
                      std::size_t cols, std::vector<BigRational>& scratch) {
  if (2 * pivot_row.nnz() > cols) {
    if (scratch.size() != cols) scratch.assign(cols, BigRational(0));
    target.axpy_dense(f, pivot_row, scratch);
  } else {
    target.axpy(f, pivot_row);
  }
}

}  // namespace detail

/// Gauss-Jordan elimination over Q. Pivots are taken column by column; among
/// the rows leading in a column the one with the smallest bit-size wins.
inline RrefResult rref(const SparseMatrix& m) {
  m.check();
  std::vector<BigRational> scratch;
  // Pending rows bucketed by leading column.
  std::map<std::size_t, std::vector<SparseVector>> buckets;
  for (const auto& r : m.rows)
    if (!r.empty()) buckets[r.lead()].push_back(r);

  RrefResult out;
  out.rows.cols = m.cols;
  while (!buckets.empty()) {
    auto node = buckets.extract(buckets.begin());
    std::size_t col = node.key();
    auto& cands = node.mapped();
    auto best = std::min_element(cands.begin(), cands.end(), [](const auto& a, const auto& b) {
      return a.bit_cost() < b.bit_cost();
    });
    SparseVector pivot = std::move(*best);
    cands.erase(best);
    pivot.scale(1 / pivot.entries().front().second);
    for (auto& r : cands) {
      BigRational f = -r.entries().front().second;
      detail::eliminate(r, f, pivot, m.cols, scratch);
      if (!r.empty()) buckets[r.lead()].push_back(std::move(r));
    }
    out.pivots.push_back(col);
    out.rows.rows.push_back(std::move(pivot));
  }
  // Back substitution, last pivot first.
  for (std::size_t i = out.rows.rows.size(); i-- > 0;) {
    const std::size_t col = out.pivots[i];
    for (std::size_t j = 0; j < i; ++j) {
      BigRational f = out.rows.rows[j].at(col);
      if (f != 0) detail::eliminate(out.rows.rows[j], -f, out.rows.rows[i], m.cols, scratch);
    }
  }
  out.rank = out.rows.rows.size();
  return out;
}

/// Coordinates c with v = sum c_i * rows_i, or nullopt when v is not in the
/// row span ("not-in-span").
inline std::optional<std::vector<BigRational>> express(const SparseVector& v, const RrefResult& r) {
  std::vector<BigRational> coeffs(r.rank);
  SparseVector rest = v;
  for (std::size_t i = 0; i < r.rank; ++i) {
    coeffs[i] = v.at(r.pivots[i]);
    rest.axpy(-coeffs[i], r.rows.rows[i]);
  }
  if (!rest.empty()) return std::nullopt;
  return coeffs;
}

}  // namespace periodlab
