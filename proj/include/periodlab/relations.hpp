#pragma once

// Regularized double-shuffle relations among (alternating) multiple zeta
// values, per-weight reduction tables, and shuffle regularization at z = 1.

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "periodlab/error.hpp"
#include "periodlab/linalg.hpp"
#include "periodlab/word.hpp"

namespace periodlab {

struct RelationSet {
  std::size_t weight = 0;
  int level = 1;
  std::vector<IndexComb> relations;  // each combination vanishes
};

/// Shuffle-side product value(p) * value(q), written in index form.
inline IndexComb shuffle_product_indexes(const MZVIndex& p, const MZVIndex& q) {
  auto [sp, wp] = word_of_index(p);
  auto [sq, wq] = word_of_index(q);
  IndexComb out = to_index_form(shuffle(wp, wq));
  out *= BigRational(sp * sq);
  return out;
}

/// zeta(e_1 sh w - e_1 * w) for a convergent index w. The divergent terms
/// (trivial outer twist, n_d = 1) cancel; a non-cancelling one is a bug.
inline IndexComb hoffman_relation(const MZVIndex& w) {
  MZVIndex one({1}, {1}, w.level());
  IndexComb rel = shuffle_product_indexes(one, w) - stuffle(one, w);
  for (const auto& [idx, c] : rel)
    if (!idx.is_convergent())
      throw std::logic_error("divergent term " + idx.to_string() + " did not cancel");
  return rel;
}

/// (a) zeta_{u sh v} - zeta_{u * v} over all unordered convergent pairs of
/// total weight `weight`, (b) the e_1-regularized family at weight - 1.
inline RelationSet generate_relations(std::size_t weight, int level) {
  check_level(level);
  RelationSet set{weight, level, {}};
  if (weight < 2) return set;
  auto push = [&](IndexComb r) {
    if (!r.empty()) set.relations.push_back(std::move(r));
  };
  std::vector<std::vector<MZVIndex>> by_weight(weight + 1);
  for (std::size_t k = 1; k < weight; ++k) by_weight[k] = convergent_indexes(k, level);
  for (std::size_t a = 1; 2 * a <= weight; ++a) {
    const auto& left = by_weight[a];
    const auto& right = by_weight[weight - a];
    for (std::size_t i = 0; i < left.size(); ++i) {
      for (std::size_t j = (2 * a == weight ? i : 0); j < right.size(); ++j)
        push(shuffle_product_indexes(left[i], right[j]) - stuffle(left[i], right[j]));
    }
  }
  for (const auto& w : by_weight[weight - 1]) push(hoffman_relation(w));
  return set;
}

/// Basis of the weight-`weight` convergent symbols modulo the relations, and
/// the expansion of every convergent symbol in that basis.
struct ReductionTable {
  std::size_t weight = 0;
  int level = 1;
  std::vector<MZVIndex> basis;
  /// index -> (basis position, coefficient), sorted by position.
  std::map<MZVIndex, std::vector<std::pair<std::size_t, BigRational>>> rows;

  IndexComb expansion(const MZVIndex& p) const {
    auto it = rows.find(p);
    if (it == rows.end()) throw std::out_of_range("no table row for " + p.to_string());
    IndexComb out;
    for (const auto& [pos, c] : it->second) out.add(basis[pos], c);
    return out;
  }

  friend bool operator==(const ReductionTable&, const ReductionTable&) = default;
};

/// Columns run from least to most preferred basis element, so the free
/// (non-pivot) columns of the rref are the greedy basis preferring low depth
/// and then lexicographically small exponents.
inline ReductionTable build_table(std::size_t weight, int level) {
  check_level(level);
  ReductionTable table;
  table.weight = weight;
  table.level = level;
  if (weight == 0) {
    table.basis.push_back(MZVIndex({}, {}, level));
    table.rows[table.basis[0]] = {{0, BigRational(1)}};
    return table;
  }
  std::vector<MZVIndex> symbols = convergent_indexes(weight, level);
  std::vector<MZVIndex> columns(symbols.rbegin(), symbols.rend());
  std::map<MZVIndex, std::size_t> column_of;
  for (std::size_t i = 0; i < columns.size(); ++i) column_of[columns[i]] = i;

  SparseMatrix m;
  m.cols = columns.size();
  for (const auto& rel : generate_relations(weight, level).relations) {
    std::vector<SparseVector::Entry> e;
    for (const auto& [idx, c] : rel) e.emplace_back(column_of.at(idx), c);
    m.rows.emplace_back(std::move(e));
  }
  RrefResult r = rref(m);

  std::vector<bool> is_pivot(columns.size(), false);
  for (auto p : r.pivots) is_pivot[p] = true;
  std::map<std::size_t, std::size_t> basis_pos;  // column -> basis position
  for (const auto& s : symbols) {
    std::size_t col = column_of.at(s);
    if (!is_pivot[col]) {
      basis_pos[col] = table.basis.size();
      table.basis.push_back(s);
    }
  }
  for (const auto& [col, pos] : basis_pos) table.rows[columns[col]] = {{pos, BigRational(1)}};
  for (std::size_t i = 0; i < r.rank; ++i) {
    std::vector<std::pair<std::size_t, BigRational>> row;
    for (const auto& [col, c] : r.rows.rows[i].entries()) {
      if (col == r.pivots[i]) continue;
      row.emplace_back(basis_pos.at(col), -c);
    }
    std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    table.rows[columns[r.pivots[i]]] = std::move(row);
  }
  return table;
}

/// Loader/saver hook so that tables can be cached outside this module.
struct TableStore {
  std::function<std::optional<ReductionTable>(std::size_t weight, int level)> load;
  std::function<void(const ReductionTable&)> save;
};

/// Reduction tables of one level, built on demand and shared once built.
class ReductionTables {
 public:
  explicit ReductionTables(int level = 1, TableStore store = {}) : level_(level), store_(std::move(store)) {
    check_level(level);
  }

  int level() const noexcept { return level_; }

  const ReductionTable& get(std::size_t weight) {
    std::lock_guard<std::mutex> lock(mutex_);
    if (auto it = tables_.find(weight); it != tables_.end()) return *it->second;
    std::optional<ReductionTable> t;
    if (store_.load) t = store_.load(weight, level_);
    if (!t) {
      t = build_table(weight, level_);
      if (store_.save) store_.save(*t);
    }
    return *tables_.emplace(weight, std::make_shared<ReductionTable>(std::move(*t))).first->second;
  }

  const ReductionTable* find(std::size_t weight) const {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = tables_.find(weight);
    return it == tables_.end() ? nullptr : it->second.get();
  }

  void ensure_up_to(std::size_t max_weight) {
    for (std::size_t w = 0; w <= max_weight; ++w) get(w);
  }

 private:
  int level_;
  TableStore store_;
  mutable std::mutex mutex_;
  std::map<std::size_t, std::shared_ptr<const ReductionTable>> tables_;
};

/// Rewrites a combination of convergent indexes on basis elements. Level-1
/// indexes are lifted when the tables are level 2.
inline IndexComb reduce(const IndexComb& expr, ReductionTables& tables) {
  IndexComb out;
  for (const auto& [idx, c] : expr) {
    if (!idx.is_convergent())
      throw DomainError("divergent symbol " + idx.to_string() + "; regularize first");
    if (idx.level() > tables.level())
      throw DomainError("symbol " + idx.to_string() + " needs level-2 tables");
    MZVIndex lifted = idx.with_level(tables.level());
    out += tables.get(lifted.weight()).expansion(lifted) * c;
  }
  return out;
}

/// Entry n (0 <= n <= max_weight) is the basis size of the weight-n table.
inline std::vector<std::size_t> dims_upper_bound(std::size_t max_weight, int level = 1) {
  ReductionTables tables(level);
  std::vector<std::size_t> out;
  for (std::size_t n = 0; n <= max_weight; ++n) out.push_back(tables.get(n).basis.size());
  return out;
}

inline std::vector<std::size_t> dims_upper_bound(std::size_t max_weight, ReductionTables& tables) {
  std::vector<std::size_t> out;
  for (std::size_t n = 0; n <= max_weight; ++n) out.push_back(tables.get(n).basis.size());
  return out;
}

/// Shuffle-regularized value at z = 1 with L_0(1) = L_1(1) = 0: rewrites any
/// word as a combination of words that start with a non-zero letter and do
/// not end in the letter 1.
inline QLinComb regularize_at_one(const Word& w) {
  const std::string& s = w.letters();
  if (s.empty()) return QLinComb(w);
  if (s.find_first_not_of('0') == std::string::npos) return {};
  if (s.find_first_not_of('1') == std::string::npos) return {};
  std::size_t lead0 = s.find_first_not_of('0');
  if (lead0 > 0) {
    // 0 sh 0^{k-1}v = k*w + (words with k-1 leading zeros); regularized 0 vanishes.
    QLinComb rest = shuffle(Word("0", w.level()), Word(s.substr(1), w.level()));
    rest.add(w, -BigRational(static_cast<long>(lead0)));
    QLinComb out;
    for (const auto& [x, c] : rest) out += regularize_at_one(x) * (-c / static_cast<long>(lead0));
    return out;
  }
  std::size_t trail1 = s.size() - 1 - s.find_last_not_of('1');
  if (trail1 > 0) {
    QLinComb rest = shuffle(Word("1", w.level()), Word(s.substr(0, s.size() - 1), w.level()));
    rest.add(w, -BigRational(static_cast<long>(trail1)));
    QLinComb out;
    for (const auto& [x, c] : rest) out += regularize_at_one(x) * (-c / static_cast<long>(trail1));
    return out;
  }
  return QLinComb(w);
}

}  // namespace periodlab
