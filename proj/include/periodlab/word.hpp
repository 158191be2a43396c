#pragma once

// Words over the alphabets {0,1} (level 1) and {0,1,m} (level 2, m = -1),
// their index forms (n_1,...,n_d; eps_1,...,eps_d), and the shuffle and
// stuffle products.
//
// Words concatenate to the right: the last letter is the outermost
// integration. The letter '1' stands for sigma = 1, 'm' for sigma = -1.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "periodlab/rational.hpp"

namespace periodlab {

/// Supported alphabet levels: N = 1 (sigma in {0,1}) and N = 2 (sigma in {0,1,-1}).
inline void check_level(int level) {
  if (level != 1 && level != 2) throw std::invalid_argument("level must be 1 or 2");
}

/// Letters of the level-N alphabet in canonical order (0 < root 0 < root 1).
inline std::string alphabet_letters(int level) {
  check_level(level);
  return level == 1 ? "01" : "01m";
}

class Word {
 public:
  Word() = default;

  explicit Word(std::string letters, int level = 1) : letters_(std::move(letters)), level_(level) {
    check_level(level_);
    for (char c : letters_) {
      if (c != '0' && c != '1' && c != 'm')
        throw std::invalid_argument(std::string("invalid letter '") + c + "'");
      if (c == 'm' && level_ < 2) throw std::invalid_argument("letter 'm' needs level 2");
    }
  }

  /// Accepts the compact form "110" or the comma form "1,1,0". The level is
  /// raised to 2 when an 'm' is present.
  static Word parse(std::string_view text, int level = 1) {
    std::string letters;
    for (char c : text) {
      if (c == ',' || c == ' ') continue;
      letters += c;
    }
    if (letters.find('m') != std::string::npos) level = std::max(level, 2);
    return Word(std::move(letters), level);
  }

  const std::string& letters() const noexcept { return letters_; }
  int level() const noexcept { return level_; }
  std::size_t weight() const noexcept { return letters_.size(); }
  std::size_t depth() const noexcept {
    return static_cast<std::size_t>(std::count_if(letters_.begin(), letters_.end(),
                                                  [](char c) { return c != '0'; }));
  }
  bool empty() const noexcept { return letters_.empty(); }

  /// L_w(1) converges iff the last letter is not sigma = 1.
  bool is_convergent() const noexcept { return letters_.empty() || letters_.back() != '1'; }

  /// False exactly for 0^n, n >= 1 (the words carrying ln z at z = 0).
  bool is_log_free_at_zero() const noexcept {
    return letters_.empty() ||
           std::any_of(letters_.begin(), letters_.end(), [](char c) { return c != '0'; });
  }

  Word concat(const Word& other) const {
    return Word(letters_ + other.letters_, std::max(level_, other.level_));
  }

  /// "1" denotes the empty word (the unit).
  std::string to_string() const { return letters_.empty() ? "1" : letters_; }

  friend bool operator==(const Word&, const Word&) = default;
  friend std::strong_ordering operator<=>(const Word& a, const Word& b) {
    if (auto c = a.level_ <=> b.level_; c != 0) return c;
    if (auto c = a.letters_.size() <=> b.letters_.size(); c != 0) return c;
    return a.letters_.compare(b.letters_) <=> 0;
  }

 private:
  std::string letters_;
  int level_ = 1;
};

/// Index form (n_1,...,n_d; eps_1,...,eps_d) with n_i >= 1 and eps_i = +-1.
/// Its value is  sum_{0<m_1<...<m_d} prod eps_i^(m_i - 1) / m_i^(n_i),
/// so zeta(n...) has all eps = +1 and phi(n...) has all eps = -1.
class MZVIndex {
 public:
  MZVIndex() = default;

  MZVIndex(std::vector<int> exponents, std::vector<int> twists, int level)
      : exponents_(std::move(exponents)), twists_(std::move(twists)), level_(level) {
    check_level(level_);
    if (twists_.empty()) twists_.assign(exponents_.size(), 1);
    if (twists_.size() != exponents_.size())
      throw std::invalid_argument("index: exponent and twist counts differ");
    for (int n : exponents_)
      if (n < 1) throw std::invalid_argument("index: exponents must be >= 1");
    for (int e : twists_) {
      if (e != 1 && e != -1) throw std::invalid_argument("index: twists must be +1 or -1");
      if (e == -1 && level_ < 2) throw std::invalid_argument("index: twist -1 needs level 2");
    }
  }

  static MZVIndex zeta(std::vector<int> exponents, int level = 1) {
    return MZVIndex(std::move(exponents), {}, level);
  }
  static MZVIndex phi(std::vector<int> exponents) {
    std::vector<int> tw(exponents.size(), -1);
    return MZVIndex(std::move(exponents), std::move(tw), 2);
  }

  const std::vector<int>& exponents() const noexcept { return exponents_; }
  const std::vector<int>& twists() const noexcept { return twists_; }
  int level() const noexcept { return level_; }
  std::size_t depth() const noexcept { return exponents_.size(); }
  bool empty() const noexcept { return exponents_.empty(); }
  std::size_t weight() const noexcept {
    std::size_t w = 0;
    for (int n : exponents_) w += static_cast<std::size_t>(n);
    return w;
  }

  /// Convergent iff d = 0, n_d >= 2, or the outermost twist is -1.
  bool is_convergent() const noexcept {
    return exponents_.empty() || exponents_.back() >= 2 || twists_.back() == -1;
  }

  bool all_twisted() const noexcept {
    return !twists_.empty() &&
           std::all_of(twists_.begin(), twists_.end(), [](int e) { return e == -1; });
  }

  MZVIndex with_level(int level) const { return MZVIndex(exponents_, twists_, level); }

  /// "1" for the empty index, "phi(1,3)" when every twist is -1, otherwise
  /// "zeta(1,-2)" with negative entries marking twist -1.
  std::string to_string() const {
    if (exponents_.empty()) return "1";
    std::ostringstream os;
    bool phi = all_twisted();
    os << (phi ? "phi(" : "zeta(");
    for (std::size_t i = 0; i < exponents_.size(); ++i) {
      if (i) os << ',';
      if (!phi && twists_[i] == -1) os << '-';
      os << exponents_[i];
    }
    os << ')';
    return os.str();
  }

  friend bool operator==(const MZVIndex&, const MZVIndex&) = default;

  /// Canonical order: level, weight, depth, exponents, then twists with +1 first.
  friend std::strong_ordering operator<=>(const MZVIndex& a, const MZVIndex& b) {
    if (auto c = a.level_ <=> b.level_; c != 0) return c;
    if (auto c = a.weight() <=> b.weight(); c != 0) return c;
    if (auto c = a.depth() <=> b.depth(); c != 0) return c;
    if (auto c = a.exponents_ <=> b.exponents_; c != 0) return c;
    for (std::size_t i = 0; i < a.twists_.size(); ++i)
      if (a.twists_[i] != b.twists_[i]) return a.twists_[i] > b.twists_[i] ? std::strong_ordering::less
                                                                          : std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  std::vector<int> exponents_;
  std::vector<int> twists_;
  int level_ = 1;
};

inline std::size_t weight(const Word& w) { return w.weight(); }
inline std::size_t depth(const Word& w) { return w.depth(); }
inline bool is_convergent(const Word& w) { return w.is_convergent(); }
inline std::size_t weight(const MZVIndex& p) { return p.weight(); }
inline std::size_t depth(const MZVIndex& p) { return p.depth(); }
inline bool is_convergent(const MZVIndex& p) { return p.is_convergent(); }

inline std::string to_string(const Word& w) { return w.to_string(); }
inline std::string to_string(const MZVIndex& p) { return p.to_string(); }

/// Finite rational linear combination of keys; zero coefficients are never stored.
template <class Key>
class LinComb {
 public:
  using map_type = std::map<Key, BigRational>;

  LinComb() = default;
  explicit LinComb(const Key& k, const BigRational& c = 1) { add(k, c); }

  void add(const Key& k, const BigRational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  BigRational coefficient(const Key& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? BigRational(0) : it->second;
  }

  const map_type& terms() const noexcept { return terms_; }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }
  bool empty() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  bool is_homogeneous() const {
    if (terms_.empty()) return true;
    auto w = weight(terms_.begin()->first);
    return std::all_of(terms_.begin(), terms_.end(),
                       [&](const auto& t) { return weight(t.first) == w; });
  }

  LinComb& operator+=(const LinComb& o) {
    for (const auto& [k, c] : o.terms_) add(k, c);
    return *this;
  }
  LinComb& operator-=(const LinComb& o) {
    for (const auto& [k, c] : o.terms_) add(k, -c);
    return *this;
  }
  LinComb& operator*=(const BigRational& s) {
    if (s == 0) {
      terms_.clear();
    } else {
      for (auto& t : terms_) t.second *= s;
    }
    return *this;
  }
  friend LinComb operator+(LinComb a, const LinComb& b) { return a += b; }
  friend LinComb operator-(LinComb a, const LinComb& b) { return a -= b; }
  friend LinComb operator*(LinComb a, const BigRational& s) { return a *= s; }
  friend LinComb operator*(const BigRational& s, LinComb a) { return a *= s; }
  friend bool operator==(const LinComb&, const LinComb&) = default;

  /// Terms in descending canonical order, e.g. "2*110 + 101", "zeta(1,2) - zeta(3)".
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      BigRational c = it->second;
      bool negative = c < 0;
      if (negative) c = -c;
      if (first) {
        if (negative) os << '-';
      } else {
        os << (negative ? " - " : " + ");
      }
      std::string key = periodlab::to_string(it->first);
      if (c != 1) {
        os << to_short_string(c);
        if (key != "1") os << '*' << key;
      } else {
        os << key;
      }
      first = false;
    }
    return os.str();
  }

 private:
  map_type terms_;
};

using QLinComb = LinComb<Word>;
using IndexComb = LinComb<MZVIndex>;

namespace detail {

inline void shuffle_rec(const std::string& u, std::size_t i, const std::string& v, std::size_t j,
                        std::string& cur, std::map<std::string, long>& out) {
  if (i == u.size() || j == v.size()) {
    std::string w = cur;
    w.append(u, i, std::string::npos);
    w.append(v, j, std::string::npos);
    ++out[w];
    return;
  }
  cur.push_back(u[i]);
  shuffle_rec(u, i + 1, v, j, cur, out);
  cur.back() = v[j];
  shuffle_rec(u, i, v, j + 1, cur, out);
  cur.pop_back();
}

}  // namespace detail

/// Shuffle product: all order-preserving interleavings, with multiplicity.
inline QLinComb shuffle(const Word& u, const Word& v) {
  if (u.level() != v.level()) throw std::invalid_argument("shuffle: words over different alphabets");
  std::map<std::string, long> counts;
  std::string cur;
  detail::shuffle_rec(u.letters(), 0, v.letters(), 0, cur, counts);
  QLinComb out;
  for (const auto& [w, n] : counts) out.add(Word(w, u.level()), n);
  return out;
}

/// Stuffle (quasi-shuffle) product of index forms: entries merge on
/// collision with exponents added and twists multiplied.
inline IndexComb stuffle(const MZVIndex& p, const MZVIndex& q) {
  if (p.level() != q.level()) throw std::invalid_argument("stuffle: indexes of different levels");
  using Entries = std::vector<std::pair<int, int>>;
  auto entries = [](const MZVIndex& x) {
    Entries e;
    for (std::size_t i = 0; i < x.depth(); ++i) e.emplace_back(x.exponents()[i], x.twists()[i]);
    return e;
  };
  Entries a = entries(p), b = entries(q);
  std::map<std::pair<std::size_t, std::size_t>, std::map<Entries, long>> memo;
  // Products of the suffixes a[i..], b[j..]; leading entries are prepended.
  std::function<const std::map<Entries, long>&(std::size_t, std::size_t)> rec =
      [&](std::size_t i, std::size_t j) -> const std::map<Entries, long>& {
    auto key = std::make_pair(i, j);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    std::map<Entries, long> out;
    if (i == a.size() || j == b.size()) {
      Entries rest(a.begin() + static_cast<long>(i), a.end());
      rest.insert(rest.end(), b.begin() + static_cast<long>(j), b.end());
      out[rest] = 1;
    } else {
      auto prepend = [&](const std::pair<int, int>& head, const std::map<Entries, long>& tail) {
        for (const auto& [t, n] : tail) {
          Entries e;
          e.reserve(t.size() + 1);
          e.push_back(head);
          e.insert(e.end(), t.begin(), t.end());
          out[e] += n;
        }
      };
      prepend(a[i], rec(i + 1, j));
      prepend(b[j], rec(i, j + 1));
      prepend({a[i].first + b[j].first, a[i].second * b[j].second}, rec(i + 1, j + 1));
    }
    return memo.emplace(key, std::move(out)).first->second;
  };
  IndexComb result;
  for (const auto& [e, n] : rec(0, 0)) {
    std::vector<int> ex, tw;
    for (const auto& [x, t] : e) {
      ex.push_back(x);
      tw.push_back(t);
    }
    result.add(MZVIndex(std::move(ex), std::move(tw), p.level()), n);
  }
  return result;
}

struct SignedWord {
  int sign;
  Word word;
};

struct SignedIndex {
  int sign;
  MZVIndex index;
};

/// value(p) = sign * zeta_w with w = sigma_1 0^{n_1-1} ... sigma_d 0^{n_d-1},
/// sigma_i = eps_i * ... * eps_d, and sign = (-1)^d * prod eps_i.
inline SignedWord word_of_index(const MZVIndex& p) {
  std::string letters;
  int sign = (p.depth() % 2 == 0) ? 1 : -1;
  int sigma = 1;
  std::vector<int> sigmas(p.depth());
  for (std::size_t i = p.depth(); i-- > 0;) {
    sigma *= p.twists()[i];
    sigmas[i] = sigma;
    sign *= p.twists()[i];
  }
  for (std::size_t i = 0; i < p.depth(); ++i) {
    letters += sigmas[i] == 1 ? '1' : 'm';
    letters.append(static_cast<std::size_t>(p.exponents()[i] - 1), '0');
  }
  return {sign, Word(std::move(letters), p.level())};
}

/// Inverse of word_of_index; the word must start with a non-zero letter.
inline SignedIndex index_of_word(const Word& w) {
  const std::string& s = w.letters();
  if (!s.empty() && s.front() == '0')
    throw std::invalid_argument("index_of_word: word starts with letter 0");
  std::vector<int> exps, sigmas;
  for (char c : s) {
    if (c == '0') {
      ++exps.back();
    } else {
      exps.push_back(1);
      sigmas.push_back(c == '1' ? 1 : -1);
    }
  }
  std::vector<int> twists(sigmas.size());
  int sign = (sigmas.size() % 2 == 0) ? 1 : -1;
  for (std::size_t i = 0; i < sigmas.size(); ++i) {
    twists[i] = (i + 1 < sigmas.size()) ? sigmas[i] * sigmas[i + 1] : sigmas[i];
    sign *= twists[i];
  }
  return {sign, MZVIndex(std::move(exps), std::move(twists), w.level())};
}

/// Rewrites a combination of words (each starting with a non-zero letter)
/// in index form.
inline IndexComb to_index_form(const QLinComb& words) {
  IndexComb out;
  for (const auto& [w, c] : words) {
    auto [sign, idx] = index_of_word(w);
    out.add(idx, sign * c);
  }
  return out;
}

/// All convergent indexes of the given weight and level, in canonical order.
inline std::vector<MZVIndex> convergent_indexes(std::size_t weight, int level) {
  check_level(level);
  std::vector<MZVIndex> out;
  std::vector<int> exps;
  std::function<void(std::size_t)> compositions = [&](std::size_t left) {
    if (left == 0) {
      std::size_t d = exps.size();
      std::size_t twist_patterns = level == 1 ? 1 : (std::size_t{1} << d);
      for (std::size_t mask = 0; mask < twist_patterns; ++mask) {
        std::vector<int> tw(d);
        for (std::size_t i = 0; i < d; ++i) tw[i] = (mask >> i) & 1 ? -1 : 1;
        MZVIndex p(exps, tw, level);
        if (p.is_convergent()) out.push_back(std::move(p));
      }
      return;
    }
    for (std::size_t n = 1; n <= left; ++n) {
      exps.push_back(static_cast<int>(n));
      compositions(left - n);
      exps.pop_back();
    }
  };
  if (weight > 0) compositions(weight);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace periodlab
