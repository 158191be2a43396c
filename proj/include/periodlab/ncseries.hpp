#pragma once

// Noncommutative power series in e0, e1 truncated at a total weight, with
// coefficients in SymbolPoly. A word "10" stands for e1 e0.

#include <map>
#include <string>

#include "periodlab/relations.hpp"
#include "periodlab/symbol_algebra.hpp"
#include "periodlab/word.hpp"

namespace periodlab {

class NCSeries {
 public:
  using map_type = std::map<Word, SymbolPoly>;

  explicit NCSeries(std::size_t max_weight = 0) : w_(max_weight) {}

  static NCSeries one(std::size_t max_weight) {
    NCSeries s(max_weight);
    s.add(Word(""), SymbolPoly(1));
    return s;
  }
  static NCSeries letter(char l, std::size_t max_weight, const SymbolPoly& c = SymbolPoly(1)) {
    NCSeries s(max_weight);
    s.add(Word(std::string(1, l)), c);
    return s;
  }

  std::size_t max_weight() const noexcept { return w_; }
  const map_type& terms() const noexcept { return terms_; }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }

  /// Adds c*w; words beyond the truncation are dropped.
  void add(const Word& w, const SymbolPoly& c) {
    if (w.level() != 1) throw std::invalid_argument("series are over the letters e0, e1");
    if (w.weight() > w_ || c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  SymbolPoly coefficient(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? SymbolPoly() : it->second;
  }

  /// Only the words of exactly weight k.
  NCSeries homogeneous_part(std::size_t k) const {
    NCSeries out(w_);
    for (const auto& [w, c] : terms_)
      if (w.weight() == k) out.add(w, c);
    return out;
  }

  NCSeries& operator+=(const NCSeries& o) {
    for (const auto& [w, c] : o.terms_) add(w, c);
    return *this;
  }
  NCSeries& operator-=(const NCSeries& o) {
    for (const auto& [w, c] : o.terms_) add(w, -c);
    return *this;
  }
  friend NCSeries operator+(NCSeries a, const NCSeries& b) { return a += b; }
  friend NCSeries operator-(NCSeries a, const NCSeries& b) { return a -= b; }
  friend NCSeries operator*(const NCSeries& a, const SymbolPoly& c) {
    NCSeries out(a.w_);
    for (const auto& [w, x] : a.terms_) out.add(w, x * c);
    return out;
  }
  friend bool operator==(const NCSeries& a, const NCSeries& b) { return a.terms_ == b.terms_; }

  /// Applies f to every coefficient.
  template <class F>
  NCSeries map_coefficients(F&& f) const {
    NCSeries out(w_);
    for (const auto& [w, c] : terms_) out.add(w, f(c));
    return out;
  }

  /// Words as bracketed letter strings: "1 + zeta(2)*[01] - zeta(2)*[10]".
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [w, c] : terms_) {
      std::string coef = c.to_string();
      bool negative = c.size() == 1 && coef.front() == '-';
      if (negative) coef.erase(0, 1);
      if (c.size() > 1) coef = "(" + coef + ")";
      std::string term;
      if (w.empty())
        term = coef;
      else if (coef == "1")
        term = "[" + w.letters() + "]";
      else
        term = coef + "*[" + w.letters() + "]";
      if (out.empty())
        out = (negative ? "-" : "") + term;
      else
        out += (negative ? " - " : " + ") + term;
    }
    return out;
  }

 private:
  std::size_t w_;
  map_type terms_;
};

/// Product truncated at weight W (the smaller of the operands' truncations
/// unless given explicitly).
inline NCSeries nc_mul(const NCSeries& a, const NCSeries& b, std::size_t W) {
  NCSeries out(W);
  for (const auto& [u, cu] : a) {
    if (u.weight() > W) continue;
    for (const auto& [v, cv] : b) {
      if (u.weight() + v.weight() > W) continue;
      out.add(u.concat(v), cu * cv);
    }
  }
  return out;
}

inline NCSeries operator*(const NCSeries& a, const NCSeries& b) {
  return nc_mul(a, b, std::min(a.max_weight(), b.max_weight()));
}

/// a^{-1} for a series whose empty-word coefficient is a non-zero rational.
inline NCSeries nc_inverse(const NCSeries& a, std::size_t W) {
  SymbolPoly c0 = a.coefficient(Word(""));
  if (!c0.is_constant() || c0.is_zero())
    throw DomainError("series is not invertible: leading coefficient " + c0.to_string() + " is not a unit");
  const BigRational inv0 = 1 / c0.constant();
  // a = c0 (1 + x), a^{-1} = c0^{-1} sum_k (-x)^k; x has no constant term so W+1 terms suffice.
  NCSeries minus_x(W);
  for (const auto& [w, c] : a)
    if (!w.empty()) minus_x.add(w, c * (-inv0));
  NCSeries out = NCSeries::one(W), power = NCSeries::one(W);
  for (std::size_t k = 1; k <= W; ++k) {
    power = nc_mul(power, minus_x, W);
    out += power;
  }
  return out * SymbolPoly(inv0);
}

/// exp(x) for a series without constant term.
inline NCSeries nc_exp(const NCSeries& x, std::size_t W) {
  if (!x.coefficient(Word("")).is_zero()) throw DomainError("nc_exp needs a series without constant term");
  NCSeries out = NCSeries::one(W), power = NCSeries::one(W);
  for (std::size_t k = 1; k <= W; ++k) {
    power = nc_mul(power, x, W) * SymbolPoly(BigRational(1, k));
    out += power;
  }
  return out;
}

/// exp(c * e_letter); the powers of a single letter are just repeated letters.
inline NCSeries nc_exp(const SymbolPoly& c, char letter, std::size_t W) {
  return nc_exp(NCSeries::letter(letter, W, c), W);
}

/// Generating series of regularized MZVs: the coefficient of w is the
/// regularized value of the hyperlogarithm L_w at 1 (ln-terms at 1 set to zero),
/// reduced to basis symbols. Weight-1 coefficients vanish.
inline NCSeries associator(std::size_t W, ReductionTables& tables) {
  if (tables.level() != 1) throw std::invalid_argument("the associator is built over level-1 tables");
  NCSeries Z = NCSeries::one(W);
  std::vector<std::string> layer{""};
  for (std::size_t n = 1; n <= W; ++n) {
    std::vector<std::string> next;
    for (const auto& s : layer) {
      next.push_back(s + '0');
      next.push_back(s + '1');
    }
    for (const auto& s : next) {
      IndexComb idx = to_index_form(regularize_at_one(Word(s)));
      if (idx.empty()) continue;
      Z.add(Word(s), SymbolPoly::from_indexes(reduce(idx, tables)));
    }
    layer = std::move(next);
  }
  return Z;
}

/// Continuation around z = 0: L -> exp(T e0) L.
inline NCSeries monodromy_M0(std::size_t W) { return nc_exp(SymbolPoly::T(), '0', W); }
inline NCSeries monodromy_M0_inverse(std::size_t W) { return nc_exp(-SymbolPoly::T(), '0', W); }

/// Continuation around z = 1: L -> Z exp(T e1) Z^{-1} L.
inline NCSeries monodromy_M1(std::size_t W, ReductionTables& tables) {
  NCSeries Z = associator(W, tables);
  return nc_mul(nc_mul(Z, nc_exp(SymbolPoly::T(), '1', W), W), nc_inverse(Z, W), W);
}
inline NCSeries monodromy_M1_inverse(std::size_t W, ReductionTables& tables) {
  NCSeries Z = associator(W, tables);
  return nc_mul(nc_mul(Z, nc_exp(-SymbolPoly::T(), '1', W), W), nc_inverse(Z, W), W);
}

/// The action of a monodromy operator on a series.
inline NCSeries apply_monodromy(const NCSeries& M, const NCSeries& L) {
  return nc_mul(M, L, std::min(M.max_weight(), L.max_weight()));
}

}  // namespace periodlab
