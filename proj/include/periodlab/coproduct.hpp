#pragma once

// Coproducts: the classical-polylog coproduct over formal generators, and the
// deconcatenation coproduct on f-words. Also the dimension bookkeeping.

#include <cctype>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "periodlab/error.hpp"
#include "periodlab/rational.hpp"

namespace periodlab {

/// One formal generator: 1, Li_m(z), or (ln z)^k / k!.
struct PolylogSymbol {
  enum class Kind { One, Li, LogPow };
  Kind kind = Kind::One;
  int n = 0;

  static PolylogSymbol one() { return {}; }
  static PolylogSymbol li(int m) { return {Kind::Li, m}; }
  /// (ln z)^k/k!; k = 0 is the unit.
  static PolylogSymbol log_pow(int k) { return k == 0 ? one() : PolylogSymbol{Kind::LogPow, k}; }

  std::string to_string() const {
    switch (kind) {
      case Kind::One: return "1";
      case Kind::Li: return "Li" + std::to_string(n);
      case Kind::LogPow: return n == 1 ? "ln(z)" : "ln(z)^" + std::to_string(n) + "/" + std::to_string(n) + "!";
    }
    return {};
  }
  auto operator<=>(const PolylogSymbol&) const = default;
};

using Tensor2 = std::map<std::pair<PolylogSymbol, PolylogSymbol>, BigRational>;
using Tensor3 = std::map<std::tuple<PolylogSymbol, PolylogSymbol, PolylogSymbol>, BigRational>;

inline void add_term(Tensor2& t, const PolylogSymbol& a, const PolylogSymbol& b, const BigRational& c) {
  auto& x = t[{a, b}];
  x += c;
  if (x == 0) t.erase({a, b});
}

/// Delta of a single generator. ln z is primitive, so
/// Delta (ln z)^k/k! = sum_{i+j=k} (ln z)^i/i! (x) (ln z)^j/j!.
inline Tensor2 coproduct(const PolylogSymbol& s) {
  Tensor2 out;
  switch (s.kind) {
    case PolylogSymbol::Kind::One:
      add_term(out, s, s, 1);
      break;
    case PolylogSymbol::Kind::LogPow:
      for (int i = 0; i <= s.n; ++i) add_term(out, PolylogSymbol::log_pow(i), PolylogSymbol::log_pow(s.n - i), 1);
      break;
    case PolylogSymbol::Kind::Li:
      add_term(out, s, PolylogSymbol::one(), 1);
      for (int k = 0; k < s.n; ++k) add_term(out, PolylogSymbol::log_pow(k), PolylogSymbol::li(s.n - k), 1);
      break;
  }
  return out;
}

/// Delta Li_n = Li_n (x) 1 + sum_{k=0}^{n-1} (ln z)^k/k! (x) Li_{n-k}.
inline Tensor2 coproduct_polylog(int n) {
  if (n < 1) throw DomainError("coproduct_polylog needs n >= 1");
  return coproduct(PolylogSymbol::li(n));
}

/// (Delta (x) id) Delta and (id (x) Delta) Delta of a generator.
inline std::pair<Tensor3, Tensor3> coassociativity_sides(const PolylogSymbol& s) {
  Tensor3 left, right;
  for (const auto& [ab, c] : coproduct(s)) {
    for (const auto& [xy, d] : coproduct(ab.first)) left[{xy.first, xy.second, ab.second}] += c * d;
    for (const auto& [xy, d] : coproduct(ab.second)) right[{ab.first, xy.first, xy.second}] += c * d;
  }
  std::erase_if(left, [](const auto& kv) { return kv.second == 0; });
  std::erase_if(right, [](const auto& kv) { return kv.second == 0; });
  return {left, right};
}

inline std::string to_string(const Tensor2& t) {
  if (t.empty()) return "0";
  std::string out;
  for (const auto& [ab, c] : t) {
    std::string term = ab.first.to_string() + " (x) " + ab.second.to_string();
    if (c != 1 && c != -1) term = to_short_string(abs(c)) + "*" + term;
    out += out.empty() ? (c < 0 ? "-" : "") + term : (c < 0 ? " - " : " + ") + term;
  }
  return out;
}

/// A word f2^k f_{i1} ... f_{ir} with odd i_j >= 3; f2 is central.
class FWord {
 public:
  FWord() = default;
  FWord(unsigned f2_power, std::vector<int> odd) : f2_(f2_power), odd_(std::move(odd)) {
    for (int i : odd_) {
      if (i == 2) throw DomainError("f2 is central; give it through the f2 power");
      if (i < 3 || i % 2 == 0) throw DomainError("f-letters are f2 and odd f_n with n >= 3, got f" + std::to_string(i));
    }
  }

  /// Parses "f2^2 f3 f5", "f3f5", "1".
  static FWord parse(const std::string& text) {
    unsigned f2 = 0;
    std::vector<int> odd;
    std::size_t i = 0;
    auto skip = [&] {
      while (i < text.size() && (text[i] == ' ' || text[i] == '*')) ++i;
    };
    skip();
    if (text.substr(i) == "1") return {};
    while (i < text.size()) {
      if (text[i] != 'f') throw ParseError("expected 'f'", i);
      std::size_t start = ++i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (start == i) throw ParseError("expected an index after 'f'", i);
      int n = std::stoi(text.substr(start, i - start));
      unsigned e = 1;
      if (i < text.size() && text[i] == '^') {
        std::size_t es = ++i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (es == i) throw ParseError("expected an exponent", i);
        e = static_cast<unsigned>(std::stoul(text.substr(es, i - es)));
      }
      if (n == 2)
        f2 += e;
      else
        for (unsigned k = 0; k < e; ++k) odd.push_back(n);
      skip();
    }
    return FWord(f2, odd);
  }

  unsigned f2_power() const noexcept { return f2_; }
  const std::vector<int>& odd() const noexcept { return odd_; }
  std::size_t weight() const {
    std::size_t w = 2 * f2_;
    for (int i : odd_) w += static_cast<std::size_t>(i);
    return w;
  }
  bool is_unit() const { return f2_ == 0 && odd_.empty(); }

  std::string to_string() const {
    if (is_unit()) return "1";
    std::string out;
    if (f2_ == 1) out = "f2";
    if (f2_ > 1) out = "f2^" + std::to_string(f2_);
    for (int i : odd_) out += "f" + std::to_string(i);
    return out;
  }
  auto operator<=>(const FWord&) const = default;

 private:
  unsigned f2_ = 0;
  std::vector<int> odd_;
};

using FTensor2 = std::map<std::pair<FWord, FWord>, long>;
using FTensor3 = std::map<std::tuple<FWord, FWord, FWord>, long>;

/// Delta(f2^k f_{i1}..f_{ir}) = sum_j f_{i1}..f_{ij} (x) f2^k f_{ij+1}..f_{ir}.
inline FTensor2 deconcat_coproduct(const FWord& w) {
  FTensor2 out;
  const auto& o = w.odd();
  for (std::size_t j = 0; j <= o.size(); ++j) {
    FWord left(0, std::vector<int>(o.begin(), o.begin() + static_cast<long>(j)));
    FWord right(w.f2_power(), std::vector<int>(o.begin() + static_cast<long>(j), o.end()));
    out[{left, right}] += 1;
  }
  return out;
}

inline std::pair<FTensor3, FTensor3> coassociativity_sides(const FWord& w) {
  FTensor3 left, right;
  for (const auto& [ab, c] : deconcat_coproduct(w)) {
    for (const auto& [xy, d] : deconcat_coproduct(ab.first)) left[{xy.first, xy.second, ab.second}] += c * d;
    for (const auto& [xy, d] : deconcat_coproduct(ab.second)) right[{ab.first, xy.first, xy.second}] += c * d;
  }
  return {left, right};
}

inline std::string to_string(const FTensor2& t) {
  std::string out;
  for (const auto& [ab, c] : t) {
    std::string term = ab.first.to_string() + " (x) " + ab.second.to_string();
    if (c != 1) term = std::to_string(c) + "*" + term;
    out += out.empty() ? term : " + " + term;
  }
  return out.empty() ? "0" : out;
}

/// All f-words of exactly weight n (including f2 powers).
inline std::vector<FWord> fwords_of_weight(std::size_t n) {
  std::vector<FWord> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, std::size_t remaining) -> void {
    if (remaining % 2 == 0)
      out.emplace_back(static_cast<unsigned>(remaining / 2), cur);
    for (int i = 3; static_cast<std::size_t>(i) <= remaining; i += 2) {
      cur.push_back(i);
      self(self, remaining - static_cast<std::size_t>(i));
      cur.pop_back();
    }
  };
  rec(rec, n);
  return out;
}

/// Coefficients d_0..d_max of 1/(1 - t^2 - t^3).
inline std::vector<BigInteger> motivic_dims(std::size_t max_n) {
  std::vector<BigInteger> d(max_n + 1, 0);
  for (std::size_t n = 0; n <= max_n; ++n) {
    d[n] = n == 0 ? 1 : 0;
    if (n >= 2) d[n] += d[n - 2];
    if (n >= 3) d[n] += d[n - 3];
  }
  return d;
}

/// Number of ordered compositions of n into parts 2 and 3 (the Hoffman indexes
/// of weight n), counted by explicit enumeration.
inline std::size_t hoffman_count(std::size_t n) {
  std::size_t count = 0;
  auto rec = [&](auto&& self, std::size_t remaining) -> void {
    if (remaining == 0) {
      ++count;
      return;
    }
    if (remaining >= 2) self(self, remaining - 2);
    if (remaining >= 3) self(self, remaining - 3);
  };
  rec(rec, n);
  return count;
}

}  // namespace periodlab
