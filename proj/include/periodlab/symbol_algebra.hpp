#pragma once

// Commutative polynomials over Q in graded generators: T (standing for 2 pi i,
// weight 1), MZV symbols zeta(p) (weight |p|) and free named symbols.

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "periodlab/error.hpp"
#include "periodlab/numerics.hpp"
#include "periodlab/relations.hpp"
#include "periodlab/word.hpp"

namespace periodlab {

struct Generator {
  enum class Kind { T, Mzv, Named };
  Kind kind = Kind::T;
  MZVIndex index;
  std::string name;
  std::size_t named_weight = 0;

  static Generator t() { return {}; }
  static Generator mzv(MZVIndex p) { return {Kind::Mzv, std::move(p), {}, 0}; }
  static Generator named(std::string n, std::size_t weight) { return {Kind::Named, {}, std::move(n), weight}; }

  std::size_t weight() const {
    switch (kind) {
      case Kind::T: return 1;
      case Kind::Mzv: return index.weight();
      case Kind::Named: return named_weight;
    }
    return 0;
  }
  std::string to_string() const {
    switch (kind) {
      case Kind::T: return "T";
      case Kind::Mzv: return index.to_string();
      case Kind::Named: return name;
    }
    return {};
  }
  friend bool operator==(const Generator& a, const Generator& b) {
    return a.kind == b.kind && a.index == b.index && a.name == b.name;
  }
  friend bool operator<(const Generator& a, const Generator& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    if (a.kind == Kind::Mzv) return a.index < b.index;
    return a.name < b.name;
  }
};

/// Sorted generator powers; the empty monomial is 1.
using Monomial = std::map<Generator, unsigned>;

inline std::size_t weight(const Monomial& m) {
  std::size_t w = 0;
  for (const auto& [g, e] : m) w += g.weight() * e;
  return w;
}

class SymbolPoly {
 public:
  using map_type = std::map<Monomial, BigRational>;

  SymbolPoly() = default;
  SymbolPoly(const BigRational& c) {  // NOLINT: constants convert implicitly
    if (c != 0) terms_[Monomial{}] = c;
  }
  SymbolPoly(long c) : SymbolPoly(BigRational(c)) {}  // NOLINT
  explicit SymbolPoly(const Generator& g, const BigRational& c = 1) {
    if (c != 0) terms_[Monomial{{g, 1u}}] = c;
  }
  static SymbolPoly T() { return SymbolPoly(Generator::t()); }
  static SymbolPoly zeta(const MZVIndex& p) { return p.empty() ? SymbolPoly(1) : SymbolPoly(Generator::mzv(p)); }
  static SymbolPoly named(const std::string& n, std::size_t w) { return SymbolPoly(Generator::named(n, w)); }

  /// Linear combination of MZV symbols.
  static SymbolPoly from_indexes(const IndexComb& comb) {
    SymbolPoly out;
    for (const auto& [p, c] : comb) out += zeta(p) * c;
    return out;
  }

  void add(const Monomial& m, const BigRational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  const map_type& terms() const noexcept { return terms_; }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  /// Rational constant term (coefficient of the empty monomial).
  BigRational constant() const {
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? BigRational(0) : it->second;
  }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }

  /// Highest total weight of a monomial; 0 for constants.
  std::size_t max_weight() const {
    std::size_t w = 0;
    for (const auto& [m, c] : terms_) w = std::max(w, weight(m));
    return w;
  }
  unsigned degree_in_t() const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_)
      if (auto it = m.find(Generator::t()); it != m.end()) d = std::max(d, it->second);
    return d;
  }

  SymbolPoly& operator+=(const SymbolPoly& o) {
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
  }
  SymbolPoly& operator-=(const SymbolPoly& o) {
    for (const auto& [m, c] : o.terms_) add(m, -c);
    return *this;
  }
  friend SymbolPoly operator+(SymbolPoly a, const SymbolPoly& b) { return a += b; }
  friend SymbolPoly operator-(SymbolPoly a, const SymbolPoly& b) { return a -= b; }
  SymbolPoly operator-() const { return *this * BigRational(-1); }
  friend SymbolPoly operator*(const SymbolPoly& a, const BigRational& c) {
    SymbolPoly out;
    if (c == 0) return out;
    for (const auto& [m, x] : a.terms_) out.terms_.emplace(m, x * c);
    return out;
  }
  friend SymbolPoly operator*(const SymbolPoly& a, const SymbolPoly& b) {
    SymbolPoly out;
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        Monomial m = ma;
        for (const auto& [g, e] : mb) m[g] += e;
        out.add(m, ca * cb);
      }
    }
    return out;
  }
  SymbolPoly& operator*=(const SymbolPoly& b) { return *this = *this * b; }
  friend bool operator==(const SymbolPoly& a, const SymbolPoly& b) { return a.terms_ == b.terms_; }

  /// Human-readable form, e.g. "2/5*zeta(2)^2 - T*zeta(3) + 1"; "0" when empty.
  /// Terms run from highest to lowest weight.
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::vector<std::pair<const Monomial*, const BigRational*>> order;
    for (const auto& [m, c] : terms_) order.emplace_back(&m, &c);
    std::stable_sort(order.begin(), order.end(),
                     [](const auto& a, const auto& b) { return weight(*a.first) > weight(*b.first); });
    std::string out;
    for (const auto& [m, c] : order) {
      BigRational mag = abs(*c);
      std::string mono;
      for (const auto& [g, e] : *m) {
        if (!mono.empty()) mono += "*";
        mono += g.to_string();
        if (e > 1) mono += "^" + std::to_string(e);
      }
      std::string term = mono.empty() ? to_short_string(mag) : (mag == 1 ? mono : to_short_string(mag) + "*" + mono);
      if (out.empty())
        out = (*c < 0 ? "-" : "") + term;
      else
        out += (*c < 0 ? " - " : " + ") + term;
    }
    return out;
  }

 private:
  map_type terms_;
};

/// Rewrites every product of MZV symbols as a single combination of basis
/// symbols: multiply out with the stuffle product and reduce through `tables`.
/// Powers of T and named symbols are kept as they are.
inline SymbolPoly normalize(const SymbolPoly& poly, ReductionTables& tables) {
  SymbolPoly out;
  for (const auto& [m, c] : poly) {
    Monomial rest;
    IndexComb product(MZVIndex({}, {}, tables.level()));
    for (const auto& [g, e] : m) {
      if (g.kind != Generator::Kind::Mzv) {
        rest.emplace(g, e);
        continue;
      }
      MZVIndex p = g.index.with_level(tables.level());
      for (unsigned k = 0; k < e; ++k) {
        IndexComb next;
        for (const auto& [q, x] : product) next += stuffle(q, p) * x;
        product = std::move(next);
      }
    }
    SymbolPoly linear = SymbolPoly::from_indexes(reduce(product, tables));
    SymbolPoly restp;
    restp.add(rest, c);
    out += restp * linear;
  }
  return out;
}

using GeneratorValue = std::function<ArbComplex(const Generator&)>;

/// Ring homomorphism to C given values for the generators.
inline ArbComplex evaluate(const SymbolPoly& poly, const GeneratorValue& value, const PrecisionPolicy& pol) {
  ArbComplex total{Complex(pol.bits()), Radius(), pol.digits};
  std::map<Generator, ArbComplex> cache;
  for (const auto& [m, c] : poly) {
    ArbComplex term{Complex(1, pol.bits()), Radius(), pol.digits};
    for (const auto& [g, e] : m) {
      auto it = cache.find(g);
      if (it == cache.end()) it = cache.emplace(g, value(g)).first;
      for (unsigned k = 0; k < e; ++k) term = term * it->second;
    }
    total = total + term * c;
  }
  return total;
}

/// T -> 2 pi i, zeta(p) -> its numerical value; named symbols are rejected.
inline GeneratorValue standard_values(MzvEvaluator& mzv) {
  return [&mzv](const Generator& g) -> ArbComplex {
    const PrecisionPolicy& pol = mzv.policy();
    switch (g.kind) {
      case Generator::Kind::T: {
        ArbReal two_pi = pi(pol) * ArbReal{Real(2, pol.bits()), Radius(), pol.digits};
        return {Complex(Real(pol.bits()), two_pi.mid), two_pi.rad, pol.digits};
      }
      case Generator::Kind::Mzv:
        return to_complex(mzv(g.index));
      case Generator::Kind::Named:
        break;
    }
    throw DomainError("no numerical value for symbol " + g.to_string());
  };
}

}  // namespace periodlab
