#pragma once

// Expression language for the command line:
//   expr    := ['-'] term (('+'|'-') term)*
//   term    := factor ('*' factor)*
//   factor  := 'zeta(' ints ')' | 'phi(' ints ')' | 'Li[' ints '](' numbers ')'
//            | 'L[' letters '](' number ')' | rational | '(' expr ')'
//   letters := ('0'|'1'|'m') {',' ('0'|'1'|'m')}
//   number  := rational, decimal or a+bi
// Negative zeta entries mark a twist -1, as in zeta(1,-2).

#include <cctype>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "periodlab/error.hpp"
#include "periodlab/numerics.hpp"
#include "periodlab/symbol_algebra.hpp"

namespace periodlab {

struct Span {
  std::size_t begin = 0, end = 0;
};

/// An exact complex number re + im*i.
struct ComplexRational {
  BigRational re, im;
  bool is_real() const { return im == 0; }
  friend bool operator==(const ComplexRational&, const ComplexRational&) = default;
};

struct Expr {
  enum class Kind { Zeta, Phi, Li, Word, Product, Sum, Rational, Complex };
  Kind kind = Kind::Rational;
  Span span;
  std::vector<int> ints;              // Zeta / Phi / Li exponents
  std::string letters;                // Word
  std::vector<ComplexRational> args;  // Li arguments; the single Word argument
  ComplexRational number;             // Rational (im = 0) / Complex
  std::vector<Expr> children;         // Product / Sum
  std::vector<int> signs;             // Sum: +1 / -1 per child

  /// Structural equality, ignoring spans.
  friend bool operator==(const Expr& a, const Expr& b) {
    return a.kind == b.kind && a.ints == b.ints && a.letters == b.letters && a.args == b.args &&
           a.number == b.number && a.children == b.children && a.signs == b.signs;
  }
};

namespace detail {

class ExprParser {
 public:
  explicit ExprParser(std::string_view text) : s_(text) {}

  Expr parse() {
    Expr e = expr();
    skip();
    if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, i_); }
  [[noreturn]] static void semantic(const std::string& msg, std::size_t at) {
    throw ParseError("semantic error: " + msg, at);
  }

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool peek(char c) {
    skip();
    return i_ < s_.size() && s_[i_] == c;
  }
  bool accept(char c) {
    if (!peek(c)) return false;
    ++i_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  bool keyword(std::string_view k) {
    skip();
    if (s_.substr(i_, k.size()) != k) return false;
    i_ += k.size();
    return true;
  }

  Expr expr() {
    skip();
    const std::size_t start = i_;
    std::vector<Expr> terms;
    std::vector<int> signs;
    int sign = accept('-') ? -1 : 1;
    for (;;) {
      terms.push_back(term());
      signs.push_back(sign);
      if (accept('+'))
        sign = 1;
      else if (accept('-'))
        sign = -1;
      else
        break;
    }
    if (terms.size() == 1 && signs[0] == 1) return std::move(terms[0]);
    Expr e;
    e.kind = Expr::Kind::Sum;
    e.span = {start, i_};
    e.children = std::move(terms);
    e.signs = std::move(signs);
    return e;
  }

  Expr term() {
    skip();
    const std::size_t start = i_;
    std::vector<Expr> factors{factor()};
    while (accept('*')) factors.push_back(factor());
    if (factors.size() == 1) return std::move(factors[0]);
    Expr e;
    e.kind = Expr::Kind::Product;
    e.span = {start, i_};
    e.children = std::move(factors);
    return e;
  }

  Expr factor() {
    skip();
    const std::size_t start = i_;
    Expr e;
    if (keyword("zeta(")) {
      e.kind = Expr::Kind::Zeta;
      e.ints = ints(')', true);
    } else if (keyword("phi(")) {
      e.kind = Expr::Kind::Phi;
      e.ints = ints(')', false);
    } else if (keyword("Li[")) {
      e.kind = Expr::Kind::Li;
      e.ints = ints(']', false);
      expect('(');
      const std::size_t args_at = i_;
      do e.args.push_back(number()); while (accept(','));
      expect(')');
      if (e.args.size() != e.ints.size())
        semantic("Li has " + std::to_string(e.ints.size()) + " exponents but " + std::to_string(e.args.size()) +
                     " arguments",
                 args_at);
    } else if (keyword("L[")) {
      e.kind = Expr::Kind::Word;
      for (;;) {
        skip();
        if (i_ >= s_.size() || (s_[i_] != '0' && s_[i_] != '1' && s_[i_] != 'm')) fail("expected a letter 0, 1 or m");
        e.letters += s_[i_++];
        if (!accept(',')) break;
      }
      expect(']');
      expect('(');
      e.args.push_back(number());
      expect(')');
    } else if (accept('(')) {
      Expr inner = expr();
      expect(')');
      return inner;
    } else if (i_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[i_])) || s_[i_] == '.')) {
      e.kind = Expr::Kind::Rational;
      e.number = {unsigned_rational(), 0};
    } else {
      fail(i_ < s_.size() ? "unexpected '" + std::string(1, s_[i_]) + "'" : "unexpected end of input");
    }
    e.span = {start, i_};
    return e;
  }

  std::vector<int> ints(char close, bool allow_negative) {
    const std::size_t open = i_;
    std::vector<int> out;
    if (accept(close)) semantic("an index needs at least one entry", open);
    do {
      skip();
      const std::size_t at = i_;
      bool neg = false;
      if (i_ < s_.size() && s_[i_] == '-') {
        neg = true;
        ++i_;
      }
      std::size_t d = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      if (d == i_) fail("expected an integer");
      if (i_ - d > 6) semantic("index entry too large", at);
      int n = std::stoi(std::string(s_.substr(d, i_ - d)));
      if (n < 1) semantic("index entries must be >= 1", at);
      if (neg && !allow_negative) semantic("negative entries are only allowed in zeta(...)", at);
      out.push_back(neg ? -n : n);
    } while (accept(','));
    expect(close);
    return out;
  }

  BigRational unsigned_rational() {
    skip();
    const std::size_t start = i_;
    while (i_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[i_])) || s_[i_] == '.')) ++i_;
    if (i_ < s_.size() && (s_[i_] == 'e' || s_[i_] == 'E')) {
      std::size_t j = i_ + 1;
      if (j < s_.size() && (s_[j] == '+' || s_[j] == '-')) ++j;
      if (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) {
        i_ = j;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      }
    }
    if (start == i_) fail("expected a number");
    BigRational q;
    try {
      q = parse_rational(s_.substr(start, i_ - start));
    } catch (const ParseError& e) {
      throw ParseError("malformed number", start + e.position());
    }
    // "p/q" only when a denominator follows directly.
    if (i_ + 1 < s_.size() && s_[i_] == '/' && std::isdigit(static_cast<unsigned char>(s_[i_ + 1]))) {
      ++i_;
      const std::size_t den_at = i_;
      BigRational d = unsigned_rational();
      if (d == 0) semantic("zero denominator", den_at);
      q /= d;
    }
    return q;
  }

  bool at_number_start() {
    skip();
    return i_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[i_])) || s_[i_] == '.');
  }

  /// [sign] real | [sign] [real] 'i' | [sign] real ('+'|'-') [real] 'i'
  ComplexRational number() {
    int sign = accept('-') ? -1 : (accept('+'), 1);
    if (accept('i')) return {0, BigRational(sign)};
    BigRational a = unsigned_rational() * sign;
    if (accept('i')) return {0, a};
    skip();
    if (i_ < s_.size() && (s_[i_] == '+' || s_[i_] == '-')) {
      const std::size_t save = i_;
      int s2 = s_[i_++] == '-' ? -1 : 1;
      if (accept('i')) return {a, BigRational(s2)};
      if (at_number_start()) {
        BigRational b = unsigned_rational() * s2;
        if (accept('i')) return {a, b};
      }
      i_ = save;
      fail("expected an imaginary part ending in 'i'");
    }
    return {a, 0};
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

inline std::string join_ints(const std::vector<int>& v) {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) out += (k ? "," : "") + std::to_string(v[k]);
  return out;
}

}  // namespace detail

inline Expr parse_expr(std::string_view text) { return detail::ExprParser(text).parse(); }

inline std::string to_string(const ComplexRational& z) {
  if (z.im == 0) return to_short_string(z.re);
  std::string im = to_short_string(abs(z.im)) + "i";
  if (z.re == 0) return (z.im < 0 ? "-" : "") + im;
  return to_short_string(z.re) + (z.im < 0 ? "-" : "+") + im;
}

/// Canonical text; parse_expr(to_string(e)) == e.
inline std::string to_string(const Expr& e) {
  using K = Expr::Kind;
  auto child = [&](const Expr& c) {
    bool wrap = c.kind == K::Sum || (c.kind == e.kind && e.kind == K::Product);
    return wrap ? "(" + to_string(c) + ")" : to_string(c);
  };
  switch (e.kind) {
    case K::Zeta: return "zeta(" + detail::join_ints(e.ints) + ")";
    case K::Phi: return "phi(" + detail::join_ints(e.ints) + ")";
    case K::Li: {
      std::string a;
      for (std::size_t k = 0; k < e.args.size(); ++k) a += (k ? "," : "") + to_string(e.args[k]);
      return "Li[" + detail::join_ints(e.ints) + "](" + a + ")";
    }
    case K::Word: {
      std::string l;
      for (std::size_t k = 0; k < e.letters.size(); ++k) l += (k ? "," : "") + std::string(1, e.letters[k]);
      return "L[" + l + "](" + to_string(e.args[0]) + ")";
    }
    case K::Rational:
    case K::Complex: return to_string(e.number);
    case K::Product: {
      std::string out;
      for (std::size_t k = 0; k < e.children.size(); ++k) out += (k ? "*" : "") + child(e.children[k]);
      return out;
    }
    case K::Sum: {
      std::string out;
      for (std::size_t k = 0; k < e.children.size(); ++k) {
        if (k == 0)
          out = e.signs[0] < 0 ? "-" : "";
        else
          out += e.signs[k] < 0 ? " - " : " + ";
        out += child(e.children[k]);
      }
      return out;
    }
  }
  return {};
}

/// Index of a zeta(...) node; negative entries become twists at level 2.
inline MZVIndex index_of(const Expr& e) {
  if (e.kind == Expr::Kind::Phi) return MZVIndex::phi(e.ints);
  std::vector<int> ex, tw;
  bool twisted = false;
  for (int n : e.ints) {
    ex.push_back(std::abs(n));
    tw.push_back(n < 0 ? -1 : 1);
    twisted |= n < 0;
  }
  return MZVIndex(std::move(ex), std::move(tw), twisted ? 2 : 1);
}

/// Exact form as a polynomial in MZV symbols. Polylogarithms are symbolic
/// only at arguments +-1 (L-words only at 1); anything else throws DomainError.
inline SymbolPoly to_symbolic(const Expr& e) {
  using K = Expr::Kind;
  switch (e.kind) {
    case K::Zeta:
    case K::Phi: return SymbolPoly::zeta(index_of(e));
    case K::Rational: return SymbolPoly(e.number.re);
    case K::Complex: break;
    case K::Li: {
      // Li_k(z) with z_i = +-1 is the index (k; z) times prod z_i.
      std::vector<int> tw;
      BigRational sign = 1;
      for (const auto& z : e.args) {
        if (!z.is_real() || (z.re != 1 && z.re != -1)) throw DomainError("no exact form for " + to_string(e));
        tw.push_back(z.re == 1 ? 1 : -1);
        sign *= z.re;
      }
      bool twisted = std::find(tw.begin(), tw.end(), -1) != tw.end();
      return SymbolPoly::zeta(MZVIndex(e.ints, tw, twisted ? 2 : 1)) * sign;
    }
    case K::Word: {
      if (e.args[0] != ComplexRational{1, 0} || e.letters.front() == '0')
        throw DomainError("no exact form for " + to_string(e));
      SignedIndex si = index_of_word(Word::parse(e.letters));
      return SymbolPoly::zeta(si.index) * BigRational(si.sign);
    }
    case K::Product: {
      SymbolPoly out(1);
      for (const auto& c : e.children) out *= to_symbolic(c);
      return out;
    }
    case K::Sum: {
      SymbolPoly out;
      for (std::size_t k = 0; k < e.children.size(); ++k)
        out += to_symbolic(e.children[k]) * BigRational(e.signs[k]);
      return out;
    }
  }
  throw DomainError("no exact form for " + to_string(e));
}

inline ArbComplex exact_complex(const ComplexRational& z, const PrecisionPolicy& pol) {
  Complex c(Real(z.re, pol.bits()), Real(z.im, pol.bits()));
  return {c, Radius::rounding(c, pol.bits()), pol.digits};
}

/// Numerical value with a rigorous error ball.
inline ArbComplex evaluate(const Expr& e, MzvEvaluator& mzv) {
  using K = Expr::Kind;
  const PrecisionPolicy& pol = mzv.policy();
  auto complex_args = [&] {
    std::vector<Complex> zs;
    for (const auto& z : e.args) zs.push_back(exact_complex(z, pol).mid);
    return zs;
  };
  switch (e.kind) {
    case K::Zeta:
    case K::Phi: return to_complex(mzv(index_of(e)));
    case K::Rational:
    case K::Complex: return exact_complex(e.number, pol);
    case K::Li: return eval_Li(e.ints, complex_args(), pol);
    case K::Word: {
      Word w = Word::parse(e.letters);
      if (e.args[0] == ComplexRational{1, 0}) {
        if (!w.is_convergent() || w.letters().front() == '0')
          throw DomainError("L[" + w.letters() + "](1) diverges; the word must start with a non-zero letter and not end in 1");
        return to_complex(eval_word_at_one(w, pol));
      }
      return eval_word(w, complex_args()[0], pol);
    }
    case K::Product: {
      ArbComplex out = exact_complex({1, 0}, pol);
      for (const auto& c : e.children) out = out * evaluate(c, mzv);
      return out;
    }
    case K::Sum: {
      ArbComplex out = exact_complex({0, 0}, pol);
      for (std::size_t k = 0; k < e.children.size(); ++k) {
        ArbComplex v = evaluate(e.children[k], mzv);
        out = e.signs[k] < 0 ? out - v : out + v;
      }
      return out;
    }
  }
  throw DomainError("cannot evaluate " + to_string(e));
}

}  // namespace periodlab
