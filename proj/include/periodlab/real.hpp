#pragma once

// Arbitrary-precision real and complex numbers over MPFR, plus balls
// (midpoint + upward-rounded radius) used to report rigorous error bounds.

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include "periodlab/rational.hpp"

namespace periodlab {

/// Decimal digits requested by the caller plus guard digits; all series
/// truncations target an absolute tail below 10^-(digits + guard).
struct PrecisionPolicy {
  int digits = 30;
  int guard = 15;

  mpfr_prec_t bits() const {
    return static_cast<mpfr_prec_t>(std::ceil((digits + guard) * 3.3219280948873623)) + 16;
  }
  int target_exp10() const { return -(digits + guard); }
};

class Real {
 public:
  explicit Real(mpfr_prec_t prec = 128) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }
  Real(long x, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_si(v_, x, MPFR_RNDN);
  }
  Real(const BigRational& q, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
  }
  static Real from_double(double x, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_set_d(r.v_, x, MPFR_RNDN);
    return r;
  }

  Real(const Real& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Real(Real&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  mpfr_ptr get() noexcept { return v_; }
  mpfr_srcptr get() const noexcept { return v_; }
  mpfr_prec_t precision() const noexcept { return mpfr_get_prec(v_); }

  bool is_zero() const noexcept { return mpfr_zero_p(v_) != 0; }
  int sign() const noexcept { return mpfr_sgn(v_); }
  double to_double() const noexcept { return mpfr_get_d(v_, MPFR_RNDN); }

  Real operator-() const {
    Real r(precision());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }

#define PERIODLAB_REAL_BINOP(op, fn)                                           \
  friend Real operator op(const Real& a, const Real& b) {                     \
    Real r(std::max(a.precision(), b.precision()));                           \
    fn(r.v_, a.v_, b.v_, MPFR_RNDN);                                           \
    return r;                                                                  \
  }                                                                            \
  Real& operator op##=(const Real& b) {                                        \
    if (b.precision() > precision()) mpfr_prec_round(v_, b.precision(), MPFR_RNDN); \
    fn(v_, v_, b.v_, MPFR_RNDN);                                               \
    return *this;                                                              \
  }
  PERIODLAB_REAL_BINOP(+, mpfr_add)
  PERIODLAB_REAL_BINOP(-, mpfr_sub)
  PERIODLAB_REAL_BINOP(*, mpfr_mul)
  PERIODLAB_REAL_BINOP(/, mpfr_div)
#undef PERIODLAB_REAL_BINOP

  friend Real operator*(const Real& a, long b) {
    Real r(a.precision());
    mpfr_mul_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }
  friend Real operator*(long b, const Real& a) { return a * b; }
  friend Real operator/(const Real& a, long b) {
    Real r(a.precision());
    mpfr_div_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
  }
  Real& operator/=(unsigned long b) {
    mpfr_div_ui(v_, v_, b, MPFR_RNDN);
    return *this;
  }
  Real& operator*=(long b) {
    mpfr_mul_si(v_, v_, b, MPFR_RNDN);
    return *this;
  }

  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
  friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  int compare(long x) const { return mpfr_cmp_si(v_, x); }

  /// Fixed-point decimal with `decimals` digits after the point.
  std::string to_fixed(int decimals) const {
    char* buf = nullptr;
    if (mpfr_asprintf(&buf, "%.*Rf", decimals, v_) < 0) throw std::runtime_error("mpfr_asprintf failed");
    std::string s(buf);
    mpfr_free_str(buf);
    if (s.find_first_not_of("-0.") == std::string::npos && s.front() == '-') s.erase(0, 1);
    return s;
  }

  /// Scientific decimal with `digits` significant digits.
  std::string to_scientific(int digits) const {
    char* buf = nullptr;
    if (mpfr_asprintf(&buf, "%.*Re", std::max(0, digits - 1), v_) < 0)
      throw std::runtime_error("mpfr_asprintf failed");
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
  }

 private:
  mpfr_t v_;
};

inline Real parse_real(std::string_view text, mpfr_prec_t prec) {
  return Real(parse_rational(text), prec);
}

inline Real abs(const Real& x) {
  Real r(x.precision());
  mpfr_abs(r.get(), x.get(), MPFR_RNDN);
  return r;
}

#define PERIODLAB_REAL_FN(name, fn)           \
  inline Real name(const Real& x) {           \
    Real r(x.precision());                    \
    fn(r.get(), x.get(), MPFR_RNDN);          \
    return r;                                 \
  }
PERIODLAB_REAL_FN(sqrt, mpfr_sqrt)
PERIODLAB_REAL_FN(log, mpfr_log)
PERIODLAB_REAL_FN(exp, mpfr_exp)
PERIODLAB_REAL_FN(cos, mpfr_cos)
PERIODLAB_REAL_FN(sin, mpfr_sin)
#undef PERIODLAB_REAL_FN

inline Real atan2(const Real& y, const Real& x) {
  Real r(std::max(x.precision(), y.precision()));
  mpfr_atan2(r.get(), y.get(), x.get(), MPFR_RNDN);
  return r;
}

inline Real pow(const Real& x, const Real& y) {
  Real r(std::max(x.precision(), y.precision()));
  mpfr_pow(r.get(), x.get(), y.get(), MPFR_RNDN);
  return r;
}

inline Real pow(const Real& x, long n) {
  Real r(x.precision());
  mpfr_pow_si(r.get(), x.get(), n, MPFR_RNDN);
  return r;
}

inline Real const_pi(mpfr_prec_t prec) {
  Real r(prec);
  mpfr_const_pi(r.get(), MPFR_RNDN);
  return r;
}

inline Real const_log2(mpfr_prec_t prec) {
  Real r(prec);
  mpfr_const_log2(r.get(), MPFR_RNDN);
  return r;
}

/// Complex number as a pair of Reals of equal precision.
class Complex {
 public:
  explicit Complex(mpfr_prec_t prec = 128) : re_(prec), im_(prec) {}
  Complex(Real re, Real im) : re_(std::move(re)), im_(std::move(im)) {}
  explicit Complex(Real re) : re_(std::move(re)), im_(re_.precision()) {}
  Complex(long x, mpfr_prec_t prec) : re_(x, prec), im_(prec) {}

  const Real& re() const noexcept { return re_; }
  const Real& im() const noexcept { return im_; }
  mpfr_prec_t precision() const noexcept { return std::max(re_.precision(), im_.precision()); }
  bool is_zero() const noexcept { return re_.is_zero() && im_.is_zero(); }
  bool is_real() const noexcept { return im_.is_zero(); }

  Complex operator-() const { return {-re_, -im_}; }
  friend Complex operator+(const Complex& a, const Complex& b) { return {a.re_ + b.re_, a.im_ + b.im_}; }
  friend Complex operator-(const Complex& a, const Complex& b) { return {a.re_ - b.re_, a.im_ - b.im_}; }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
  }
  friend Complex operator/(const Complex& a, const Complex& b) {
    Real den = b.re_ * b.re_ + b.im_ * b.im_;
    return {(a.re_ * b.re_ + a.im_ * b.im_) / den, (a.im_ * b.re_ - a.re_ * b.im_) / den};
  }
  friend Complex operator*(const Complex& a, long b) { return {a.re_ * b, a.im_ * b}; }
  friend Complex operator/(const Complex& a, long b) { return {a.re_ / b, a.im_ / b}; }
  friend Complex operator*(const Complex& a, const Real& b) { return {a.re_ * b, a.im_ * b}; }
  Complex& operator+=(const Complex& b) {
    re_ += b.re_;
    im_ += b.im_;
    return *this;
  }
  Complex& operator-=(const Complex& b) {
    re_ -= b.re_;
    im_ -= b.im_;
    return *this;
  }
  Complex& operator*=(const Complex& b) { return *this = *this * b; }
  Complex& operator/=(unsigned long b) {
    re_ /= b;
    im_ /= b;
    return *this;
  }
  Complex& operator*=(long b) {
    re_ *= b;
    im_ *= b;
    return *this;
  }
  friend bool operator==(const Complex& a, const Complex& b) { return a.re_ == b.re_ && a.im_ == b.im_; }

 private:
  Real re_, im_;
};

inline Real abs(const Complex& z) {
  Real r(z.precision());
  mpfr_hypot(r.get(), z.re().get(), z.im().get(), MPFR_RNDN);
  return r;
}

/// Principal branch.
inline Complex log(const Complex& z) { return {log(abs(z)), atan2(z.im(), z.re())}; }

inline Complex exp(const Complex& z) {
  Real m = exp(z.re());
  return {m * cos(z.im()), m * sin(z.im())};
}

/// Upper bound on an absolute error. All operations round toward +infinity.
class Radius {
 public:
  Radius() { mpfr_init2(v_, 64); mpfr_set_zero(v_, 1); }
  explicit Radius(double x) : Radius() { mpfr_set_d(v_, x, MPFR_RNDU); }
  Radius(const Radius& o) : Radius() { mpfr_set(v_, o.v_, MPFR_RNDU); }
  Radius& operator=(const Radius& o) {
    mpfr_set(v_, o.v_, MPFR_RNDU);
    return *this;
  }
  ~Radius() { mpfr_clear(v_); }

  /// |x| rounded up.
  static Radius abs_of(const Real& x) {
    Radius r;
    mpfr_abs(r.v_, x.get(), MPFR_RNDU);
    return r;
  }
  /// |re| + |im| >= |z|.
  static Radius abs_of(const Complex& z) { return abs_of(z.re()) + abs_of(z.im()); }
  static Radius pow10(long e) {
    Radius r;
    mpfr_set_ui(r.v_, 10, MPFR_RNDU);
    mpfr_pow_si(r.v_, r.v_, e, MPFR_RNDU);
    return r;
  }
  static Radius pow2(long e) {
    Radius r;
    mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDU);
    return r;
  }
  /// Half an ulp-scale rounding bound for a value at precision `prec`.
  template <class S>
  static Radius rounding(const S& x, mpfr_prec_t prec) {
    return abs_of(x) * pow2(1 - static_cast<long>(prec));
  }

  friend Radius operator+(const Radius& a, const Radius& b) {
    Radius r;
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDU);
    return r;
  }
  friend Radius operator*(const Radius& a, const Radius& b) {
    Radius r;
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDU);
    return r;
  }
  friend Radius operator*(const Radius& a, double b) { return a * Radius(b); }
  friend Radius operator/(const Radius& a, const Radius& b) {
    Radius r;
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDU);
    return r;
  }
  Radius& operator+=(const Radius& b) { return *this = *this + b; }
  friend bool operator<(const Radius& a, const Radius& b) { return mpfr_less_p(a.v_, b.v_) != 0; }

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDU); }

  /// Smallest e with radius <= 10^e; a zero radius reports `floor_exp`.
  int exp10(int floor_exp = -100000) const {
    if (is_zero()) return floor_exp;
    mpfr_t l;
    mpfr_init2(l, 64);
    mpfr_log10(l, v_, MPFR_RNDU);
    mpfr_ceil(l, l);
    long e = mpfr_get_si(l, MPFR_RNDU);
    mpfr_clear(l);
    return static_cast<int>(std::max<long>(e, floor_exp));
  }

 private:
  mpfr_t v_;
};

/// Midpoint plus radius: the true value lies within `rad` of `mid`.
template <class S>
struct Arb {
  S mid;
  Radius rad;
  int digits = 0;

  int error_exp() const { return rad.exp10(-(digits + 60)); }
  /// True when the bound certifies an absolute error below 10^-digits.
  bool meets_request() const { return rad < Radius::pow10(-digits); }
};

using ArbReal = Arb<Real>;
using ArbComplex = Arb<Complex>;

template <class S>
mpfr_prec_t precision_of(const Arb<S>& a) {
  return a.mid.precision();
}

template <class S>
Arb<S> operator+(const Arb<S>& a, const Arb<S>& b) {
  Arb<S> r{a.mid + b.mid, a.rad + b.rad, std::min(a.digits, b.digits)};
  r.rad += Radius::rounding(r.mid, r.mid.precision());
  return r;
}

template <class S>
Arb<S> operator-(const Arb<S>& a, const Arb<S>& b) {
  Arb<S> r{a.mid - b.mid, a.rad + b.rad, std::min(a.digits, b.digits)};
  r.rad += Radius::rounding(r.mid, r.mid.precision());
  return r;
}

template <class S>
Arb<S> operator-(const Arb<S>& a) {
  return {-a.mid, a.rad, a.digits};
}

template <class S>
Arb<S> operator*(const Arb<S>& a, const Arb<S>& b) {
  Arb<S> r{a.mid * b.mid,
           Radius::abs_of(a.mid) * b.rad + Radius::abs_of(b.mid) * a.rad + a.rad * b.rad,
           std::min(a.digits, b.digits)};
  r.rad += Radius::rounding(r.mid, r.mid.precision());
  return r;
}

/// Exact rational scale factor.
template <class S>
Arb<S> operator*(const Arb<S>& a, const BigRational& q) {
  Real qr(q, a.mid.precision());
  Arb<S> r{a.mid * qr, a.rad * Radius::abs_of(Real(abs(qr) * 2)), a.digits};
  r.rad += Radius::rounding(r.mid, r.mid.precision());
  return r;
}

inline ArbReal operator/(const ArbReal& a, const ArbReal& b) {
  Radius bl = Radius::abs_of(b.mid);
  if (!(b.rad < bl)) throw std::domain_error("division by a ball containing zero");
  // |a/b - A/B| <= (|a| rb + |b| ra) / (|b| (|b| - rb))
  Real lower = abs(b.mid) - Real::from_double(b.rad.to_double(), b.mid.precision());
  ArbReal r{a.mid / b.mid,
            (Radius::abs_of(a.mid) * b.rad + bl * a.rad) / (bl * Radius::abs_of(lower)) * 1.0000001,
            std::min(a.digits, b.digits)};
  r.rad += Radius::rounding(r.mid, r.mid.precision());
  return r;
}

/// A value computed by a correctly rounded primitive.
inline ArbReal exact_ball(Real x, int digits) {
  Radius rad = Radius::rounding(x, x.precision());
  return {std::move(x), rad, digits};
}

inline ArbComplex to_complex(const ArbReal& a) {
  return {Complex(a.mid), a.rad, a.digits};
}

/// Drops the imaginary part; the bound stays valid for the real part.
inline ArbReal real_part(const ArbComplex& a) {
  return {a.mid.re(), a.rad, a.digits};
}

}  // namespace periodlab
