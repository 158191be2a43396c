#pragma once

// Numerical evaluation: nested polylogarithm series, hyperlogarithm words
// inside their series domain, MZVs and alternating sums at one, and the
// classical constants built on them.

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "periodlab/error.hpp"
#include "periodlab/rational.hpp"
#include "periodlab/real.hpp"
#include "periodlab/word.hpp"

namespace periodlab {

namespace detail {

inline constexpr double kLog10Of2 = 0.30102999566398120;

/// log10|x|; -inf for zero.
inline double log10_abs(const Real& x) {
  if (x.is_zero()) return -INFINITY;
  long e = 0;
  double m = mpfr_get_d_2exp(&e, x.get(), MPFR_RNDN);
  return std::log10(std::fabs(m)) + static_cast<double>(e) * kLog10Of2;
}

inline Real modulus(const Real& x) { return abs(x); }
inline Real modulus(const Complex& z) { return abs(z); }

template <class S>
S scalar(long v, mpfr_prec_t prec);
template <>
inline Real scalar<Real>(long v, mpfr_prec_t prec) { return Real(v, prec); }
template <>
inline Complex scalar<Complex>(long v, mpfr_prec_t prec) { return Complex(v, prec); }

inline bool is_one(const Real& x) { return x.compare(1) == 0; }
inline bool is_one(const Complex& z) { return z.im().is_zero() && z.re().compare(1) == 0; }

inline Real ln(const Real& x) {
  if (x.sign() <= 0) throw DomainError("logarithm of a non-positive real; pass a complex argument");
  return log(x);
}
inline Complex ln(const Complex& z) {
  if (z.is_zero()) throw DomainError("logarithm of zero");
  return log(z);
}

inline Radius unit_roundoff(mpfr_prec_t prec) { return Radius::pow2(1 - static_cast<long>(prec)); }

/// Ball around a value produced by `ops` correctly rounded steps.
template <class S>
Arb<S> rounded_ball(S v, int ops, int digits) {
  Radius r = (Radius::abs_of(v) + Radius(1e-300)) * unit_roundoff(v.precision()) * static_cast<double>(ops + 1);
  return {std::move(v), r, digits};
}

/// Smallest N with sum_{M>N} C(M-1,r-1) rho^M < 10^target, and an upper bound on
/// the full series sum_{M>=r} C(M-1,r-1) rho^M (used to scale rounding errors).
struct TermPlan {
  long terms = 0;
  double log10_total = 0;
};

inline TermPlan plan_nested_terms(double log10_rho, std::size_t r, int target) {
  const double rho = std::pow(10.0, log10_rho);
  auto log10_t = [&](long M) {
    return (std::lgamma(double(M)) - std::lgamma(double(r)) - std::lgamma(double(M - long(r) + 1))) / std::log(10.0) +
           double(M) * log10_rho;
  };
  auto ratio = [&](long M) { return rho * double(M) / double(M - long(r) + 1); };
  double total = 0;
  for (long N = long(r);; ++N) {
    total += std::pow(10.0, log10_t(N));
    double q = ratio(N + 1);
    if (q < 1) {
      double tail = log10_t(N + 1) - std::log10(1 - q);
      if (tail < target) return {N, std::log10(total + std::pow(10.0, tail))};
    }
    if (N > 20'000'000) throw DomainError("nested series converges too slowly near the unit circle");
  }
}

}  // namespace detail

/// sum_{0<m_1<...<m_r} prod x_i^{m_i} / m_i^{k_i}, truncated by a proven tail bound.
/// Requires every suffix product |x_j...x_r| < 1.
template <class S>
Arb<S> nested_li(const std::vector<int>& ks, const std::vector<S>& xs, mpfr_prec_t prec, int target,
                 int digits) {
  const std::size_t r = ks.size();
  if (xs.size() != r) throw std::invalid_argument("exponent and argument lists differ in length");
  if (r == 0) return {detail::scalar<S>(1, prec), Radius(), digits};
  for (int k : ks)
    if (k < 1) throw std::invalid_argument("polylog exponents must be >= 1");

  double log10_rho = -INFINITY;
  S suffix = detail::scalar<S>(1, prec);
  for (std::size_t j = r; j-- > 0;) {
    suffix = suffix * xs[j];
    double l = detail::log10_abs(detail::modulus(suffix));
    if (l == -INFINITY) return {detail::scalar<S>(0, prec), Radius(), digits};
    log10_rho = std::max(log10_rho, l);
  }
  // Small slack absorbs the rounding in the modulus computation.
  log10_rho += 1e-12;
  if (log10_rho >= -4.3e-5)
    throw DomainError("nested sum diverges: suffix product |x_j...x_r| = " +
                      std::to_string(std::pow(10.0, log10_rho)) + " is not below 1");

  detail::TermPlan plan = detail::plan_nested_terms(log10_rho, r, target);
  std::vector<S> acc(r + 1, detail::scalar<S>(0, prec));
  acc[0] = detail::scalar<S>(1, prec);
  std::vector<S> power(r, detail::scalar<S>(1, prec));
  for (long m = 1; m <= plan.terms; ++m) {
    for (std::size_t j = r; j-- > 0;) power[j] = power[j] * xs[j];
    // Descending j so acc[j] still holds the strict sum over m' < m.
    for (std::size_t j = r; j >= 1; --j) {
      if (acc[j - 1].is_zero()) continue;
      S term = acc[j - 1] * power[j - 1];
      for (int e = 0; e < ks[j - 1]; ++e) term /= static_cast<unsigned long>(m);
      acc[j] += term;
    }
  }
  int kmax = *std::max_element(ks.begin(), ks.end());
  Radius rad = Radius::pow10(target);
  Radius scale = Radius(std::pow(10.0, plan.log10_total) * 1.01 + 1e-300);
  rad += scale * detail::unit_roundoff(prec) * (4.0 * double(r) * double(plan.terms + kmax + 6));
  return {acc[r], rad, digits};
}

namespace detail {

// Enumerate compositions of `total` into `parts` non-negative parts.
inline void compositions(int total, std::size_t parts, std::vector<int>& cur,
                         const std::function<void(const std::vector<int>&)>& f) {
  if (cur.size() + 1 == parts) {
    cur.push_back(total);
    f(cur);
    cur.pop_back();
    return;
  }
  for (int e = 0; e <= total; ++e) {
    cur.push_back(e);
    compositions(total - e, parts, cur, f);
    cur.pop_back();
  }
}

}  // namespace detail

/// L_w(z) for a word with numeric letters, inside the series domain
/// |z| < min |sigma| over the non-zero letters. Leading zeros produce powers
/// of ln z; the remaining depth-d part expands into Li values with arguments
/// sigma_2/sigma_1, ..., z/sigma_d.
template <class S>
Arb<S> eval_word_series(const std::vector<S>& letters, const S& z, mpfr_prec_t prec, int target, int digits) {
  std::size_t n0 = 0;
  while (n0 < letters.size() && letters[n0].is_zero()) ++n0;
  std::vector<S> sigmas;
  std::vector<int> blocks;
  for (std::size_t i = n0; i < letters.size(); ++i) {
    if (letters[i].is_zero()) {
      ++blocks.back();
    } else {
      sigmas.push_back(letters[i]);
      blocks.push_back(1);
    }
  }
  const std::size_t d = sigmas.size();
  if (d == 0) {
    if (n0 == 0) return {detail::scalar<S>(1, prec), Radius(), digits};
    Arb<S> lz = detail::rounded_ball(detail::ln(z), 2, digits);
    Arb<S> p = lz;
    for (std::size_t i = 1; i < n0; ++i) p = p * lz;
    return p * BigRational(BigInteger(1), factorial(n0));
  }
  Real zmod = detail::modulus(z);
  for (const S& s : sigmas)
    if (!(zmod < detail::modulus(s)))
      throw DomainError("argument outside the series domain: |z| = " + zmod.to_scientific(6) +
                        " is not below |sigma| = " + detail::modulus(s).to_scientific(6));
  if (z.is_zero()) return {detail::scalar<S>(0, prec), Radius(), digits};

  std::vector<S> xs;
  for (std::size_t i = 0; i + 1 < d; ++i) xs.push_back(sigmas[i + 1] / sigmas[i]);
  xs.push_back(z / sigmas[d - 1]);

  std::vector<Arb<S>> lz_pow;
  lz_pow.push_back({detail::scalar<S>(1, prec), Radius(), digits});
  if (n0 > 0) {
    Arb<S> lz = detail::rounded_ball(detail::ln(z), 2, digits);
    for (std::size_t k = 1; k <= n0; ++k) lz_pow.push_back(lz_pow.back() * lz);
  }

  // Extra guard for the cancellation between ln-power terms.
  const int inner_target = target - 2 - static_cast<int>(n0);
  Arb<S> total{detail::scalar<S>(0, prec), Radius(), digits};
  std::vector<int> cur;
  detail::compositions(static_cast<int>(n0), d + 1, cur, [&](const std::vector<int>& e) {
    const int k0 = e[0];
    std::vector<int> ks(d);
    BigRational coeff(1);
    for (std::size_t i = 0; i < d; ++i) {
      ks[i] = blocks[i] + e[i + 1];
      coeff *= BigRational(binomial(ks[i] - 1, blocks[i] - 1));
    }
    coeff /= BigRational(factorial(k0));
    if ((k0 + n0) % 2) coeff = -coeff;
    Arb<S> li = nested_li(ks, xs, prec, inner_target, digits);
    total = total + (lz_pow[k0] * li) * coeff;
  });
  return d % 2 ? -total : total;
}

/// L_w(1) by splitting the path at 1/2: sum over w = u v of (-1)^|v| L_u(1/2) L_{tau(v)}(1/2),
/// where tau reverses a word and sends each letter sigma to 1 - sigma. The sign
/// comes from running the second half of the path backwards after t -> 1 - t.
template <class S>
Arb<S> eval_word_at_one(const std::vector<S>& letters, mpfr_prec_t prec, int target, int digits) {
  if (letters.empty()) return {detail::scalar<S>(1, prec), Radius(), digits};
  if (letters.front().is_zero()) throw DomainError("word starts with 0: value at 1 needs regularization");
  if (detail::is_one(letters.back())) throw DomainError("word ends with 1: divergent at 1");
  const S one = detail::scalar<S>(1, prec);
  const S half = one / 2L;
  const std::size_t n = letters.size();
  const int inner = target - 2 - static_cast<int>(std::log10(double(n) + 1));
  Arb<S> total{detail::scalar<S>(0, prec), Radius(), digits};
  for (std::size_t k = 0; k <= n; ++k) {
    std::vector<S> u(letters.begin(), letters.begin() + static_cast<long>(k));
    std::vector<S> tv;
    for (std::size_t i = n; i-- > k;) tv.push_back(one - letters[i]);
    Arb<S> part = eval_word_series(u, half, prec, inner, digits) * eval_word_series(tv, half, prec, inner, digits);
    total = (n - k) % 2 ? total - part : total + part;
  }
  return total;
}

namespace detail {

template <class S>
std::vector<S> numeric_letters(const Word& w, mpfr_prec_t prec) {
  std::vector<S> out;
  for (char c : w.letters()) out.push_back(scalar<S>(c == '0' ? 0 : c == '1' ? 1 : -1, prec));
  return out;
}

}  // namespace detail

inline ArbComplex eval_word(const std::vector<Complex>& letters, const Complex& z, const PrecisionPolicy& pol) {
  return eval_word_series(letters, z, pol.bits(), pol.target_exp10(), pol.digits);
}

inline ArbComplex eval_word(const Word& w, const Complex& z, const PrecisionPolicy& pol) {
  return eval_word_series(detail::numeric_letters<Complex>(w, pol.bits()), z, pol.bits(), pol.target_exp10(),
                          pol.digits);
}

/// L_w(1) for a convergent word (first letter non-zero, last letter not 1).
inline ArbReal eval_word_at_one(const Word& w, const PrecisionPolicy& pol) {
  return eval_word_at_one(detail::numeric_letters<Real>(w, pol.bits()), pol.bits(), pol.target_exp10(), pol.digits);
}

/// Li_{k_1..k_r}(z_1..z_r) = sum_{0<m_1<...<m_r} prod z_i^{m_i} / m_i^{k_i}.
inline ArbComplex eval_Li(const std::vector<int>& ks, const std::vector<Complex>& zs, const PrecisionPolicy& pol) {
  if (ks.size() != zs.size()) throw std::invalid_argument("Li: exponent and argument counts differ");
  for (int k : ks)
    if (k < 1) throw DomainError("Li: exponents must be >= 1");
  const mpfr_prec_t prec = pol.bits();
  const std::size_t r = ks.size();
  if (r == 0) return {Complex(1, prec), Radius(), pol.digits};

  std::vector<Complex> suffix(r, Complex(1, prec));
  Complex acc(1, prec);
  Real max_mod(0L, prec), max_arg(0L, prec);
  for (std::size_t j = r; j-- > 0;) {
    acc = acc * zs[j];
    suffix[j] = acc;
    max_mod = std::max(max_mod, abs(acc));
    max_arg = std::max(max_arg, abs(zs[j]));
  }
  const Real one(1, prec);
  if (max_mod < one) {
    try {
      return nested_li(ks, zs, prec, pol.target_exp10(), pol.digits);
    } catch (const DomainError&) {
      // Too close to the unit circle for the direct series; try the path split below.
    }
  }
  if (max_arg <= one && max_mod <= one && ks.back() >= 2) {
    // Li_k(z) = (-1)^r L_w(1) with letters sigma_j = 1/(z_j...z_r).
    std::vector<Complex> letters;
    for (std::size_t j = 0; j < r; ++j) {
      if (suffix[j].is_zero()) return {Complex(0, prec), Radius(), pol.digits};
      letters.push_back(Complex(1, prec) / suffix[j]);
      for (int e = 1; e < ks[j]; ++e) letters.push_back(Complex(0, prec));
    }
    ArbComplex v = eval_word_at_one(letters, prec, pol.target_exp10(), pol.digits);
    return r % 2 ? -v : v;
  }
  throw DomainError("Li: series diverges, max suffix product |z_j...z_r| = " + max_mod.to_scientific(8) +
                    (ks.back() < 2 ? " with outer exponent 1" : "") + " (need < 1, or <= 1 with outer exponent >= 2)");
}

/// phi(s) = sum_{n>=1} (-1)^{n-1} n^{-s} for real s > 0, by the Cohen-Villegas-Zagier
/// acceleration; the error is at most 2/(3+sqrt 8)^n since n^{-s} is a moment sequence.
inline ArbReal phi_real(const Real& s_in, const PrecisionPolicy& pol) {
  const mpfr_prec_t prec = pol.bits();
  Real s(prec);
  s = s_in;
  if (s.sign() <= 0) throw DomainError("phi(s): the alternating series needs s > 0");
  const int P = pol.digits + pol.guard;
  const long n = static_cast<long>(std::ceil((P + 1) / std::log10(3 + std::sqrt(8.0)))) + 1;
  Real d = pow(Real(3, prec) + sqrt(Real(8, prec)), n);
  d = (d + Real(1, prec) / d) / 2L;
  Real b(-1, prec), c = -d, sum(prec);
  const Real neg_s = -s;
  for (long k = 0; k < n; ++k) {
    c = b - c;
    Real a(prec);
    mpfr_ui_pow(a.get(), static_cast<unsigned long>(k + 1), neg_s.get(), MPFR_RNDN);
    sum += c * a;
    // b <- b (k+n)(k-n) / ((k+1/2)(k+1))
    b = b * ((k + n) * (k - n) * 2);
    b = b / ((2 * k + 1) * (k + 1));
  }
  Real value = sum / d;
  Radius rad = Radius::pow10(-P - 1) + detail::unit_roundoff(prec) * (16.0 * double(n));
  return {value, rad, pol.digits};
}

/// Alternating Euler sums. Depth one uses the accelerated alternating series;
/// deeper indexes go through the path split at 1/2.
inline ArbReal eval_alternating(const MZVIndex& p, const PrecisionPolicy& pol) {
  if (!p.is_convergent()) throw DomainError("divergent index " + p.to_string() + "; regularize first");
  if (p.empty()) return {Real(1, pol.bits()), Radius(), pol.digits};
  if (p.depth() == 1 && p.twists()[0] == -1) return phi_real(Real(p.exponents()[0], pol.bits()), pol);
  SignedWord sw = word_of_index(p);
  ArbReal v = eval_word_at_one(sw.word, pol);
  return sw.sign < 0 ? -v : v;
}

/// Convergent MZV (level 1) or Euler sum (level 2).
inline ArbReal eval_mzv(const MZVIndex& p, const PrecisionPolicy& pol) {
  if (!p.is_convergent()) throw DomainError("divergent index " + p.to_string() + "; regularize first");
  if (p.empty()) return {Real(1, pol.bits()), Radius(), pol.digits};
  SignedWord sw = word_of_index(p);
  ArbReal v = eval_word_at_one(sw.word, pol);
  return sw.sign < 0 ? -v : v;
}

inline ArbReal pi(const PrecisionPolicy& pol) { return exact_ball(const_pi(pol.bits()), pol.digits); }
inline ArbReal log2(const PrecisionPolicy& pol) { return exact_ball(const_log2(pol.bits()), pol.digits); }

/// zeta(2) = phi(1)^2 - 2 phi(1,1) = (ln 2)^2 + 2 sum_{n>=1} 1/(n^2 2^n), since
/// 2 phi(1,1) = (ln 2)^2 - 2 Li_2(1/2). The tail after N is below 2/((N+1)^2 2^N).
inline ArbReal zeta2_fast(const PrecisionPolicy& pol, long* terms_used = nullptr) {
  const mpfr_prec_t prec = pol.bits();
  const int target = pol.target_exp10();
  long N = 1;
  while (detail::kLog10Of2 - 2 * std::log10(double(N + 1)) - double(N) * detail::kLog10Of2 >= target) ++N;
  if (terms_used) *terms_used = N;
  Real sum(prec), p(1, prec);
  for (long n = 1; n <= N; ++n) {
    mpfr_div_2ui(p.get(), p.get(), 1, MPFR_RNDN);
    Real t = p;
    t /= static_cast<unsigned long>(n);
    t /= static_cast<unsigned long>(n);
    sum += t;
  }
  ArbReal l2 = log2(pol);
  ArbReal head = l2 * l2;
  sum *= 2L;
  ArbReal tail{sum, Radius::pow10(target) + detail::unit_roundoff(prec) * (4.0 * double(N)), pol.digits};
  return head + tail;
}

/// zeta(2n) / pi^(2n) exactly. From z cot z = sum_j c_j z^(2j) (quotient of the
/// cosine series by the sine series) and z cot z = 1 - 2 sum zeta(2n) (z/pi)^(2n).
inline BigRational zeta_even_exact(int two_n) {
  if (two_n < 2 || two_n % 2) throw DomainError("zeta_even_exact needs a positive even argument");
  const int n = two_n / 2;
  auto num = [](int k) { return BigRational(BigInteger(k % 2 ? -1 : 1), factorial(2 * k)); };
  auto den = [](int k) { return BigRational(BigInteger(k % 2 ? -1 : 1), factorial(2 * k + 1)); };
  std::vector<BigRational> c(n + 1);
  for (int j = 0; j <= n; ++j) {
    BigRational acc = num(j);
    for (int i = 1; i <= j; ++i) acc -= den(i) * c[j - i];
    c[j] = acc;
  }
  BigRational r = -c[n] / 2;
  r.canonicalize();
  return r;
}

/// Bernoulli numbers B_0..B_m (B_1 = -1/2).
inline std::vector<BigRational> bernoulli_numbers(int m) {
  std::vector<BigRational> B(m + 1);
  B[0] = 1;
  for (int k = 1; k <= m; ++k) {
    BigRational acc = 0;
    for (int j = 0; j < k; ++j) acc += BigRational(binomial(k + 1, j)) * B[j];
    B[k] = -acc / (k + 1);
    B[k].canonicalize();
  }
  return B;
}

/// Gamma(x) for real x > 0 from the Stirling series at a shifted argument
/// y = x + m, with the enveloping remainder bound |R_K| <= first omitted term.
inline ArbReal gamma(const Real& x_in, const PrecisionPolicy& pol) {
  const mpfr_prec_t prec = pol.bits();
  Real x(prec);
  x = x_in;
  if (x.sign() <= 0) throw DomainError("gamma: argument must be positive");
  const int P = pol.digits + pol.guard + 1;
  const double y0 = std::ceil(0.37 * (P + 2)) + 1;
  const long m = std::max(0L, static_cast<long>(std::ceil(y0 - x.to_double())));
  Real y = x + Real(m, prec);

  const Real lny = log(y);
  Real lg = (y - Real(1, prec) / 2L) * lny - y + log(const_pi(prec) * 2L) / 2L;
  const Radius bound = Radius::pow10(-P);
  std::vector<BigRational> B = bernoulli_numbers(2);
  Radius remainder;
  Real ypow = y;  // y^(2j-1)
  const Real y2 = y * y;
  for (int j = 1;; ++j) {
    if (static_cast<int>(B.size()) < 2 * j + 3) B = bernoulli_numbers(4 * j + 4);
    BigRational cj = B[2 * j] / BigRational(2 * j * (2 * j - 1));
    lg += Real(cj, prec) / ypow;
    ypow = ypow * y2;
    BigRational next = B[2 * j + 2] / BigRational((2 * j + 2) * (2 * j + 1));
    Real rem = abs(Real(next, prec)) / ypow;
    remainder = Radius::abs_of(rem) * 1.01;
    if (remainder < bound) break;
    if (j > 4 * P + 50) throw DomainError("gamma: Stirling series failed to reach the target");
  }
  Real g = exp(lg);
  for (long i = 0; i < m; ++i) g = g / (x + Real(i, prec));
  // ln-error e maps to relative error <= 1.01 e for tiny e.
  Radius rel = remainder * 1.01 + (Radius::abs_of(lg) + Radius(1.0)) * detail::unit_roundoff(prec) * 400.0 +
               detail::unit_roundoff(prec) * (4.0 * double(m + 4));
  return {g, Radius::abs_of(g) * rel, pol.digits};
}

/// phi(1-s)/phi(s) + Gamma(s)(2^s - 1)cos(pi s/2) / ((2^(s-1) - 1) pi^s), for 0 < s < 1.
inline ArbReal eta_funceq_residual(const Real& s_in, const PrecisionPolicy& pol) {
  const mpfr_prec_t prec = pol.bits();
  Real s(prec);
  s = s_in;
  if (s.sign() <= 0 || s.compare(1) >= 0) throw DomainError("functional-equation check needs 0 < s < 1");
  const Real one(1, prec);
  ArbReal ratio = phi_real(one - s, pol) / phi_real(s, pol);
  const Real p = const_pi(prec);
  ArbReal two_s = detail::rounded_ball(pow(Real(2, prec), s), 2, pol.digits);
  ArbReal two_s1 = detail::rounded_ball(pow(Real(2, prec), s - one), 3, pol.digits);
  ArbReal cosv = detail::rounded_ball(cos(p * s / 2L), 6, pol.digits);
  ArbReal pis = detail::rounded_ball(pow(p, s), 6, pol.digits);
  ArbReal unit{one, Radius(), pol.digits};
  ArbReal rhs = gamma(s, pol) * (two_s - unit) * cosv / ((two_s1 - unit) * pis);
  return ratio + rhs;
}

/// Thread-safe memo of MZV / Euler-sum values at one fixed precision.
class MzvEvaluator {
 public:
  explicit MzvEvaluator(PrecisionPolicy pol) : pol_(pol) {}
  const PrecisionPolicy& policy() const noexcept { return pol_; }

  ArbReal operator()(const MZVIndex& p) {
    MZVIndex key = p.with_level(2);
    {
      std::lock_guard<std::mutex> lock(mu_);
      if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    }
    ArbReal v = p.level() == 2 ? eval_alternating(p, pol_) : eval_mzv(p, pol_);
    std::lock_guard<std::mutex> lock(mu_);
    return memo_.emplace(key, v).first->second;
  }

 private:
  PrecisionPolicy pol_;
  std::mutex mu_;
  std::map<MZVIndex, ArbReal> memo_;
};

}  // namespace periodlab
