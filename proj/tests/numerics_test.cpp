#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "periodlab/numerics.hpp"

namespace periodlab {
namespace {

const PrecisionPolicy kPol{30, 15};
const mpfr_prec_t kBits = kPol.bits();

Real ten_pow(int e) { return pow(Real(10, kBits), static_cast<long>(e)); }

::testing::AssertionResult close(const Real& a, const Real& b, int digits) {
  Real d = abs(a - b);
  if (d < ten_pow(-digits)) return ::testing::AssertionSuccess();
  return ::testing::AssertionFailure() << a.to_scientific(35) << " vs " << b.to_scientific(35) << " differ by "
                                       << d.to_scientific(3);
}

::testing::AssertionResult close(const Complex& a, const Complex& b, int digits) {
  auto re = close(a.re(), b.re(), digits);
  if (!re) return re;
  return close(a.im(), b.im(), digits);
}

Real rat(long p, long q) { return Real(make_rational(p, q), kBits); }
Complex cplx(long p, long q) { return Complex(rat(p, q)); }

TEST(Arb, BallArithmeticCoversTruth) {
  ArbReal third{rat(1, 3), Radius(1e-40), 30};
  ArbReal three = exact_ball(Real(3, kBits), 30);
  ArbReal one = third * three;
  EXPECT_LE(abs(one.mid - Real(1, kBits)).to_double(), one.rad.to_double());
  EXPECT_LT(one.error_exp(), -38);
  ArbReal q = one / three;
  EXPECT_TRUE(close(q.mid, rat(1, 3), 38));
  ArbReal near_zero{Real(kBits), Radius(1e-10), 30};
  EXPECT_THROW(one / near_zero, std::domain_error);
}

TEST(Li, SingleLogarithm) {
  ArbComplex v = eval_Li({1}, {cplx(1, 3)}, kPol);
  EXPECT_TRUE(close(v.mid.re(), -log(rat(2, 3)), 30));
  EXPECT_TRUE(v.meets_request());
}

TEST(Li, DilogAtMinusOneIsMinusPhiTwo) {
  ArbComplex v = eval_Li({2}, {Complex(-1, kBits)}, kPol);
  Real p = const_pi(kBits);
  EXPECT_TRUE(close(v.mid.re(), -(p * p) / 12L, 30));
  EXPECT_TRUE(v.mid.im().is_zero());
}

TEST(Li, DepthTwoAgainstDoubleSum) {
  // Terms are below 7^-m2, so m2 <= 80 leaves a tail far under 10^-60.
  Real expected = oracle::double_polylog(1, 3, rat(1, 5), rat(1, 7), 80);
  ArbComplex v = eval_Li({1, 3}, {cplx(1, 5), cplx(1, 7)}, kPol);
  EXPECT_TRUE(close(v.mid.re(), expected, 30));
  EXPECT_TRUE(v.meets_request());
}

TEST(Li, UnitArgumentsGoThroughThePathSplit) {
  // Li_{1,2}(1,1) = zeta(1,2) = zeta(3) in the sum convention m1 < m2.
  ArbComplex v = eval_Li({1, 2}, {Complex(1, kBits), Complex(1, kBits)}, kPol);
  ArbComplex z3 = eval_Li({3}, {Complex(1, kBits)}, kPol);
  EXPECT_TRUE(close(v.mid, z3.mid, 30));
}

TEST(Li, DivergentDomainReportsTheBound) {
  EXPECT_THROW(eval_Li({2}, {cplx(3, 2)}, kPol), DomainError);
  EXPECT_THROW(eval_Li({1}, {Complex(1, kBits)}, kPol), DomainError);
  try {
    eval_Li({1, 2}, {cplx(2, 1), cplx(2, 3)}, kPol);
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("suffix product"), std::string::npos);
  }
}

TEST(Word, PureLogarithms) {
  Complex z = cplx(3, 10);
  EXPECT_TRUE(close(eval_word(Word("0"), z, kPol).mid, log(z), 30));
  Complex l = log(z);
  EXPECT_TRUE(close(eval_word(Word("000"), z, kPol).mid, l * l * l / 6L, 30));
  Complex w(rat(-1, 2), rat(1, 5));
  Complex lw = log(w);
  EXPECT_TRUE(close(eval_word(Word("00"), w, kPol).mid, lw * lw / 2L, 30));
}

TEST(Word, OneZeroAtHalfIsMinusDilog) {
  Real l2 = const_log2(kBits), p = const_pi(kBits);
  Real li2_half = p * p / 12L - l2 * l2 / 2L;
  EXPECT_TRUE(close(eval_word(Word("10"), cplx(1, 2), kPol).mid.re(), -li2_half, 30));
}

TEST(Word, OutsideSeriesDomainRejected) {
  EXPECT_THROW(eval_word(Word("1"), cplx(3, 2), kPol), DomainError);
  EXPECT_THROW(eval_word(Word("m0", 2), Complex(-1, kBits), kPol), DomainError);
  EXPECT_THROW(eval_word(Word("0"), Complex(kBits), kPol), DomainError);
}

std::vector<Word> all_words(std::size_t max_len, int level) {
  std::vector<Word> out{Word("", level)};
  std::vector<std::string> layer{""};
  for (std::size_t n = 1; n <= max_len; ++n) {
    std::vector<std::string> next;
    for (const auto& s : layer)
      for (char c : alphabet_letters(level)) next.push_back(s + c);
    for (const auto& s : next) out.emplace_back(s, level);
    layer = std::move(next);
  }
  return out;
}

std::vector<Complex> letters_of(const Word& w) {
  std::vector<Complex> out;
  for (char c : w.letters()) out.emplace_back(c == '0' ? 0 : c == '1' ? 1 : -1, kBits);
  return out;
}

// Pins the ln-power and binomial bookkeeping of the word-to-Li conversion
// against direct integration of dL_{w sigma} = L_w dz/(z - sigma).
TEST(Word, ConversionMatchesDirectIntegration) {
  const mpfr_prec_t ob = 256;
  std::vector<Complex> points{cplx(1, 5), Complex(rat(2, 5), rat(1, 10)), Complex(rat(-1, 4), rat(-1, 3))};
  for (const Word& w : all_words(3, 2)) {
    for (const auto& z : points) {
      Complex expected = oracle::hyperlog(letters_of(w), z, 200, ob);
      EXPECT_TRUE(close(eval_word(w, z, kPol).mid, expected, 30)) << w.to_string();
    }
  }
  for (const char* s : {"0010", "0m01", "1m00", "00m1", "0101"}) {
    Word w(s, 2);
    Complex z(rat(2, 5), rat(1, 10));
    EXPECT_TRUE(close(eval_word(w, z, kPol).mid, oracle::hyperlog(letters_of(w), z, 200, ob), 30)) << s;
  }
}

TEST(Word, ShuffleProductHoldsNumerically) {
  std::mt19937 rng(17);
  const std::vector<Word> pool = all_words(3, 2);
  std::uniform_int_distribution<std::size_t> pick(1, pool.size() - 1);
  const Complex points[] = {cplx(1, 5), Complex(rat(2, 5), rat(1, 10))};
  for (int trial = 0; trial < 40; ++trial) {
    Word u = pool[pick(rng)], v = pool[pick(rng)];
    if (u.weight() + v.weight() > 5) continue;
    for (const Complex& z : points) {
      Complex lhs(kBits);
      for (const auto& [w, c] : shuffle(u, v)) lhs += eval_word(w, z, kPol).mid * Real(c, kBits);
      Complex rhs = eval_word(u, z, kPol).mid * eval_word(v, z, kPol).mid;
      EXPECT_TRUE(close(lhs, rhs, kPol.digits - 5)) << u.to_string() << " sh " << v.to_string();
    }
  }
}

TEST(Mzv, ClassicalValues) {
  ArbReal z2 = eval_mzv(MZVIndex::zeta({2}), kPol);
  EXPECT_EQ(z2.mid.to_fixed(6), "1.644934");
  Real p = const_pi(kBits);
  EXPECT_TRUE(close(z2.mid, p * p / 6L, 30));
  EXPECT_TRUE(close(eval_mzv(MZVIndex::zeta({4}), kPol).mid, pow(p, 4L) / 90L, 30));
  EXPECT_TRUE(z2.meets_request());
  EXPECT_THROW(eval_mzv(MZVIndex::zeta({2, 1}), kPol), DomainError);
  EXPECT_EQ(eval_mzv(MZVIndex(), kPol).mid.compare(1), 0);
}

TEST(Mzv, AgreesWithTruncatedSumsThroughWeightFive) {
  oracle::TruncatedSumMzv ref;
  int checked = 0;
  for (std::size_t w = 2; w <= 5; ++w) {
    for (const auto& idx : convergent_indexes(w, 1)) {
      Real expected = ref.zeta(idx.exponents());
      EXPECT_TRUE(close(eval_mzv(idx, kPol).mid, expected, 25)) << idx.to_string();
      ++checked;
    }
  }
  EXPECT_EQ(checked, 15);
}

TEST(Mzv, ZetaThreeFive) {
  oracle::TruncatedSumMzv ref;
  EXPECT_TRUE(close(eval_mzv(MZVIndex::zeta({3, 5}), kPol).mid, ref.zeta({3, 5}), 30));
}

TEST(Mzv, StuffleHoldsNumerically) {
  std::vector<MZVIndex> pool;
  for (std::size_t w = 2; w <= 4; ++w)
    for (const auto& idx : convergent_indexes(w, 1)) pool.push_back(idx);
  for (std::size_t i = 0; i < pool.size(); i += 2) {
    for (std::size_t j = i; j < pool.size(); j += 3) {
      if (pool[i].weight() + pool[j].weight() > 7) continue;
      Real lhs(kBits);
      for (const auto& [x, c] : stuffle(pool[i], pool[j])) lhs += eval_mzv(x, kPol).mid * Real(c, kBits);
      Real rhs = eval_mzv(pool[i], kPol).mid * eval_mzv(pool[j], kPol).mid;
      EXPECT_TRUE(close(lhs, rhs, kPol.digits - 5)) << pool[i].to_string() << " * " << pool[j].to_string();
    }
  }
}

TEST(Alternating, DepthOne) {
  EXPECT_TRUE(close(eval_alternating(MZVIndex::phi({1}), kPol).mid, const_log2(kBits), 30));
  Real p = const_pi(kBits);
  EXPECT_TRUE(close(eval_alternating(MZVIndex::phi({2}), kPol).mid, p * p / 12L, 30));
  // The path split reaches the same depth-one values.
  for (int n = 1; n <= 4; ++n) {
    SignedWord sw = word_of_index(MZVIndex::phi({n}));
    ArbReal via_split = eval_word_at_one(sw.word, kPol);
    if (sw.sign < 0) via_split = -via_split;
    EXPECT_TRUE(close(via_split.mid, eval_alternating(MZVIndex::phi({n}), kPol).mid, 30)) << n;
  }
}

TEST(Alternating, PhiOneThree) {
  // Frozen at 40 digits by tests/oracles/phi13.py (digamma form of the inner tail).
  const Real frozen = parse_real("-0.1178759996505093268410139508341376187152", kBits);
  ArbReal v = eval_alternating(MZVIndex::phi({1, 3}), kPol);
  EXPECT_TRUE(close(v.mid, frozen, 30));
  EXPECT_TRUE(v.meets_request());
}

TEST(Alternating, NaiveTruncationCrossCheck) {
  // Averaging consecutive partial sums of an alternating outer sum leaves O(1/N^2).
  const long N = 4000;
  const mpfr_prec_t b = 128;
  Real inner(b), s_prev(b), s(b);
  for (long m = 1; m <= N + 1; ++m) {
    Real sign(m % 2 ? 1 : -1, b);
    s_prev = s;
    s += inner * sign / pow(Real(m, b), 3L);
    inner += sign / Real(m, b);
  }
  Real avg = (s + s_prev) / 2L;
  EXPECT_TRUE(close(avg, eval_alternating(MZVIndex::phi({1, 3}), kPol).mid, 6));
}

TEST(Alternating, StuffleWithTwists) {
  const std::vector<MZVIndex> pool{MZVIndex::phi({1}), MZVIndex::phi({2}), MZVIndex({1, 2}, {-1, 1}, 2),
                                   MZVIndex({2}, {1}, 2), MZVIndex({1, 1}, {1, -1}, 2)};
  for (const auto& p : pool) {
    for (const auto& q : pool) {
      Real lhs(kBits);
      for (const auto& [x, c] : stuffle(p, q)) lhs += eval_alternating(x, kPol).mid * Real(c, kBits);
      Real rhs = eval_alternating(p, kPol).mid * eval_alternating(q, kPol).mid;
      EXPECT_TRUE(close(lhs, rhs, kPol.digits - 5)) << p.to_string() << " * " << q.to_string();
    }
  }
}

TEST(ZetaTwo, FastSeries) {
  ArbReal v = zeta2_fast(PrecisionPolicy{6, 15});
  EXPECT_EQ(v.mid.to_fixed(6), "1.644934");
  Real p = const_pi(kBits);
  ArbReal v30 = zeta2_fast(kPol);
  EXPECT_TRUE(close(v30.mid, p * p / 6L, 30));
  EXPECT_TRUE(v30.meets_request());
  long terms = 0;
  zeta2_fast(PrecisionPolicy{0, 15}, &terms);
  EXPECT_LE(terms, 50);
}

TEST(ZetaEven, ExactCoefficients) {
  EXPECT_EQ(zeta_even_exact(2), BigRational(1, 6));
  EXPECT_EQ(zeta_even_exact(4), BigRational(1, 90));
  EXPECT_EQ(zeta_even_exact(6), BigRational(1, 945));
  EXPECT_EQ(zeta_even_exact(8), BigRational(1, 9450));
  EXPECT_THROW(zeta_even_exact(3), DomainError);
  Real p = const_pi(kBits);
  for (int n = 1; n <= 4; ++n)
    EXPECT_TRUE(close(Real(zeta_even_exact(2 * n), kBits) * pow(p, 2L * n),
                      eval_mzv(MZVIndex::zeta({2 * n}), kPol).mid, 30));
}

TEST(Gamma, ClosedFormsAndRecurrence) {
  EXPECT_TRUE(close(gamma(Real(1, kBits), kPol).mid, Real(1, kBits), 30));
  EXPECT_TRUE(close(gamma(rat(1, 2), kPol).mid, sqrt(const_pi(kBits)), 30));
  Real x = rat(3, 10);
  ArbReal g = gamma(x, kPol);
  ArbReal g1 = gamma(x + Real(1, kBits), kPol);
  EXPECT_TRUE(close(g1.mid, x * g.mid, 30));
  Real ref(kBits);
  mpfr_gamma(ref.get(), x.get(), MPFR_RNDN);
  EXPECT_TRUE(close(g.mid, ref, 30));
  EXPECT_TRUE(g.meets_request());
  EXPECT_THROW(gamma(Real(kBits), kPol), DomainError);
}

TEST(FunctionalEquation, ResidualVanishesOnGrid) {
  for (int k = 1; k <= 9; ++k) {
    ArbReal r = eta_funceq_residual(rat(k, 10), kPol);
    EXPECT_TRUE(close(r.mid, Real(kBits), 25)) << "s = 0." << k;
    EXPECT_LT(r.error_exp(), -25);
  }
  EXPECT_THROW(eta_funceq_residual(Real(1, kBits), kPol), DomainError);
  EXPECT_THROW(eta_funceq_residual(rat(-1, 2), kPol), DomainError);
}

TEST(Evaluator, MemoizesAcrossLevels) {
  MzvEvaluator ev(kPol);
  ArbReal a = ev(MZVIndex::zeta({3}));
  ArbReal b = ev(MZVIndex::zeta({3}, 2));
  EXPECT_EQ(a.mid, b.mid);
}

}  // namespace
}  // namespace periodlab
