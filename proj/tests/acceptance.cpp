// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "periodlab.hpp"
#include "periodlab/cli.hpp"

using namespace periodlab;

namespace {

const PrecisionPolicy kPol{30};
const mpfr_prec_t kBits = kPol.bits();

struct Verdict {
  bool pass;
  std::string detail;
};

Real mpfr_zeta(unsigned long s) {
  Real r(kBits);
  mpfr_zeta_ui(r.get(), s, MPFR_RNDN);
  return r;
}

double absd(const Real& x) { return mpfr_get_d(abs(x).get(), MPFR_RNDU); }
std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}
double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Verdict euler_fast_series() {
  auto t0 = std::chrono::steady_clock::now();
  Real ref = const_pi(kBits) * const_pi(kBits) / 6L;
  MzvEvaluator mzv(kPol);
  Real via_eval = real_part(evaluate(parse_expr("zeta(2)"), mzv)).mid;
  long terms = 0;
  ArbReal fast = zeta2_fast(kPol, &terms);
  double secs = seconds_since(t0);
  double e1 = absd(via_eval - ref), e2 = absd(fast.mid - ref);
  std::string lead = fast.mid.to_fixed(6);
  bool ok = e1 < 1e-30 && e2 < 1e-30 && lead == "1.644934" && secs < 1.0;
  return {ok, "eval err " + sci(e1) + ", fast err " + sci(e2) + " (" + std::to_string(terms) + " terms), " + lead +
                  ", " + sci(secs) + " s"};
}

Verdict exact_even_zetas() {
  auto t0 = std::chrono::steady_clock::now();
  BigRational a = zeta_even_exact(2), b = zeta_even_exact(4), c = zeta_even_exact(6);
  double secs = seconds_since(t0);
  bool ok = a == BigRational(1, 6) && b == BigRational(1, 90) && c == BigRational(1, 945) && secs < 1.0;
  return {ok, to_short_string(a) + ", " + to_short_string(b) + ", " + to_short_string(c) + " (times pi^2n)"};
}

Verdict euler_relation() {
  ReductionTables tables(1);
  IndexComb r = reduce(IndexComb(MZVIndex::zeta({1, 2})), tables);
  double d = absd(eval_mzv(MZVIndex::zeta({1, 2}), kPol).mid - eval_mzv(MZVIndex::zeta({3}), kPol).mid);
  return {r == IndexComb(MZVIndex::zeta({3})) && d < 1e-25, "reduce -> " + r.to_string() + ", |diff| " + sci(d)};
}

Verdict weight_four_collapse() {
  ReductionTables tables(1);
  const ReductionTable& t = tables.get(4);
  const MZVIndex z13 = MZVIndex::zeta({1, 3});
  IndexComb e13 = t.expansion(z13);
  bool ok = t.basis.size() == 1 && e13.size() == 1;
  std::string multiples;
  for (const auto& idx : convergent_indexes(4, 1)) {
    BigRational ratio = t.expansion(idx).coefficient(t.basis[0]) / e13.coefficient(t.basis[0]);
    ok &= ratio.get_den() == 1;
    multiples += (multiples.empty() ? "" : ", ") + idx.to_string() + " = " + to_short_string(ratio) + "*zeta(1,3)";
  }
  SymbolPoly z2 = SymbolPoly::zeta(MZVIndex::zeta({2}));
  bool product = normalize(SymbolPoly::zeta(MZVIndex::zeta({4})) - z2 * z2 * BigRational(2, 5), tables).is_zero();
  return {ok && product, "basis size " + std::to_string(t.basis.size()) + "; " + multiples +
                             "; zeta(4) = 2/5 zeta(2)^2 " + (product ? "holds" : "fails")};
}

Verdict dimensions() {
  auto t0 = std::chrono::steady_clock::now();
  std::vector<std::size_t> b = dims_upper_bound(10, 1);  // fresh build, no cache
  double secs = seconds_since(t0);
  const std::vector<std::size_t> expected{1, 1, 1, 2, 2, 3, 4, 5, 7};
  bool ok = secs < 300;
  std::string got;
  for (std::size_t n = 2; n <= 10; ++n) {
    ok &= b[n] == expected[n - 2];
    got += (n > 2 ? "," : "") + std::to_string(b[n]);
  }
  std::vector<BigInteger> d = motivic_dims(16);
  for (std::size_t n = 0; n <= 16; ++n) ok &= BigInteger(static_cast<unsigned long>(hoffman_count(n))) == d[n];
  return {ok, "d_2..d_10 = " + got + ", Hoffman counts match to 16, build " + sci(secs) + " s"};
}

Verdict relation_audit() {
  MzvEvaluator mzv(kPol);
  std::size_t count = 0;
  double worst = 0;
  std::string bad;
  for (std::size_t w = 4; w <= 8; ++w) {
    for (const auto& rel : generate_relations(w, 1).relations) {
      ArbReal v{Real(kBits), Radius(), kPol.digits};
      for (const auto& [p, c] : rel) v = v + mzv(p) * c;
      double e = absd(v.mid);
      if (e > worst) worst = e;
      if (e >= 1e-25 && bad.empty()) bad = rel.to_string();
      ++count;
    }
  }
  return {bad.empty(), std::to_string(count) + " relations, max |value| " + sci(worst) + (bad.empty() ? "" : ", first failure " + bad)};
}

Verdict associator_and_monodromy() {
  const std::size_t W = 3;
  ReductionTables tables(1);
  NCSeries Z = associator(W, tables);
  SymbolPoly z2 = SymbolPoly::zeta(MZVIndex::zeta({2})), z3 = SymbolPoly::zeta(MZVIndex::zeta({3}));
  bool ok = Z.coefficient(Word("01")) == z2 && Z.coefficient(Word("10")) == -z2;

  // zeta(3) [[e0,e1], e0+e1], built from letters.
  NCSeries e0 = NCSeries::letter('0', W), e1 = NCSeries::letter('1', W);
  NCSeries c = e0 * e1 - e1 * e0, s = e0 + e1;
  NCSeries expected = (c * s - s * c) * z3;
  bool w3 = Z.homogeneous_part(3) == expected;

  // Hand expansion through weight 2: Z exp(T e1) Z^{-1} = 1 + T e1 + T^2/2 e1e1 + O(3), so
  // (M1 - id) L adds T L[0] to [10], T L[1] + T^2/2 to [11] and T to [1].
  NCSeries L = NCSeries::one(2);
  for (const char* w : {"0", "1", "00", "01", "10", "11"})
    L.add(Word(w), SymbolPoly::named(std::string("L[") + w + "]", std::string(w).size()));
  NCSeries M1 = monodromy_M1(2, tables);
  NCSeries delta = apply_monodromy(M1, L) - L;
  const SymbolPoly T = SymbolPoly::T();
  NCSeries hand(2);
  hand.add(Word("1"), T);
  hand.add(Word("10"), T * SymbolPoly::named("L[0]", 1));
  hand.add(Word("11"), T * SymbolPoly::named("L[1]", 1) + T * T * BigRational(1, 2));
  bool mono = delta == hand;
  // Li2 = -L[10], so the [10] shift is disc Li2 = -T ln z = -2 pi i ln z.
  return {ok && w3 && mono, std::string("[01] ") + Z.coefficient(Word("01")).to_string() + ", [10] " +
                                Z.coefficient(Word("10")).to_string() + ", weight 3 " + (w3 ? "matches" : "differs") +
                                ", (M1-id)L = " + delta.to_string()};
}

Verdict zigzag() {
  const std::vector<std::pair<int, BigRational>> expected{{3, BigRational(6)}, {4, BigRational(20)}, {5, BigRational(441, 8)}};
  bool ok = true;
  std::string detail;
  for (const auto& [l, c] : expected) {
    PeriodValue v = zigzag_period(l, kPol);
    MZVIndex z = MZVIndex::zeta({2 * l - 3});
    SymbolPoly want = SymbolPoly::zeta(z) * c;
    double e1 = absd(v.numeric.mid - eval_mzv(z, kPol).mid * Real(c, kBits));
    double e2 = absd(v.numeric.mid - mpfr_zeta(static_cast<unsigned long>(2 * l - 3)) * Real(c, kBits));
    ok &= v.exact == want && e1 < 1e-30 && e2 < 1e-30;
    detail += (detail.empty() ? "" : "; ") + v.exact.to_string() + " = " + v.numeric.mid.to_fixed(12);
  }
  return {ok, detail};
}

Verdict p35_paths() {
  ReductionTables tables(1);
  P35Result r = p35(kPol, tables);
  double d = absd(r.direct.mid - r.reduced.mid);
  return {d < 1e-25, "direct " + r.direct.mid.to_fixed(20) + ", via basis [" + r.basis_form.to_string() + "], |diff| " + sci(d)};
}

Verdict anomalous_moment_check() {
  auto t0 = std::chrono::steady_clock::now();
  AnomalousMoment ae = anomalous_moment(BigRational(137035999, 1000000), 3, kPol);
  AeCheck c = check_against_measurement(ae);
  double secs = seconds_since(t0);
  // The criterion passes outright within tolerance; otherwise it requires that
  // the residual is reported through the public interface.
  std::ostringstream out, err;
  int code = cli::run({"ae", "--alpha-inverse", "137.035999"}, out, err);
  auto j = nlohmann::json::parse(out.str());
  bool reported = code == 0 && j.contains("residual") && j.contains("within_tolerance") &&
                  j["within_tolerance"].get<bool>() == c.within_tolerance;
  std::string detail = "a_e = " + ae.value.mid.to_scientific(15) + ", residual " + c.residual.mid.to_scientific(6) +
                       (c.within_tolerance ? " (within 2e-10)" : " (outside 2e-10; residual reported)") +
                       ", monotone refining " + (c.monotone_refining ? "yes" : "no") + ", " + sci(secs) + " s";
  return {(c.within_tolerance || reported) && secs < 10, detail};
}

Verdict functional_equation() {
  double worst = 0;
  bool ok = true;
  for (int k : {1, 3, 5, 7, 9}) {
    ArbReal r = eta_funceq_residual(Real(make_rational(k, 10), kBits), kPol);
    double e = absd(r.mid) + r.rad.to_double();
    worst = std::max(worst, e);
    ok &= e < 1e-25;
  }
  return {ok, "max residual bound " + sci(worst) + " over s = 0.1, 0.3, 0.5, 0.7, 0.9"};
}

Verdict truncated_sum_validation() {
  oracle::TruncatedSumMzv ref;
  int count = 0;
  double worst = 0;
  bool ok = true;
  for (std::size_t w = 2; w <= 5; ++w) {
    for (const auto& idx : convergent_indexes(w, 1)) {
      double e = absd(eval_mzv(idx, kPol).mid - ref.zeta(idx.exponents()));
      worst = std::max(worst, e);
      ok &= e < 1e-25;
      ++count;
    }
  }
  return {ok, std::to_string(count) + " admissible indexes, max |diff| " + sci(worst)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
      {"Euler fast series for zeta(2)", euler_fast_series},
      {"exact even zeta values", exact_even_zetas},
      {"zeta(1,2) = zeta(3)", euler_relation},
      {"weight-4 collapse", weight_four_collapse},
      {"dimensions through weight 10", dimensions},
      {"double shuffle numeric audit, weights 4-8", relation_audit},
      {"associator and monodromy", associator_and_monodromy},
      {"zig-zag periods", zigzag},
      {"P35 evaluation paths", p35_paths},
      {"a_e through three loops", anomalous_moment_check},
      {"eta functional equation", functional_equation},
      {"MZVs against truncated sums", truncated_sum_validation},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failures += !v.pass;
    std::printf("%s  criterion %2zu  %s: %s [%.2f s]\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                v.detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures ? 1 : 0;
}
