#pragma once

// Concrete period values: the zig-zag family, the weight-8 combination P_{3,5},
// and the perturbative series of the electron anomalous magnetic moment.

#include <optional>
#include <string>
#include <vector>

#include "periodlab/error.hpp"
#include "periodlab/numerics.hpp"
#include "periodlab/relations.hpp"
#include "periodlab/symbol_algebra.hpp"

namespace periodlab {

struct PeriodValue {
  SymbolPoly exact;
  ArbReal numeric;
  std::optional<int> loops;
};

/// Rational prefactor of zeta(2l-3) for the l-loop zig-zag graph.
inline BigRational zigzag_coefficient(int loops) {
  if (loops < 3) throw DomainError("zig-zag periods start at 3 loops, got " + std::to_string(loops));
  const long l = loops;
  BigRational c(binomial(static_cast<unsigned long>(2 * l - 2), static_cast<unsigned long>(l - 1)));
  if (l % 2) {
    // (4 - 4^(3-l)) / l
    BigRational four_pow = 1 / pow(BigRational(4), static_cast<unsigned long>(l - 3));
    c *= (4 - four_pow) / l;
  } else {
    c *= BigRational(4, l);
  }
  c.canonicalize();
  return c;
}

inline PeriodValue zigzag_period(int loops, const PrecisionPolicy& pol) {
  BigRational c = zigzag_coefficient(loops);
  MZVIndex z = MZVIndex::zeta({2 * loops - 3});
  return {SymbolPoly::zeta(z) * c, eval_mzv(z, pol) * c, loops};
}

/// P_{3,5} = 9 { 2/5 [29 zeta(8) - 12 zeta(3,5)] - 9 zeta(3) zeta(5) }.
inline SymbolPoly p35_exact() {
  auto z = [](std::vector<int> e) { return SymbolPoly::zeta(MZVIndex::zeta(std::move(e))); };
  SymbolPoly inner = (z({8}) * BigRational(29) - z({3, 5}) * BigRational(12)) * BigRational(2, 5) -
                     z({3}) * z({5}) * BigRational(9);
  return inner * BigRational(9);
}

struct P35Result {
  PeriodValue value;
  ArbReal direct;   // each constituent evaluated on its own
  ArbReal reduced;  // rewritten in the weight-8 basis first, then evaluated
  SymbolPoly basis_form;
};

inline P35Result p35(const PrecisionPolicy& pol, ReductionTables& tables) {
  SymbolPoly exact = p35_exact();
  MzvEvaluator mzv(pol);
  GeneratorValue values = standard_values(mzv);
  ArbReal direct = real_part(evaluate(exact, values, pol));
  SymbolPoly basis_form = normalize(exact, tables);
  ArbReal reduced = real_part(evaluate(basis_form, values, pol));
  return {{exact, direct, std::nullopt}, direct, reduced, basis_form};
}

/// Bracketed coefficients of (alpha/pi)^k, k = 1..3, in terms of phi values.
inline std::vector<SymbolPoly> ae_coefficients() {
  auto phi = [](std::vector<int> e) { return SymbolPoly::zeta(MZVIndex::phi(std::move(e))); };
  const SymbolPoly p1 = phi({1}), p2 = phi({2}), p3 = phi({3}), p5 = phi({5}), p13 = phi({1, 3});
  SymbolPoly a1(BigRational(1, 2));
  SymbolPoly a2 = p3 - p1 * p2 * BigRational(6) + p2 + SymbolPoly(BigRational(197, 16 * 9));
  SymbolPoly a3 = (p2 * p3 * BigRational(83) - p5 * BigRational(43)) * BigRational(2, 9) -
                  p13 * BigRational(50, 3) + p2 * p2 * BigRational(13, 5) +
                  (p3 * BigRational(1, 9) - p1 * p2 * BigRational(12)) * BigRational(278, 3) +
                  p2 * BigRational(34202, 27 * 5) + SymbolPoly(BigRational(28259, 32 * 81));
  return {a1, a2, a3};
}

struct AnomalousMoment {
  BigRational alpha_inverse;
  int loops = 0;
  std::vector<SymbolPoly> exact;      // A_1..A_loops
  std::vector<ArbReal> coefficients;  // numerical A_k
  std::vector<ArbReal> partial;       // a_e truncated after (alpha/pi)^k
  ArbReal value;
};

inline AnomalousMoment anomalous_moment(const BigRational& alpha_inverse, int loops, const PrecisionPolicy& pol) {
  if (loops < 1) throw DomainError("loops must be at least 1");
  if (loops > 3) throw DomainError("coefficients are provided through (alpha/pi)^3 only");
  if (alpha_inverse <= 0) throw DomainError("alpha_inverse must be positive");
  MzvEvaluator mzv(pol);
  GeneratorValue values = standard_values(mzv);
  ArbReal x = exact_ball(Real(BigRational(1 / alpha_inverse), pol.bits()), pol.digits) / pi(pol);
  AnomalousMoment out{alpha_inverse, loops, {}, {}, {}, {Real(pol.bits()), Radius(), pol.digits}};
  std::vector<SymbolPoly> all = ae_coefficients();
  ArbReal xpow = x;
  for (int k = 1; k <= loops; ++k) {
    ArbReal a = real_part(evaluate(all[k - 1], values, pol));
    out.exact.push_back(all[k - 1]);
    out.coefficients.push_back(a);
    out.value = out.value + a * xpow;
    out.partial.push_back(out.value);
    xpow = xpow * x;
  }
  return out;
}

/// Measured a_e used as the reference for the three-loop check, with the
/// tolerance set by the size of the omitted (alpha/pi)^4 term.
inline const char* const kMeasuredAe = "1.15965218091e-3";
inline const char* const kAeTolerance = "2e-10";

struct AeCheck {
  ArbReal residual;  // a_e(3 loops) - measured
  bool within_tolerance = false;
  bool monotone_refining = false;  // |a3 - a2| < |a2 - a1|
};

inline AeCheck check_against_measurement(const AnomalousMoment& ae) {
  if (ae.loops != 3) throw DomainError("the measurement check needs the three-loop value");
  const mpfr_prec_t prec = ae.value.mid.precision();
  ArbReal measured{parse_real(kMeasuredAe, prec), Radius(), ae.value.digits};
  AeCheck c{ae.value - measured};
  c.within_tolerance = abs(c.residual.mid) < parse_real(kAeTolerance, prec);
  c.monotone_refining = abs(ae.partial[2].mid - ae.partial[1].mid) < abs(ae.partial[1].mid - ae.partial[0].mid);
  return c;
}

}  // namespace periodlab
