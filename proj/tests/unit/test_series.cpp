#include "support/generators.hpp"
#include "tropdiff/error.hpp"
#include "tropdiff/series.hpp"

#include <gtest/gtest.h>

using namespace tropdiff;
using tropdiff::testing::Gen;

namespace {

const TropNum INF = TropNum::inf();

TropSeries tseries(std::vector<TropNum> c, unsigned long p = 3) {
  return TropSeries(std::move(c), p ? NatValuation::padic(p) : NatValuation::trivial());
}

// S = 0*t + 1*t^3
TropSeries sample(std::size_t len = 6) {
  std::vector<TropNum> c(len);
  c[1] = TropNum(0L);
  c[3] = TropNum(1L);
  return tseries(c);
}

PowerSeries exp_zeta_t3(std::size_t n) {
  const Backend b = Backend::eisenstein(3);
  std::vector<FieldElem> c(n + 1, FieldElem::zero(b));
  for (std::size_t m = 0; 3 * m <= n; ++m) {
    c[3 * m] = FieldElem::zeta(b).pow(static_cast<long>(m)) * Rational(Rational(1) / Rational(factorial(m)));
  }
  return PowerSeries(b, c);
}

}  // namespace

TEST(PowerSeries, Arithmetic) {
  const Backend b = Backend::padic(3);
  const PowerSeries one = PowerSeries::constant(FieldElem::one(b), 4);
  const PowerSeries t = PowerSeries::monomial(FieldElem::one(b), 1, 4);
  const PowerSeries s = (one + t) * (one - t);
  EXPECT_EQ(s, one - t * t);
  EXPECT_EQ(s.order(), std::optional<std::size_t>(0));
  EXPECT_EQ((t * t).derivative(), PowerSeries::monomial(FieldElem::from_rational(b, Rational(2)), 1, 3));
  EXPECT_EQ((one + t).truncated(6).length(), 4u);
  EXPECT_TRUE(PowerSeries::zero(b, 5).is_zero());
  EXPECT_EQ((one * PowerSeries::zero(b, 2)).length(), 2u);
  EXPECT_THROW((void)(one + PowerSeries::constant(FieldElem::one(Backend::padic(5)), 4)), Error);
}

TEST(PhiLeading, Examples) {
  EXPECT_EQ(phi_leading(sample()).value, Trop2(Rational(1), Rational(0)));
  const LeadingTerm empty = phi_leading(TropSeries::infinite(5, NatValuation::padic(3)));
  EXPECT_TRUE(empty.value.is_inf());
  EXPECT_TRUE(empty.truncation_limited);
  EXPECT_FALSE(phi_leading(TropSeries::infinite(5, NatValuation::padic(3), true)).truncation_limited);
  EXPECT_EQ(phi_leading(tseries({TropNum(5L), TropNum(0L)})).value, Trop2(Rational(0), Rational(5)));
}

TEST(TropDiff, Examples) {
  const TropSeries d = trop_diff(sample());
  EXPECT_EQ(d, tseries({TropNum(0L), INF, TropNum(2L), INF, INF}));
  EXPECT_EQ(phi_leading(trop_diff(sample(), 3)).value, Trop2(Rational(0), Rational(2)));
  // Phi(S) * Phi(d^3 S) = (1, 0) * (0, 2)
  EXPECT_EQ(phi_leading(sample()).value * phi_leading(trop_diff(sample(), 3)).value,
            Trop2(Rational(1), Rational(2)));
  const TropSeries c = tseries({TropNum(0L), INF, INF}, 0);
  EXPECT_EQ(trop_diff(c), tseries({INF, INF}, 0));
  EXPECT_EQ(trop_diff(sample(), 0), sample());
}

TEST(Tropicalize, Examples) {
  const TropSeries s = tropicalize_series(exp_zeta_t3(18));
  for (std::size_t k = 0; k <= 18; ++k) {
    if (k % 3 == 0) {
      const unsigned long m = k / 3;
      EXPECT_EQ(s[k], TropNum(Rational(ratio(static_cast<long>(m), 2) - factorial_val(m, 3)))) << k;
    } else {
      EXPECT_TRUE(s[k].is_inf());
    }
  }
  EXPECT_EQ(tropicalize_series(PowerSeries::zero(Backend::padic(3), 4)), TropSeries::infinite(4, NatValuation::padic(3)));

  const Backend tb = Backend::trivial();
  PowerSeries a(tb, {FieldElem::one(tb), FieldElem::zero(tb), FieldElem::from_rational(tb, Rational(7))});
  const TropSeries ta = tropicalize_series(a);
  EXPECT_TRUE(ta.is_boolean());
  EXPECT_EQ(sigma_to_grigoriev(ta).support, (std::vector<std::size_t>{0, 2}));
}

TEST(Rank2, Examples) {
  const Backend b = Backend::eisenstein(3);
  const PowerSeries a = PowerSeries::monomial(FieldElem::zeta(b) * Rational(-3), 2, 5);
  EXPECT_EQ(rank2_val(a).value, Trop2(Rational(2), ratio(3, 2)));
  EXPECT_EQ(rank2_val(PowerSeries::constant(FieldElem::one(b), 3)).value, Trop2::zero());
  const LeadingTerm z = rank2_val(PowerSeries::zero(b, 3));
  EXPECT_TRUE(z.value.is_inf());
  EXPECT_TRUE(z.truncation_limited);
}

TEST(Psi, Examples) {
  const Backend b = Backend::padic(3);
  auto q = [&](long n, long d = 1) { return FieldElem::from_rational(b, ratio(n, d)); };
  const std::vector<FieldElem> unit{q(1), q(0), q(0)};
  EXPECT_EQ(psi(unit, b), PowerSeries::constant(q(1), 3));
  const std::vector<FieldElem> a{q(0), q(1), q(0), q(2)};
  EXPECT_EQ(psi(a, b), PowerSeries(b, {q(0), q(1), q(0), q(1, 3)}));
  EXPECT_EQ(psi_inverse(psi(a, b)), a);
}

TEST(PsiTrop, Examples) {
  const std::vector<TropNum> b = psi_trop_inverse(sample());
  EXPECT_EQ(b, (std::vector<TropNum>{INF, TropNum(0L), INF, TropNum(2L), INF, INF}));
  EXPECT_EQ(psi_trop(b, NatValuation::padic(3)), sample());
  const std::vector<TropNum> infs(4);
  EXPECT_EQ(psi_trop(infs, NatValuation::padic(3)), TropSeries::infinite(4, NatValuation::padic(3)));
}

TEST(Sigma, Examples) {
  EXPECT_EQ(sigma_to_grigoriev(sample()).support, (std::vector<std::size_t>{1, 3}));
  EXPECT_EQ(sigma0(Trop2(Rational(2), ratio(3, 2))), TropNum(2L));
  EXPECT_EQ(sigma0(Trop2::inf()), INF);
  const BoolSeries bs{4, {0, 3}};
  EXPECT_EQ(bs.to_trop_series(), tseries({TropNum(0L), INF, INF, TropNum(0L)}, 0));
}

TEST(TropSeries, SemiringOperations) {
  const TropSeries a = tseries({TropNum(1L), TropNum(0L), INF});
  const TropSeries b = tseries({TropNum(0L), INF, TropNum(2L)});
  EXPECT_EQ(a + b, tseries({TropNum(0L), TropNum(0L), TropNum(2L)}));
  EXPECT_EQ(a * b, tseries({TropNum(1L), TropNum(0L), TropNum(3L)}));
  EXPECT_EQ(TropNum(ratio(1, 2)) * a, tseries({TropNum(ratio(3, 2)), TropNum(ratio(1, 2)), INF}));
  EXPECT_THROW((void)(a + tseries({TropNum(0L)}, 5)), Error);
}

TEST(TropSeries, ExactTail) {
  const NatValuation v = NatValuation::padic(3);
  const TropSeries poly(std::vector<TropNum>{TropNum(0L), TropNum(1L), INF, INF}, v, true);
  EXPECT_TRUE((poly * poly).exact_tail());
  EXPECT_TRUE(trop_diff(poly).exact_tail());
  const TropSeries open(std::vector<TropNum>{TropNum(0L), INF, INF, INF}, v, false);
  EXPECT_FALSE((poly + open).exact_tail());
  // A cofinitely-INF times a constant series stays known.
  const TropSeries constant(std::vector<TropNum>{TropNum(0L), INF, INF, INF}, v, true);
  EXPECT_TRUE((constant * poly).exact_tail());
  const TropSeries dense(std::vector<TropNum>{TropNum(0L), INF, INF, TropNum(1L)}, v, true);
  EXPECT_FALSE((dense * poly).exact_tail());
}

TEST(Property, EnhancementCommutes) {
  Gen g(21);
  for (int i = 0; i < 500; ++i) {
    const Backend b = g.backend();
    const PowerSeries a = g.series(b, 2 + g.index(10));
    ASSERT_EQ(tropicalize_series(a.derivative()), trop_diff(tropicalize_series(a))) << b.name();
  }
}

TEST(Property, PhiDiagramCommutes) {
  Gen g(22);
  for (int i = 0; i < 1000; ++i) {
    const Backend b = g.backend();
    const PowerSeries a = g.series(b, 1 + g.index(8), 0.6);
    const LeadingTerm lhs = phi_leading(tropicalize_series(a));
    const LeadingTerm rhs = rank2_val(a);
    ASSERT_EQ(lhs.value, rhs.value);
    ASSERT_EQ(lhs.truncation_limited, rhs.truncation_limited);
  }
}

TEST(Property, TropicalLeibniz) {
  Gen g(23);
  for (int i = 0; i < 500; ++i) {
    const NatValuation v = g.chance(0.8) ? NatValuation::padic(g.chance(0.5) ? 2 : 3) : NatValuation::trivial();
    const std::size_t len = 2 + g.index(9);
    const TropSeries x = g.trop_series(v, len), y = g.trop_series(v, len);
    const TropSeries lhs = trop_diff(x * y);
    const TropSeries a = x * trop_diff(y);
    const TropSeries c = y * trop_diff(x);
    for (std::size_t k = 0; k + 1 < len; ++k) {
      const std::vector<TropNum> terms{lhs[k], a[k], c[k]};
      ASSERT_TRUE(tropically_vanishes<TropNum>(terms).vanishes) << "case " << i << " degree " << k;
    }
  }
}

TEST(Property, SigmaCompatibility) {
  Gen g(24);
  for (int i = 0; i < 1000; ++i) {
    const Backend b = g.valued_backend();
    const Backend tb = Backend::trivial();
    std::vector<FieldElem> cv, ct;
    for (std::size_t k = 0, len = 1 + g.index(8); k < len; ++k) {
      const Rational r = g.chance(0.4) ? Rational(0) : g.padic_rational(b.prime());
      cv.push_back(FieldElem::from_rational(b, r));
      ct.push_back(FieldElem::from_rational(tb, r));
    }
    ASSERT_EQ(sigma_to_grigoriev(tropicalize_series(PowerSeries(b, cv))).to_trop_series(),
              tropicalize_series(PowerSeries(tb, ct)));
  }
}

TEST(Property, PsiSquareCommutes) {
  Gen g(25);
  for (int i = 0; i < 1000; ++i) {
    const Backend b = g.backend();
    std::vector<FieldElem> a;
    std::vector<TropNum> va;
    for (std::size_t k = 0, len = 1 + g.index(10); k < len; ++k) {
      a.push_back(g.field(b, 0.3));
      va.push_back(field_val(a.back()));
    }
    ASSERT_EQ(tropicalize_series(psi(a, b)), psi_trop(va, b.nat_valuation()));
    ASSERT_EQ(psi_inverse(psi(a, b)), a);
  }
}

TEST(Property, PsiTropRoundTrips) {
  Gen g(26);
  for (int i = 0; i < 1000; ++i) {
    const NatValuation v = g.chance(0.7) ? NatValuation::padic(g.chance(0.5) ? 3 : 5) : NatValuation::trivial();
    const TropSeries s = g.trop_series(v, 1 + g.index(12));
    ASSERT_EQ(psi_trop(psi_trop_inverse(s), v), s);
    std::vector<TropNum> b;
    for (std::size_t k = 0; k < s.length(); ++k) b.push_back(g.trop());
    ASSERT_EQ(psi_trop_inverse(psi_trop(b, v)), b);
    // The inverse reads off the constant terms of d_v^j S.
    for (std::size_t j = 0; j < s.length(); ++j) {
      ASSERT_EQ(psi_trop_inverse(s)[j], trop_diff(s, j)[0]);
    }
  }
}
