#include "support/generators.hpp"
#include "tropdiff/error.hpp"
#include "tropdiff/radius.hpp"
#include "tropdiff/verify.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace tropdiff;
using tropdiff::testing::Gen;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no exception";
  return ErrorCode::InvalidArgument;
}

// a_(pm) = m/(p-1) - v_p(m!), all other coefficients INF.
TropSeries exp_law(unsigned long p, std::size_t n) {
  std::vector<TropNum> c(n + 1);
  for (std::size_t m = 0; m * p <= n; ++m) {
    c[m * p] = TropNum(Rational(ratio(static_cast<long>(m), static_cast<long>(p - 1)) -
                                padic_val(factorial(m), p)));
  }
  return TropSeries(c, NatValuation::padic(p));
}

}  // namespace

TEST(RadiusRule, ExpFamily) {
  for (unsigned long p : {2UL, 3UL, 5UL, 7UL}) {
    const RadiusRule rule = RadiusRule::exp_family(p);
    const RadiusEstimate est = radius_from_rule(rule);
    EXPECT_EQ(est.kind, RadiusKind::ExactFromRule);
    EXPECT_EQ(est.log_radius, LogRadius::finite(Rational(0))) << p;
    EXPECT_EQ(radius_value(est.log_radius, Rational(static_cast<long>(p))), 1.0);
    const TropSeries law = exp_law(p, 40);
    for (unsigned long n = 0; n <= 40; ++n) EXPECT_EQ(rule.coefficient(n), law[n]) << p << " " << n;
  }
  EXPECT_EQ(RadiusRule::exp_family(3).coefficient(9), TropNum(ratio(1, 2)));
  EXPECT_TRUE(RadiusRule::exp_family(3).coefficient(4).is_inf());
}

TEST(RadiusRule, TropicalizedExpSolutionFollowsLaw) {
  for (unsigned long p : {2UL, 3UL, 5UL}) {
    const TropSeries s = tropicalize_series(solve_linear(exp_ode(p, 60)));
    EXPECT_EQ(s.coeffs(), exp_law(p, 60).coeffs()) << p;
  }
}

TEST(RadiusRule, OtherLaws) {
  EXPECT_TRUE(radius_from_rule(RadiusRule::polynomial()).log_radius.is_plus_infinity());
  EXPECT_TRUE(RadiusRule::polynomial().coefficient(0).is_inf());

  RadiusRule flat;
  EXPECT_EQ(radius_from_rule(flat).log_radius, LogRadius::finite(Rational(0)));

  RadiusRule r;
  r.stride = 2;
  r.slope = 3;
  r.offset = -7;
  EXPECT_EQ(radius_from_rule(r).log_radius, LogRadius::finite(ratio(3, 2)));
  EXPECT_EQ(r.coefficient(4), TropNum(-1L));

  RadiusRule bad;
  bad.stride = 0;
  EXPECT_EQ(code_of([&] { radius_from_rule(bad); }), ErrorCode::InvalidRule);
  RadiusRule no_prime;
  no_prime.factorial_correction = true;
  no_prime.prime = 4;
  EXPECT_EQ(code_of([&] { radius_from_rule(no_prime); }), ErrorCode::InvalidRule);
}

TEST(RadiusWindow, Examples) {
  std::vector<TropNum> geo;
  for (long i = 0; i <= 50; ++i) geo.emplace_back(i);
  const RadiusEstimate g = radius_window_estimate(TropSeries(geo, NatValuation::padic(2)), 10);
  EXPECT_EQ(g.kind, RadiusKind::WindowLowerBound);
  EXPECT_EQ(g.log_radius, LogRadius::finite(Rational(1)));
  EXPECT_EQ(g.window, std::optional(std::pair<std::size_t, std::size_t>(10, 50)));
  EXPECT_EQ(radius_value(g.log_radius, Rational(2)), 2.0);

  const RadiusEstimate e = radius_window_estimate(exp_law(3, 200), 100);
  ASSERT_TRUE(e.log_radius.is_finite());
  EXPECT_LE(abs(e.log_radius.value()), ratio(3, 20));
  EXPECT_FALSE(e.empty_window);

  // Start 0 is clamped to 1: a_0 / 0 is never used.
  std::vector<TropNum> c{TropNum(-100L), TropNum(3L), TropNum(10L)};
  EXPECT_EQ(radius_window_estimate(TropSeries(c, NatValuation::padic(3)), 0).log_radius,
            LogRadius::finite(Rational(3)));
}

TEST(RadiusWindow, EmptyAndInvalid) {
  std::vector<TropNum> c(10);
  c[0] = TropNum(0L);
  const TropSeries poly(c, NatValuation::padic(3));
  const RadiusEstimate est = radius_window_estimate(poly, 5);
  EXPECT_TRUE(est.empty_window);
  EXPECT_TRUE(est.log_radius.is_plus_infinity());
  EXPECT_EQ(to_string(est.log_radius), "inf");
  EXPECT_EQ(code_of([&] { radius_window_estimate(poly, 10); }), ErrorCode::InvalidWindow);
}

TEST(Property, ScalarShiftMovesWindowEstimateBoundedly) {
  Gen g(51);
  for (int i = 0; i < 500; ++i) {
    const TropSeries a = g.trop_series(NatValuation::padic(3), 30, 0.3);
    const std::size_t start = 1 + g.index(20);
    const RadiusEstimate e = radius_window_estimate(a, start);
    const RadiusEstimate s = radius_window_estimate(TropNum(5L) * a, start);
    ASSERT_EQ(e.empty_window, s.empty_window);
    if (e.empty_window) continue;
    const Rational d = s.log_radius.value() - e.log_radius.value();
    ASSERT_GE(d, 0);
    ASSERT_LE(d, ratio(5, static_cast<long>(start)));
  }
}

TEST(BaseChange, Examples) {
  RadiusEstimate est;
  est.log_radius = LogRadius::finite(ratio(2, 3));
  const BaseChange sq = base_change(est, Rational(3), Rational(9));
  EXPECT_EQ(sq.log_radius, est.log_radius);
  EXPECT_EQ(sq.log_base_ratio, std::optional(Rational(2)));
  EXPECT_EQ(sq.exponent, std::optional(ratio(1, 2)));
  EXPECT_DOUBLE_EQ(sq.exponent_approx, 0.5);
  EXPECT_NEAR(std::pow(radius_value(est.log_radius, Rational(9)), sq.exponent->get_d()),
              radius_value(est.log_radius, Rational(3)), 1e-12);

  const BaseChange back = base_change(est, Rational(9), Rational(3));
  EXPECT_EQ(Rational(*back.log_base_ratio * *sq.log_base_ratio), Rational(1));

  const BaseChange mixed = base_change(est, Rational(2), Rational(3));
  EXPECT_FALSE(mixed.log_base_ratio.has_value());
  EXPECT_NEAR(mixed.log_base_ratio_approx, std::log(3.0) / std::log(2.0), 1e-12);

  EXPECT_EQ(code_of([&] { base_change(est, Rational(1), Rational(3)); }), ErrorCode::BadBase);
  EXPECT_EQ(code_of([&] { base_change(est, Rational(3), ratio(1, 2)); }), ErrorCode::BadBase);
  EXPECT_EQ(base_change(est, Rational(4), Rational(8)).log_base_ratio, std::optional(ratio(3, 2)));
}

TEST(ClassicalRadius, Backends) {
  const PowerSeries sol = solve_linear(exp_ode(3, 60));
  EXPECT_EQ(classical_radius(sol, 0, RadiusRule::exp_family(3)).log_radius, LogRadius::finite(Rational(0)));
  const RadiusEstimate w = classical_radius(sol, 30);
  EXPECT_EQ(w.kind, RadiusKind::WindowLowerBound);
  EXPECT_LE(abs(w.log_radius.value()), ratio(1, 2));

  const Backend t = Backend::trivial();
  const PowerSeries triv = PowerSeries::constant(FieldElem::one(t), 5);
  EXPECT_EQ(code_of([&] { classical_radius(triv, 0); }), ErrorCode::TrivialBackend);
}

TEST(LogRadius, Printing) {
  EXPECT_EQ(to_string(LogRadius::finite(ratio(-1, 2))), "-1/2");
  EXPECT_EQ(to_string(LogRadius::minus_infinity()), "-inf");
  EXPECT_EQ(radius_value(LogRadius::minus_infinity(), Rational(3)), 0.0);
  EXPECT_TRUE(std::isinf(radius_value(LogRadius::plus_infinity(), Rational(3))));
  EXPECT_EQ(radius_value(LogRadius::finite(ratio(1, 2)), Rational(4)), 2.0);
  EXPECT_THROW(LogRadius::plus_infinity().value(), Error);
}
