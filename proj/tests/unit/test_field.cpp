#include "support/generators.hpp"
#include "tropdiff/error.hpp"
#include "tropdiff/field.hpp"

#include <gtest/gtest.h>

using namespace tropdiff;
using tropdiff::testing::Gen;

namespace {

FieldElem q(const Backend& b, long n, long d = 1) { return FieldElem::from_rational(b, ratio(n, d)); }

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no exception";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(Backend, Shapes) {
  EXPECT_EQ(Backend::eisenstein(3).dimension(), 2u);
  EXPECT_EQ(Backend::eisenstein(2).dimension(), 1u);
  EXPECT_EQ(Backend::eisenstein(5).ramification(), 4);
  EXPECT_EQ(Backend::padic(5).ramification(), 1);
  EXPECT_EQ(Backend::trivial().prime(), 0u);
  EXPECT_THROW(Backend::padic(4), Error);
  EXPECT_THROW(Backend::eisenstein(9), Error);
}

TEST(FieldVal, Examples) {
  const Backend e3 = Backend::eisenstein(3);
  EXPECT_EQ(field_val(FieldElem::zeta(e3)), TropNum(ratio(1, 2)));
  EXPECT_EQ(field_val(q(Backend::padic(3), 6)), TropNum(1L));
  EXPECT_EQ(field_val(FieldElem::zero(e3)), TropNum::inf());
  EXPECT_EQ(field_val(q(Backend::trivial(), 27)), TropNum(0L));
  EXPECT_EQ(field_val(q(Backend::padic(2), 3, 8)), TropNum(-3L));
}

TEST(Eisenstein, ZetaPowers) {
  const Backend b = Backend::eisenstein(3);
  const FieldElem z = FieldElem::zeta(b);
  EXPECT_EQ(z * z, q(b, -3));
  EXPECT_EQ(z.pow(3), q(b, -3) * z);
  EXPECT_EQ(z.pow(-1) * z, FieldElem::one(b));
  EXPECT_EQ(to_string(z.pow(3)), "-3*zeta");
  EXPECT_EQ(to_string(q(b, 1) + z * ratio(2, 3)), "1 + 2/3*zeta");
  const Backend b2 = Backend::eisenstein(2);
  EXPECT_EQ(FieldElem::zeta(b2), q(b2, -2));
}

TEST(Section, Examples) {
  const Backend b = Backend::eisenstein(3);
  const auto s = section_phi(Trop2(Rational(0), ratio(1, 2)), b);
  EXPECT_EQ(s.t_exponent, 0);
  EXPECT_EQ(s.scalar, FieldElem::zeta(b));

  const auto s2 = section_phi(Trop2(Rational(2), ratio(3, 2)), b);
  EXPECT_EQ(s2.t_exponent, 2);
  EXPECT_EQ(s2.scalar, FieldElem::zeta(b) * Rational(-3));

  const auto one = section_phi(Trop2::zero(), b);
  EXPECT_EQ(one.t_exponent, 0);
  EXPECT_EQ(one.scalar, FieldElem::one(b));

  EXPECT_EQ(code_of([&] { section_phi(Trop2(ratio(1, 2), Rational(0)), b); }),
            ErrorCode::NonIntegralExponent);
  EXPECT_EQ(code_of([&] { section_phi(Trop2(Rational(0), ratio(1, 3)), b); }),
            ErrorCode::NonIntegralExponent);
  EXPECT_EQ(section_phi(Trop2(Rational(1), Rational(-2)), Backend::padic(5)).scalar,
            q(Backend::padic(5), 1, 25));
}

TEST(AngularComponent, Examples) {
  const Backend b = Backend::eisenstein(3);
  const FieldElem z = FieldElem::zeta(b);
  EXPECT_EQ(angular_component(z * Rational(-3)), ResidueElem::one(3));
  EXPECT_EQ(angular_component(FieldElem::one(b)), ResidueElem::one(3));
  EXPECT_EQ(angular_component(z * Rational(6)), ResidueElem::one(3));
  for (unsigned long p : {2UL, 3UL, 5UL}) {
    const Backend e = Backend::eisenstein(p);
    EXPECT_EQ(angular_component(FieldElem::zeta(e) * Rational(-static_cast<long>(p))), ResidueElem::one(p));
  }
  EXPECT_EQ(code_of([&] { angular_component(FieldElem::zero(b)); }), ErrorCode::ZeroInput);
}

TEST(Residue, Examples) {
  const Backend b = Backend::eisenstein(3);
  EXPECT_EQ(residue(q(b, 7, 2)), ResidueElem(3, Rational(2)));
  EXPECT_EQ(residue(FieldElem::zeta(b)), ResidueElem::zero(3));
  EXPECT_EQ(residue(FieldElem::one(b)), ResidueElem::one(3));
  EXPECT_EQ(code_of([&] { residue(q(b, 1, 3)); }), ErrorCode::NegativeValuation);
  EXPECT_EQ(residue(q(Backend::trivial(), 5, 7)), ResidueElem(0, ratio(5, 7)));
  EXPECT_EQ(to_string(ResidueElem(5, Rational(-1))), "4");
}

TEST(ResidueField, Arithmetic) {
  const ResidueElem a(5, Rational(3)), b(5, Rational(4));
  EXPECT_EQ(a + b, ResidueElem(5, Rational(2)));
  EXPECT_EQ(a * b, ResidueElem(5, Rational(2)));
  EXPECT_EQ(a - b, ResidueElem(5, Rational(4)));
  EXPECT_EQ((a / b) * b, a);
  EXPECT_THROW(a / ResidueElem::zero(5), Error);
}

TEST(FieldElem, Errors) {
  EXPECT_EQ(code_of([] { FieldElem::zeta(Backend::padic(3)); }), ErrorCode::ZetaUnavailable);
  EXPECT_EQ(code_of([] { FieldElem::uniformizer(Backend::trivial()); }), ErrorCode::TrivialBackend);
  EXPECT_EQ(code_of([] { FieldElem::zero(Backend::padic(3)).inverse(); }), ErrorCode::DivisionByZero);
  EXPECT_EQ(code_of([] { (void)(FieldElem::one(Backend::padic(3)) + FieldElem::one(Backend::padic(5))); }),
            ErrorCode::BackendMismatch);
}

TEST(Property, ValuationMultiplicative) {
  Gen g(11);
  for (const Backend& b : {Backend::padic(2), Backend::padic(3), Backend::eisenstein(2), Backend::eisenstein(3),
                           Backend::eisenstein(5), Backend::trivial()}) {
    for (int i = 0; i < 500; ++i) {
      const FieldElem x = g.field(b), y = g.field(b);
      ASSERT_EQ(field_val(x * y), field_val(x) * field_val(y)) << b.name();
      const TropNum vs = field_val(x + y);
      ASSERT_GE(vs, field_val(x) + field_val(y));
      if (!(field_val(x) == field_val(y))) ASSERT_EQ(vs, field_val(x) + field_val(y));
    }
  }
}

TEST(Property, InverseAndEisensteinReduction) {
  Gen g(12);
  for (int i = 0; i < 1000; ++i) {
    const Backend b = g.valued_backend();
    const FieldElem x = g.nonzero_field(b);
    ASSERT_EQ(x * x.inverse(), FieldElem::one(b));
    ASSERT_EQ(x / x, FieldElem::one(b));
    if (b.has_zeta()) {
      const FieldElem lhs = x * FieldElem::zeta(b).pow(static_cast<long>(b.prime() - 1));
      ASSERT_EQ(lhs, x * Rational(-static_cast<long>(b.prime())));
    }
  }
}

TEST(Property, AngularComponentMultiplicative) {
  Gen g(13);
  for (int i = 0; i < 1000; ++i) {
    const Backend b = g.backend();
    const FieldElem x = g.nonzero_field(b), y = g.nonzero_field(b);
    ASSERT_EQ(angular_component(x * y), angular_component(x) * angular_component(y)) << b.name();
    if (b.kind() == BackendKind::RationalTrivial) continue;
    const auto s = section_phi(Trop2(Rational(0), Rational(-field_val(x).value())), b);
    ASSERT_EQ(residue(x * s.scalar), angular_component(x));
  }
}

TEST(Property, SectionIsHomomorphism) {
  Gen g(14);
  for (int i = 0; i < 1000; ++i) {
    const Backend b = g.valued_backend();
    const long e = b.ramification();
    auto weight = [&] { return Trop2(Rational(g.integer(-3, 3)), ratio(g.integer(-6, 6), e)); };
    const Trop2 u = weight(), w = weight();
    const auto su = section_phi(u, b), sw = section_phi(w, b), suw = section_phi(u * w, b);
    ASSERT_EQ(suw.t_exponent, su.t_exponent + sw.t_exponent);
    ASSERT_EQ(suw.scalar, su.scalar * sw.scalar);
    ASSERT_EQ(field_val(su.scalar), TropNum(u.second()));
  }
}
