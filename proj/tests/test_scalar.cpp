#include <gtest/gtest.h>

#include <random>

#include "holant/scalar.hpp"

using namespace holant;

namespace {

Scalar S(const char* s) { return parse_scalar(s); }

}  // namespace

TEST(ParseScalar, ImaginaryUnit) {
  Scalar z = S("i");
  EXPECT_EQ(z.order(), 4u);
  EXPECT_EQ(z, Scalar::zeta(4));
}

TEST(ParseScalar, CyclotomicRelation) { EXPECT_TRUE(S("w(3)^2 + w(3) + 1").is_zero()); }

TEST(ParseScalar, EighthRootFromSqrt2) {
  Scalar z = S("(1+i)/sqrt2");
  EXPECT_EQ(z, Scalar::zeta(8));
  EXPECT_EQ(z * z, Scalar::i());
}

TEST(ParseScalar, Errors) {
  EXPECT_THROW(S("1+"), ParseError);
  EXPECT_THROW(S("1/0"), ParseError);
  EXPECT_THROW(S("w(0)"), ParseError);
  EXPECT_THROW(S("2 3"), ParseError);
  EXPECT_THROW(S("x"), ParseError);
}

TEST(ParseScalar, UnaryMinusBindsToAtom) {
  EXPECT_EQ(S("-i^2"), Scalar(-1));
  EXPECT_EQ(S("-w(8)^2"), Scalar::i());
  EXPECT_EQ(S("1-w(8)^2"), S("1-i"));
  EXPECT_EQ(S("2^-2"), Scalar::rational(1, 4));
}

TEST(FieldOps, Examples) {
  Scalar z8 = Scalar::zeta(8);
  EXPECT_EQ(z8 * z8, Scalar::i());
  EXPECT_EQ(S("(1+i)*(1-i)"), Scalar(2));
  Scalar z3 = Scalar::zeta(3), i = Scalar::i();
  Scalar r = (z3 + i) - i;
  EXPECT_EQ(r, z3);
  EXPECT_EQ(r.base_part().order(), 12u);  // the computation went through Q(zeta_12)
  EXPECT_EQ(render(r), "w(3)");
}

TEST(FieldOps, DivisionByZero) {
  EXPECT_THROW(Scalar(0).inverse(), PreconditionError);
  EXPECT_THROW(Scalar(1) / Scalar(0), PreconditionError);
}

TEST(FieldOps, SingleEvenOrderIsCanonicalised) {
  EXPECT_EQ(Scalar::zeta(6), -Scalar::zeta(3, 2));
  EXPECT_EQ(Scalar::zeta(6).order(), 3u);
  EXPECT_EQ(Scalar::zeta(2), Scalar(-1));
}

TEST(FieldOps, ConjAndPow) {
  EXPECT_EQ(Scalar::zeta(8).conj(), Scalar::zeta(8, 7));
  EXPECT_EQ(Scalar::zeta(5).pow(5), Scalar(1));
  EXPECT_EQ(Scalar::zeta(12).pow(-1), Scalar::zeta(12, 11));
}

TEST(FieldOps, RandomAxioms) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coef(-5, 5);
  const unsigned orders[] = {1, 3, 4, 5, 8, 12, 24};
  auto rnd = [&]() {
    Scalar z;
    unsigned n = orders[rng() % 7];
    for (unsigned j = 0; j < n; ++j) z += Scalar(coef(rng)) * Scalar::zeta(n, j);
    return z / Scalar(1 + (rng() % 4));
  };
  for (int t = 0; t < 60; ++t) {
    Scalar x = rnd(), y = rnd(), z = rnd();
    EXPECT_EQ((x + y) + z, x + (y + z));
    EXPECT_EQ(x * (y + z), x * y + x * z);
    if (!x.is_zero()) {
      EXPECT_EQ(x * x.inverse(), Scalar(1));
    }
    EXPECT_EQ(parse_scalar(render(x)), x) << render(x);
    auto ax = x.approx(), ay = y.approx();
    EXPECT_LT(std::abs((x * y).approx() - ax * ay), 1e-9 * (1 + std::abs(ax * ay)));
  }
}

TEST(RootOfUnityOrder, Examples) {
  EXPECT_EQ(root_of_unity_order(Scalar::i()), 4u);
  EXPECT_FALSE(root_of_unity_order(Scalar(2)).has_value());
  EXPECT_EQ(root_of_unity_order(-Scalar::zeta(3)), 6u);
  EXPECT_EQ(root_of_unity_order(Scalar(1)), 1u);
  EXPECT_EQ(root_of_unity_order(Scalar(-1)), 2u);
  EXPECT_EQ(root_of_unity_order(Scalar::zeta(24, 5)), 24u);
  EXPECT_FALSE(root_of_unity_order(S("(1+2*i)/(1-2*i)")).has_value());
}

TEST(RootOfUnityOrder, ExtensionElement) {
  // (1 + sqrt(-3))/2 is a primitive sixth root of unity; build it over Q(i)
  Scalar s = adjoin_sqrt(Scalar(5));
  ASSERT_TRUE(s.has_radical());
  Scalar u = s / Scalar(5) * s;  // = 1
  EXPECT_EQ(root_of_unity_order(u), 1u);
  EXPECT_FALSE(root_of_unity_order(s).has_value());
}

TEST(AdjoinSqrt, Examples) {
  Scalar r2 = adjoin_sqrt(Scalar(2));
  EXPECT_FALSE(r2.has_radical());
  EXPECT_EQ(r2 * r2, Scalar(2));
  EXPECT_EQ(r2 * r2, S("(w(8)+w(8)^7)^2"));
  Scalar ri = adjoin_sqrt(Scalar::i());
  EXPECT_FALSE(ri.has_radical());
  EXPECT_EQ(ri * ri, Scalar::i());
  Scalar r5 = adjoin_sqrt(Scalar(5) + Scalar::i() - Scalar::i());
  EXPECT_TRUE(r5.has_radical());
  EXPECT_EQ(r5 * r5, Scalar(5));
}

TEST(AdjoinSqrt, InFieldSquares) {
  for (const char* t : {"-1", "-3", "9/4", "2*i", "w(3)", "-2", "(1+i)^2*w(5)"}) {
    Scalar d = S(t);
    Scalar s = adjoin_sqrt(d);
    EXPECT_EQ(s * s, d) << t;
  }
  // only Q(zeta_n), its double and the zeta_8 adjunction are searched
  EXPECT_TRUE(adjoin_sqrt(S("-3")).has_radical());
  EXPECT_FALSE(adjoin_sqrt(S("-3*w(3)")).has_radical());
  EXPECT_FALSE(adjoin_sqrt(S("3+4*i")).has_radical());  // (2+i)^2
}

TEST(AdjoinSqrt, RadicalArithmetic) {
  Scalar s5 = adjoin_sqrt(Scalar(5));
  Scalar s20 = adjoin_sqrt(Scalar(20));
  EXPECT_EQ(s20, Scalar(2) * s5);
  Scalar phi = (Scalar(1) + s5) / Scalar(2);
  EXPECT_EQ(phi * phi, phi + Scalar(1));
  EXPECT_EQ(parse_scalar(render(phi)), phi) << render(phi);
  EXPECT_EQ(phi * phi.inverse(), Scalar(1));
  EXPECT_NEAR(phi.approx().real(), 1.6180339887498949, 1e-12);
  Scalar s3 = adjoin_sqrt(Scalar(3) * Scalar::i());
  EXPECT_THROW(s5 + s3, CapabilityError);
  EXPECT_THROW(adjoin_sqrt(s5), CapabilityError);
  Scalar sm5 = adjoin_sqrt(Scalar(-5));
  EXPECT_EQ(sm5 * sm5, Scalar(-5));
  EXPECT_EQ(sm5, Scalar::i() * s5);
}

TEST(Approx, Examples) {
  auto z = Scalar::zeta(8).approx();
  EXPECT_NEAR(z.real(), 0.70710678118654752, 1e-15);
  EXPECT_NEAR(z.imag(), 0.70710678118654752, 1e-15);
  EXPECT_EQ(Scalar(0).approx(), FloatScalar(0, 0));
  auto w = (Scalar::zeta(3) + Scalar::zeta(3, 2)).approx();
  EXPECT_NEAR(w.real(), -1, 1e-15);
  EXPECT_NEAR(w.imag(), 0, 1e-15);
}

TEST(MaxOrder, CapIsEnforced) {
  unsigned old = max_order();
  set_max_order(24);
  EXPECT_THROW(Scalar::zeta(5) * Scalar::zeta(7), CapabilityError);
  EXPECT_THROW(S("w(25)"), CapabilityError);
  set_max_order(old);
  EXPECT_NO_THROW(Scalar::zeta(5) * Scalar::zeta(7));
}

TEST(Render, Forms) {
  EXPECT_EQ(render(S("i")), "i");
  EXPECT_EQ(render(S("-i")), "-i");
  EXPECT_EQ(render(S("3/2")), "3/2");
  EXPECT_EQ(render(S("1 - 3/2*w(8)^3")), "1-3/2*w(8)^3");
  EXPECT_EQ(render(S("-w(8)^2")), "i");
  EXPECT_EQ(render(S("-(w(8)^3)")), "-1*w(8)^3");
  EXPECT_EQ(render(S("sqrt2")), "w(8)-w(8)^3");
  EXPECT_EQ(render(S("(w(5)+w(5)^4)")), render(S("w(5)+w(5)^4")));
}

TEST(Render, MinimisesField) {
  Scalar z = Scalar::zeta(24).pow(8);  // zeta_3
  EXPECT_EQ(render(z), "w(3)");
  Scalar q = Scalar::zeta(15).pow(5) + Scalar::zeta(15).pow(10);  // -1
  EXPECT_EQ(render(q), "-1");
}

TEST(CanonicalLess, OrdersByRealThenImag) {
  EXPECT_TRUE(canonical_less(Scalar(-1), Scalar(1)));
  EXPECT_TRUE(canonical_less(-Scalar::i(), Scalar::i()));
  EXPECT_FALSE(canonical_less(Scalar(1), Scalar(1)));
}
