#include <gtest/gtest.h>

#include <dcalc/dcalc.hpp>

using namespace dcalc;

TEST(Assignment, ShiftOverridesOneVariable) {
    const Assignment s{{mk_var(0), 1.0}, {mk_var(1), 2.0}};
    const Assignment t = s.shift(mk_var(0), 5.0);
    EXPECT_EQ(t(mk_var(0)), 5.0);
    EXPECT_EQ(t(mk_var(1)), 2.0);
    EXPECT_EQ(s(mk_var(0)), 1.0);
    EXPECT_EQ(t(mk_var(7)), 0.0);
}

TEST(Interpret, DifferentialsAreIndependentVariables) {
    const Term t = parse("x0*dx0 + d^2 x0");
    const Assignment s{{mk_var(0), 3.0}, {mk_var(0, 1), 5.0}, {mk_var(0, 2), 7.0}};
    EXPECT_EQ(interpret(t, s), 22.0);
}

TEST(Interpret, ConstantsAreNeverTouched) {
    EXPECT_EQ(interpret(parse("2.5"), Assignment(9.0)), 2.5);
}

TEST(Equiv, AgreesOnIdentities) {
    EXPECT_TRUE(semantic_equiv(parse("sin(x0)^2 + cos(x0)^2"), parse("1")).equivalent());
    EXPECT_TRUE(semantic_equiv(parse("exp(x0 + x1)"), parse("exp(x0)*exp(x1)")).equivalent());
}

TEST(Equiv, FindsCounterexamples) {
    const Verdict v = semantic_equiv(parse("x0*x1"), parse("x0 + x1"));
    ASSERT_EQ(v.kind, Verdict::Kind::counterexample);
    ASSERT_TRUE(v.witness.has_value());
    EXPECT_NE(v.witness->lhs, v.witness->rhs);
}

TEST(Equiv, IsDeterministicAndSymmetric) {
    const Term a = parse("x0 + 1e-6*sin(40*x0)"), b = parse("x0");
    const Verdict v1 = semantic_equiv(a, b), v2 = semantic_equiv(a, b), v3 = semantic_equiv(b, a);
    ASSERT_EQ(v1.kind, Verdict::Kind::counterexample);
    EXPECT_EQ(v1.witness->assignment.bindings(), v2.witness->assignment.bindings());
    EXPECT_EQ(v1.witness->assignment.bindings(), v3.witness->assignment.bindings());
}

TEST(Equiv, RetriesDomainErrorsAndReportsInconclusive) {
    const Verdict ok = semantic_equiv(parse("ln(x0)"), parse("ln(x0)"));
    EXPECT_TRUE(ok.equivalent());
    EXPECT_EQ(ok.samples, 100u);
    const Verdict never = semantic_equiv(parse("ln(x0 - 10)"), parse("ln(x0 - 10)"));
    EXPECT_EQ(never.kind, Verdict::Kind::inconclusive);
    EXPECT_EQ(never.domain_failures, 100u);
}

TEST(Equiv, ConfigIsValidated) {
    EXPECT_THROW(semantic_equiv(parse("x0"), parse("x0"), {.samples = 0}), std::invalid_argument);
    EXPECT_THROW(semantic_equiv(parse("x0"), parse("x0"), {.lo = 1, .hi = 1}), std::invalid_argument);
}

TEST(CloseEnough, RelativeWithFloor) {
    EXPECT_TRUE(close_enough(1e6, 1e6 + 1e-4, 1e-9, 0));
    EXPECT_FALSE(close_enough(1.0, 1.0 + 1e-8, 1e-9, 0));
    EXPECT_TRUE(close_enough(0.0, 1e-13, 1e-9, 1e-12));
}
