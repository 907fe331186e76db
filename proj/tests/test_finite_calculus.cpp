#include <gtest/gtest.h>

#include <dcalc/dcalc.hpp>

using namespace dcalc;

TEST(DeltaTerm, RejectsDifferentials) {
    EXPECT_THROW(DeltaTerm(parse("x0*dx0")), MixedVariables);
    EXPECT_NO_THROW(DeltaTerm(parse("x0*Dx0")));
}

TEST(Delta, ForwardDifference) {
    const DeltaTerm sq(parse("x0^2"));
    EXPECT_EQ(to_string(delta(sq, mk_var(0)).term()), "(x0 + Dx0)^2 - x0^2");
    for (int x = -3; x <= 3; ++x) EXPECT_EQ(evaluate_at(delta(sq, mk_var(0)), mk_var(0), x), 2 * x + 1);
}

TEST(Delta, SecondDifferenceOfCube) {
    const DeltaTerm cube(parse("x0^3"));
    const DeltaTerm dd = delta_power(cube, mk_var(0), 2);
    for (int x = -4; x <= 4; ++x) EXPECT_EQ(evaluate_at(dd, mk_var(0), x), 6 * x + 6);
}

TEST(DeltaSubst, ReplacesDeltaX) {
    const DeltaTerm f(parse("x0 + Dx0"));
    const DeltaTerm got = delta_subst(f, mk_var(0), DeltaTerm(parse("x0^2")));
    EXPECT_EQ(to_string(got.term()), "x0^2 + ((x0 + Dx0)^2 - x0^2)");
    EXPECT_THROW(delta_subst(f, mk_var(0), DeltaTerm(parse("Dx0"))), std::invalid_argument);
}

TEST(DeltaChain, HoldsExactly) {
    const auto grid = integer_grid(-5, 5);
    for (const auto& [f, g] : std::vector<std::pair<std::string, std::string>>{
             {"x0^2", "x0^3"}, {"1/(1 + x0^2)", "x0 + 1"}, {"x0^3", "x0^2"}, {"sin(x0)", "x0 + 2"}}) {
        const auto rep = check_delta_chain_rule(DeltaTerm(parse(f)), mk_var(0), DeltaTerm(parse(g)), grid);
        EXPECT_TRUE(rep.agree) << f << " " << g;
    }
}

TEST(DeltaChain, ReportsTheFirstMismatch) {
    // Without the Dx substitution the rule fails; simulate by a wrong inner delta.
    const DeltaTerm f(parse("x0^2"));
    const DeltaTerm lhs = delta(delta_subst(f, mk_var(0), DeltaTerm(parse("x0^3"))), mk_var(0));
    const DeltaTerm naive(extend(VarMap{{mk_var(0), parse("x0^3")}}, delta(f, mk_var(0)).term()));
    EXPECT_NE(evaluate_at(lhs, mk_var(0), 2), evaluate_at(naive, mk_var(0), 2));
}

TEST(Telescoping, SumOfDifferences) {
    const DeltaTerm t(parse("x0^4 - 3*x0 + 1"));
    const DeltaTerm dt = delta(t, mk_var(0));
    double sum = 0;
    for (int i = -5; i < 6; ++i) sum += evaluate_at(dt, mk_var(0), i);
    EXPECT_EQ(sum, evaluate_at(t, mk_var(0), 6) - evaluate_at(t, mk_var(0), -5));
}
