#include <gtest/gtest.h>

#include <bit>

#include <dcalc/dcalc.hpp>

#include "support/term_gen.hpp"

using namespace dcalc;

TEST(Extend, IsSimultaneous) {
    const VarMap swap{{mk_var(0), var(1)}, {mk_var(1), var(0)}};
    EXPECT_EQ(to_string(extend(swap, parse("x0 - x1"))), "x1 - x0");
}

TEST(Extend, UnmappedVariablesStay) {
    const VarMap phi{{mk_var(0), parse("sin(x2)")}};
    EXPECT_EQ(to_string(extend(phi, parse("x0*dx0 + x1"))), "sin(x2)*dx0 + x1");
}

TEST(Pushforward, SubstitutionLemmaIsBitwise) {
    dcalc::testing::AnyGen gen(8);
    int checked = 0;
    for (int i = 0; i < 300; ++i) {
        const Term t = gen(4);
        VarMap phi0;
        for (const auto& v : free_vars(t)) phi0.set(v, gen(2));
        std::set<Variable> vars = free_vars(t);
        for (const auto& [v, img] : phi0.entries()) vars.merge(free_vars(img));
        const Assignment s = dcalc::testing::random_assignment(gen.rng(), vars);
        double a = 0, b = 0;
        try {
            a = interpret(extend(phi0, t), s);
            b = interpret(t, pushforward(phi0, s, free_vars(t)));
        } catch (const DomainError&) {
            continue;
        }
        ++checked;
        EXPECT_EQ(std::bit_cast<std::uint64_t>(a), std::bit_cast<std::uint64_t>(b)) << to_string(t);
    }
    EXPECT_GT(checked, 100);
}

TEST(SubstDiff, ReplacesEveryDifferentialOrder) {
    const Term t = parse("x0 + dx0 + d^2 x0");
    const Term got = subst_diff(t, mk_var(0), parse("x1^2"));
    EXPECT_TRUE(semantic_equiv(got, parse("x1^2 + 2*x1*dx1 + 2*dx1*dx1 + 2*x1*d^2 x1")).equivalent());
}

TEST(SubstDiff, Guards) {
    EXPECT_THROW(subst_diff(parse("x0"), mk_var(0, 1), parse("x1")), OrderNotZero);
    const Term t = parse("sin(x1)");
    EXPECT_EQ(subst_diff(t, mk_var(0), parse("abs(x2)")), t);
    EXPECT_THROW(subst_diff(parse("dx0"), mk_var(0), parse("abs(x2)")), NotDifferentiable);
}

TEST(RespectsD, DifferentialSubstitutionRespectsD) {
    const VarMap phi = differential_substitution(mk_var(0), parse("exp(x1)*x2"), 3);
    const std::set<Variable> vars{mk_var(0), mk_var(0, 1), mk_var(0, 2)};
    EXPECT_TRUE(respects_d(phi, vars).verdict.equivalent());
}

TEST(RespectsD, NaiveSubstitutionDoesNot) {
    const VarMap naive{{mk_var(0), parse("x1^2")}};
    const auto report = respects_d(naive, {mk_var(0)});
    EXPECT_FALSE(report.verdict.equivalent());
    ASSERT_TRUE(report.failing.has_value());
    EXPECT_EQ(*report.failing, mk_var(0));
}

TEST(ChainRule, HoldsOnRandomSmoothPairs) {
    dcalc::testing::SmoothGen gen({mk_var(0), mk_var(1)}, 77);
    for (int i = 0; i < 15; ++i) {
        const Term t = gen(3), u = gen(3);
        for (std::size_t k = 1; k <= 3; ++k)
            EXPECT_TRUE(check_chain_rule(t, mk_var(0), u, k, {.samples = 100, .tolerance = 1e-7}).equivalent())
                << "k=" << k << " T=" << to_string(t) << " U=" << to_string(u);
    }
}

TEST(ChainRule, NaiveSubstitutionBreaksIt) {
    // Replacing x0 alone, without d x0, is what the chain rule forbids.
    const Term t = parse("exp(x0)");
    const Term u = parse("x1^2");
    const VarMap naive{{mk_var(0), u}};
    const Term lhs = iterated_differential(extend(naive, t), 2);
    const Term rhs = extend(naive, iterated_differential(t, 2));
    EXPECT_FALSE(semantic_equiv(lhs, rhs).equivalent());
    EXPECT_TRUE(check_chain_rule(t, mk_var(0), u, 2).equivalent());
}
