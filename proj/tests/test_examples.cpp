// Worked examples, checked end to end through the public API.

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include <dcalc/dcalc.hpp>

#include "support/partition_oracle.hpp"

using namespace dcalc;

namespace {

std::string expanded(const Term& t) { return to_string(expand(t).to_term()); }

bool equiv(const Term& a, const Term& b) { return semantic_equiv(a, b).equivalent(); }

} // namespace

TEST(WorkedExamples, Variables) {
    EXPECT_NE(mk_var(1, 1), mk_var(2, 1));
    EXPECT_NE(mk_var(1, 1), mk_var(1, 2));
    EXPECT_EQ(to_string(mk_var(50, 4)), "d^4 x50");
    EXPECT_EQ(parse_variable("ddddx50"), mk_var(50, 4));
    EXPECT_EQ(d_var(mk_var(0, 1)), mk_var(0, 2));
}

TEST(WorkedExamples, FreeVariables) {
    EXPECT_TRUE(free_vars(constant(5)).empty());
    EXPECT_EQ(free_vars(var(2, 1)), std::set<Variable>{mk_var(2, 1)});
    EXPECT_EQ(free_vars(parse("x1*dx2")), (std::set<Variable>{mk_var(1), mk_var(2, 1)}));
}

TEST(WorkedExamples, Subterms) {
    EXPECT_EQ(subterms(var(0)), std::vector<Term>{var(0)});
    const Term t = parse("abs(x0)^2");
    EXPECT_EQ(subterms(t), (std::vector<Term>{t, parse("abs(x0)"), var(0)}));
    EXPECT_FALSE(is_strongly_differentiable(t));
}

TEST(WorkedExamples, Interpretation) {
    EXPECT_EQ(interpret(parse("exp(x0)"), Assignment{{mk_var(0), 5.0}}), std::exp(5.0));
    EXPECT_DOUBLE_EQ(interpret(parse("x0*dx0"), Assignment{{mk_var(0), 9.0}, {mk_var(0, 1), 0.1}}), 0.9);
    const Assignment s{{mk_var(0), 1.5}};
    EXPECT_TRUE(shift(s, mk_var(0), s(mk_var(0))).agrees_on(s, {mk_var(0), mk_var(1)}));
    EXPECT_TRUE(equiv(parse("sin(x0 + 2*pi)"), parse("sin(x0)")));
}

TEST(WorkedExamples, PartialDerivatives) {
    EXPECT_EQ(partial(var(0), mk_var(0)), constant(1));
    EXPECT_EQ(partial(var(0), mk_var(0, 1)), constant(0));
    EXPECT_TRUE(equiv(partial(parse("exp(x1*x2)*dx1"), mk_var(1)), parse("x2*exp(x1*x2)*dx1")));
    EXPECT_THROW(partial(parse("abs(x0)"), mk_var(0)), NotDifferentiable);
}

TEST(WorkedExamples, Differentials) {
    EXPECT_EQ(expanded(total_differential(parse("x1*dx2"))), "dx1*dx2 + x1*d^2 x2");
    EXPECT_EQ(expanded(total_differential(parse("x0*dx0"))), "dx0*dx0 + x0*d^2 x0");
    EXPECT_EQ(total_differential(constant(5)), constant(0));
    EXPECT_EQ(expanded(iterated_differential(parse("x0^2"), 2)), "2*dx0*dx0 + 2*x0*d^2 x0");
    EXPECT_EQ(expanded(iterated_differential(parse("exp(x0)"), 2)), "exp(x0)*dx0*dx0 + exp(x0)*d^2 x0");
}

TEST(WorkedExamples, ThirdDifferentialOfSine) {
    const Term d3 = iterated_differential(parse("sin(x0)"), 3);
    EXPECT_EQ(expanded(d3), "-cos(x0)*dx0*dx0*dx0 - 3*sin(x0)*dx0*d^2 x0 + cos(x0)*d^3 x0");

    // Σ over brute-force partitions of f^(|π|)(x) Π d^|B| x, with sin' = cos, sin'' = -sin, sin''' = -cos.
    const std::vector<Term> derivs{parse("sin(x0)"), parse("cos(x0)"), parse("-sin(x0)"), parse("-cos(x0)")};
    std::vector<Term> parts;
    for (const auto& pi : dcalc::testing::brute_force_partitions(3)) {
        Term acc = derivs[pi.size()];
        for (const auto& block : pi) acc = mul(acc, var(0, static_cast<std::uint32_t>(block.size())));
        parts.push_back(acc);
    }
    EXPECT_TRUE(equiv(d3, sum_of(parts)));
    EXPECT_TRUE(equiv(d3, total_differential(total_differential(total_differential(parse("sin(x0)"))))));
}

TEST(WorkedExamples, DifferentialRespectingSubstitution) {
    const Term dd = parse("exp(x0)*dx0*dx0 + exp(x0)*d^2 x0");
    const Term got = subst_diff(dd, mk_var(0), parse("x0^2"));
    const Term d1 = total_differential(parse("x0^2"));
    const Term d2 = total_differential(d1);
    EXPECT_TRUE(equiv(got, add(mul(mul(parse("exp(x0^2)"), d1), d1), mul(parse("exp(x0^2)"), d2))));
    EXPECT_TRUE(equiv(subst_diff(parse("dx0"), mk_var(0), parse("x0*x1")), parse("x1*dx0 + x0*dx1")));
}

TEST(WorkedExamples, ChainRule) {
    const Variable x = mk_var(0);
    ASSERT_TRUE(check_chain_rule(parse("exp(x0)"), x, parse("x0^2"), 2).equivalent());
    const Term lhs = iterated_differential(subst_diff(parse("exp(x0)"), x, parse("x0^2")), 2);
    const Term rhs = subst_diff(iterated_differential(parse("exp(x0)"), 2), x, parse("x0^2"));
    const DiffMonomial dxdx{d_var(x), d_var(x)};
    const Term closed = parse("(4*x0^2 + 2)*exp(x0^2)");
    EXPECT_TRUE(equiv(coefficient(lhs, dxdx), closed));
    EXPECT_TRUE(equiv(coefficient(rhs, dxdx), closed));
    EXPECT_TRUE(check_chain_rule(parse("sin(x0)"), x, parse("x0*x1"), 3).equivalent());
}

TEST(WorkedExamples, Expansion) {
    const DiffPolynomial p = expand(iterated_differential(parse("exp(x0)"), 2));
    ASSERT_EQ(p.rows.size(), 2u);
    EXPECT_EQ(p.coefficient(DiffMonomial{mk_var(0, 1), mk_var(0, 1)}), parse("exp(x0)"));
    EXPECT_EQ(p.coefficient(DiffMonomial{mk_var(0, 2)}), parse("exp(x0)"));

    const DiffPolynomial q = expand(iterated_differential(parse("f(x0)"), 3));
    ASSERT_EQ(q.rows.size(), 3u);
    EXPECT_EQ(q.coefficient(DiffMonomial::power(mk_var(0, 1), 3)), parse("f'''(x0)"));
    EXPECT_EQ(q.coefficient(DiffMonomial{mk_var(0, 1), mk_var(0, 2)}), parse("3*f''(x0)"));
    EXPECT_EQ(q.coefficient(DiffMonomial{mk_var(0, 3)}), parse("f'(x0)"));
}

TEST(WorkedExamples, PartitionTerms) {
    const SymbolRef e = unary_symbol("exp"), f = unary_symbol("f");
    const Variable x = mk_var(0);
    EXPECT_EQ(partitions(3).size(), 5u);
    EXPECT_EQ(partitions(5).size(), 52u);
    EXPECT_EQ(to_string(i_of_partition(e, x, Partition{{{1}, {2}}})), "exp(x0)*dx0*dx0");
    EXPECT_EQ(to_string(i_of_partition(e, x, Partition{{{1, 2}}})), "exp(x0)*d^2 x0");
    EXPECT_EQ(to_string(i_of_partition(f, x, Partition{{{1, 2, 3}}})), "f'(x0)*d^3 x0");
    EXPECT_EQ(expanded(partition_sum(e, x, 2)), "exp(x0)*dx0*dx0 + exp(x0)*d^2 x0");
    EXPECT_EQ(expanded(partition_sum(f, x, 2)), "f''(x0)*dx0*dx0 + f'(x0)*d^2 x0");
    EXPECT_EQ(expanded(partition_sum(f, x, 3)), "f'''(x0)*dx0*dx0*dx0 + 3*f''(x0)*dx0*d^2 x0 + f'(x0)*d^3 x0");
}

TEST(WorkedExamples, FaaDiBruno) {
    const Term t = faa_nth_derivative(unary_symbol("exp"), unary_symbol("square"), 2);
    EXPECT_TRUE(equiv(t, parse("(4*x0^2 + 2)*exp(x0^2)")));

    const Term s3 = faa_nth_derivative(unary_symbol("sin"), unary_symbol("square"), 3);
    auto sin_sq = [](double y) { return std::sin(y); };
    auto sq = [](double y) { return y * y; };
    for (double x = -1.35; x < 1.4; x += 0.3) {
        const double sym = interpret(s3, Assignment{{mk_var(0), x}});
        EXPECT_TRUE(close_enough(sym, fd_nth_composition(sin_sq, sq, 3, x), 1e-4, 1e-12)) << x;
    }
}

TEST(WorkedExamples, FiniteCalculus) {
    const Variable x = mk_var(0);
    const DeltaTerm dx = delta(DeltaTerm(var(x)), x);
    EXPECT_EQ(to_string(dx.term()), "x0 + Dx0 - x0");
    EXPECT_EQ(evaluate_at(dx, x, 3), 1.0);
    for (int i = -5; i <= 5; ++i) EXPECT_EQ(evaluate_at(delta(DeltaTerm(parse("x0^2")), x), x, i), 2 * i + 1);

    const DeltaTerm sub = delta_subst(DeltaTerm(parse("1/(1 + x0^2)")), x, DeltaTerm(parse("g(x0)")));
    EXPECT_EQ(sub.term(), parse("1/(1 + g(x0)^2)"));

    const auto grid = integer_grid(-3, 3);
    EXPECT_TRUE(check_delta_chain_rule(DeltaTerm(parse("x0^2")), x, DeltaTerm(parse("x0^3")), grid).agree);
    EXPECT_TRUE(check_delta_chain_rule(DeltaTerm(parse("1/(1 + x0^2)")), x, DeltaTerm(parse("x0 + 1")), grid).agree);
}

TEST(WorkedExamples, Oracle) {
    EXPECT_EQ(fd_partial(var(0), mk_var(0, 1), Assignment{{mk_var(0), 2.0}, {mk_var(0, 1), 3.0}}), 0.0);
    auto f = [](double y) { return std::exp(y); };
    auto g = [](double y) { return y * y; };
    EXPECT_TRUE(close_enough(fd_nth_composition(f, g, 2, 1.0), 6 * std::numbers::e, 1e-3, 0));
}

TEST(WorkedExamples, Syntax) {
    const Term t = parse("x0*dx1 + x1*dx0");
    EXPECT_EQ(t, add(mul(var(0), var(1, 1)), mul(var(1), var(0, 1))));
    EXPECT_EQ(to_string(t), "x0*dx1 + x1*dx0");
}
