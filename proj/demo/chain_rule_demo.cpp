// Second derivative of exp(x^2) by differentiating exp(x) twice and then
// substituting x^2 for x (and d(x^2), dd(x^2) for dx, ddx).

#include <iostream>

#include <dcalc/dcalc.hpp>

int main() {
    using namespace dcalc;
    const Variable x = mk_var(0);

    const Term dd_exp = iterated_differential(exp(var(x)), 2);
    std::cout << "d^2 exp(x0)          = " << to_string(expand(dd_exp).to_term()) << "\n";

    const Term substituted = subst_diff(dd_exp, x, pow_const(var(x), 2));
    const DiffPolynomial poly = expand(substituted);
    std::cout << "(d^2 exp(x0))[x0|x0^2] = " << to_string(poly.to_term()) << "\n";

    const Term second = poly.coefficient(DiffMonomial::power(d_var(x), 2));
    std::cout << "(exp(x0^2))''         = " << to_string(second) << "\n";

    const Verdict v = check_chain_rule(exp(var(x)), x, pow_const(var(x), 2), 2);
    std::cout << "chain rule check      : " << (v.equivalent() ? "equivalent" : "FAILED") << "\n";
    return v.equivalent() ? 0 : 1;
}
