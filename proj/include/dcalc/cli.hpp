#pragma once

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ast_json.hpp"
#include "derivative.hpp"
#include "expansion.hpp"
#include "faa_di_bruno.hpp"
#include "finite_calculus.hpp"
#include "parser.hpp"
#include "printer.hpp"
#include "semantics.hpp"
#include "substitution.hpp"

namespace dcalc::cli {

enum ExitCode : int { ok = 0, check_failed = 1, usage_error = 2 };

namespace detail {

/// Expanded form when the term is polynomial in its differentials, the term
/// itself otherwise.
inline std::string render(const Term& t) {
    try {
        return to_string(expand(t).to_term());
    } catch (const NotPolynomialInDifferentials&) {
        return to_string(simplify(t));
    }
}

inline std::string describe(const Assignment& s) {
    std::string out;
    for (const auto& [v, r] : s.bindings()) {
        if (!out.empty()) out += ", ";
        out += to_string(v) + "=" + format_number(r);
    }
    return out;
}

inline int report(const Verdict& v, std::ostream& out) {
    switch (v.kind) {
    case Verdict::Kind::equivalent:
        out << "equivalent (" << v.samples << " samples)\n";
        return ok;
    case Verdict::Kind::counterexample:
        out << "counterexample: " << describe(v.witness->assignment) << " gives " << format_number(v.witness->lhs)
            << " vs " << format_number(v.witness->rhs) << "\n";
        return check_failed;
    case Verdict::Kind::inconclusive:
        out << "inconclusive: " << v.domain_failures << " samples hit domain errors\n";
        return check_failed;
    }
    return check_failed;
}

} // namespace detail

/// Runs one command line (without the program name). Results go to `out`,
/// diagnostics to `err`; the return value is the process exit status.
inline int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Formal differentials, differential-respecting substitution and the iterated chain rule"};
    app.name("dcalc");
    app.require_subcommand(1);

    int status = ok;
    std::string expr, expr2, var_text, u_text, mono_text, f_text, g_text, t_text;
    std::size_t k = 1, coeff_k = 0;
    bool as_json = false, raw = false;
    EquivConfig cfg;
    std::vector<double> range;
    std::vector<std::int64_t> grid;
    unsigned n = 1;

    auto* parse_cmd = app.add_subcommand("parse", "Parse and pretty-print an expression");
    parse_cmd->add_option("expr", expr)->required();
    parse_cmd->add_flag("--json", as_json, "Emit the JSON AST");

    auto* d_cmd = app.add_subcommand("d", "Iterated total differential d^k");
    d_cmd->add_option("expr", expr)->required();
    d_cmd->add_option("-k", k, "Number of differentials")->capture_default_str();
    d_cmd->add_flag("--raw", raw, "Print without expanding");

    auto* partial_cmd = app.add_subcommand("partial", "Partial derivative with respect to a variable");
    partial_cmd->add_option("-w", var_text, "Variable")->required();
    partial_cmd->add_option("expr", expr)->required();

    auto* subst_cmd = app.add_subcommand("subst", "Substitute U for v, d^k U for d^k v");
    subst_cmd->add_option("-v", var_text, "Precalculus variable")->required();
    subst_cmd->add_option("-u", u_text, "Replacement term")->required();
    subst_cmd->add_option("expr", expr)->required();

    auto* coeff_cmd = app.add_subcommand("coeff", "Coefficient of a differential monomial");
    coeff_cmd->add_option("-m", mono_text, "Monomial, e.g. \"dx0 dx0\"")->required();
    coeff_cmd->add_option("-k", coeff_k, "Differentiate k times first")->capture_default_str();
    coeff_cmd->add_option("expr", expr)->required();

    auto* expand_cmd = app.add_subcommand("expand", "Normal form as a polynomial in differentials");
    expand_cmd->add_option("expr", expr)->required();

    auto* equiv_cmd = app.add_subcommand("equiv", "Sampled semantic equivalence");
    equiv_cmd->add_option("lhs", expr)->required();
    equiv_cmd->add_option("rhs", expr2)->required();
    auto add_sampling = [&](CLI::App* cmd) {
        cmd->add_option("--samples", cfg.samples)->capture_default_str();
        cmd->add_option("--tol", cfg.tolerance)->capture_default_str();
        cmd->add_option("--range", range, "LO HI")->expected(2);
        cmd->add_option("--seed", cfg.seed)->capture_default_str();
    };
    add_sampling(equiv_cmd);

    auto* faa_cmd = app.add_subcommand("faa", "n-th derivative of f(g(x0)) by Faa di Bruno's formula");
    faa_cmd->add_option("-n", n)->required();
    faa_cmd->add_option("-f", f_text, "Outer unary function")->default_val("f");
    faa_cmd->add_option("-g", g_text, "Inner unary function")->default_val("g");

    auto* delta_cmd = app.add_subcommand("delta", "Forward difference with a formal Dx");
    delta_cmd->add_option("-x", var_text, "Variable")->required();
    delta_cmd->add_option("expr", expr)->required();

    auto* dchain_cmd = app.add_subcommand("delta-chain", "Check the finite-difference chain rule on a grid");
    dchain_cmd->add_option("-f", f_text, "Outer term in x")->required();
    dchain_cmd->add_option("-g", g_text, "Inner term in x")->required();
    dchain_cmd->add_option("-x", var_text, "Variable")->default_val("x0");
    dchain_cmd->add_option("--grid", grid, "LO HI")->expected(2)->required();

    auto* chain_cmd = app.add_subcommand("check-chain", "Check d^k(T[v|U]) = (d^k T)[v|U]");
    chain_cmd->add_option("-T", t_text, "Term T")->required();
    chain_cmd->add_option("-v", var_text, "Precalculus variable")->required();
    chain_cmd->add_option("-u", u_text, "Replacement term U")->required();
    chain_cmd->add_option("-k", k, "Differential level")->capture_default_str();
    add_sampling(chain_cmd);

    try {
        std::vector<std::string> reversed(argv.rbegin(), argv.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "dcalc: " << e.what() << "\n";
        return usage_error;
    }

    try {
        if (range.size() == 2) {
            cfg.lo = range[0];
            cfg.hi = range[1];
        }
        if (*parse_cmd) {
            const Term t = parse(expr);
            if (as_json) out << to_json(t).dump() << "\n";
            else out << to_string(t) << "\n";
        } else if (*d_cmd) {
            const Term t = iterated_differential(parse(expr), k);
            out << (raw ? to_string(t) : detail::render(t)) << "\n";
        } else if (*partial_cmd) {
            out << to_string(simplify(partial(parse(expr), parse_variable(var_text)))) << "\n";
        } else if (*subst_cmd) {
            out << to_string(subst_diff(parse(expr), parse_variable(var_text), parse(u_text))) << "\n";
        } else if (*coeff_cmd) {
            const Term t = iterated_differential(parse(expr), coeff_k);
            out << to_string(coefficient(t, parse_monomial(mono_text))) << "\n";
        } else if (*expand_cmd) {
            out << to_string(expand(parse(expr)).to_term()) << "\n";
        } else if (*equiv_cmd) {
            status = detail::report(semantic_equiv(parse(expr), parse(expr2), cfg), out);
        } else if (*faa_cmd) {
            out << to_string(faa_nth_derivative(unary_symbol(f_text), unary_symbol(g_text), n)) << "\n";
        } else if (*delta_cmd) {
            out << to_string(delta(DeltaTerm(parse(expr)), parse_variable(var_text)).term()) << "\n";
        } else if (*dchain_cmd) {
            const auto rep = check_delta_chain_rule(DeltaTerm(parse(f_text)), parse_variable(var_text),
                                                    DeltaTerm(parse(g_text)), integer_grid(grid[0], grid[1]));
            if (rep.agree) {
                out << "agree on " << (grid[1] - grid[0] + 1) << " grid points\n";
            } else {
                out << "mismatch at " << rep.mismatch->point << ": " << format_number(rep.mismatch->lhs) << " vs "
                    << format_number(rep.mismatch->rhs) << "\n";
                status = check_failed;
            }
        } else if (*chain_cmd) {
            status = detail::report(
                check_chain_rule(parse(t_text), parse_variable(var_text), parse(u_text), k, cfg), out);
        }
    } catch (const std::exception& e) {
        err << "dcalc: " << e.what() << "\n";
        return usage_error;
    }
    return status;
}

} // namespace dcalc::cli
