#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "registry.hpp"
#include "term.hpp"

// JSON AST: {"kind":"const","value":v}
//           {"kind":"var","base":i,"order":n[,"family":"delta"]}
//           {"kind":"app","fn":name,"args":[...][,"exponent":k]}   (k for pow_const)

namespace dcalc {

inline nlohmann::json to_json(const Term& t) {
    using nlohmann::json;
    switch (t.kind()) {
    case Term::Kind::constant: return json{{"kind", "const"}, {"value", t.value()}};
    case Term::Kind::variable: {
        json j{{"kind", "var"}, {"base", t.var().base()}, {"order", t.var().order()}};
        if (t.var().is_difference()) j["family"] = "delta";
        return j;
    }
    case Term::Kind::application: break;
    }
    json args = json::array();
    for (const auto& a : t.args()) args.push_back(to_json(a));
    json j{{"kind", "app"}, {"fn", t.symbol().name}, {"args", std::move(args)}};
    if (t.symbol().notation == Notation::power_const) j["exponent"] = static_cast<unsigned>(t.symbol().parameter);
    return j;
}

inline Term from_json(const nlohmann::json& j, const Registry& reg = Registry::builtin()) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "const") return constant(j.at("value").get<double>());
    if (kind == "var") {
        const auto family = j.value("family", std::string("d")) == "delta" ? Family::difference : Family::differential;
        return Term::variable(Variable{j.at("base").get<std::uint32_t>(), j.at("order").get<std::uint32_t>(), family});
    }
    if (kind != "app") throw std::invalid_argument("unknown AST node kind '" + kind + "'");
    const std::string fn = j.at("fn").get<std::string>();
    std::vector<Term> args;
    for (const auto& a : j.at("args")) args.push_back(from_json(a, reg));
    if (fn == "pow_const") return Term::apply(symbols::pow_const(j.at("exponent").get<unsigned>()), std::move(args));
    auto s = reg.find(fn);
    if (!s) throw UnknownSymbol(fn);
    return Term::apply(std::move(s), std::move(args));
}

} // namespace dcalc
