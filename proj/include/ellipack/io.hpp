#pragma once

#include "decide.hpp"
#include "stability.hpp"

#include <json.hpp>

#include <cctype>
#include <ostream>
#include <string>
#include <string_view>

namespace ellipack::io {

using json = nlohmann::ordered_json;

inline constexpr unsigned interval_bits = 64;

// Scalars: exact "p/q" when rational, else {"expr", "lo", "hi", "bits"} with a dyadic enclosure.

inline json interval_json(const std::string& expr, const XReal& v) {
    return json{{"expr", expr}, {"lo", v.lo().to_string()}, {"hi", v.hi().to_string()}, {"bits", v.bits()}};
}

inline json to_json(const Surd& s) {
    if (auto r = s.rational()) return r->to_string();
    return interval_json(s.to_string(), s.eval(interval_bits));
}

inline json to_json(const SurdSum& s) {
    if (auto one = s.as_surd()) return to_json(*one);
    return interval_json(s.to_string(), s.eval(interval_bits));
}

inline std::string scalar_text(const json& j) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_unsigned() || j.is_number_integer()) return j.dump();
    if (j.is_object() && j.contains("expr")) return j.at("expr").get<std::string>();
    throw error(errc::parse, "expected a scalar, got " + j.dump());
}

inline Surd surd_from_json(const json& j) { return Surd::parse(scalar_text(j)); }

inline SurdSum sum_from_json(const json& j) {
    const std::string text = scalar_text(j);
    SurdSum s;
    std::size_t start = 0;
    for (;;) {
        auto plus = text.find('+', start);
        s += Surd::parse(std::string_view(text).substr(start, plus - start));
        if (plus == std::string::npos) break;
        start = plus + 1;
    }
    return s;
}

/// "E(s1,...,sn)" or "B(s)" (= E(s,s)).
inline Ellipsoid parse_ellipsoid(std::string_view text) {
    std::string t;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t.size() < 4 || (t[0] != 'E' && t[0] != 'B') || t[1] != '(' || t.back() != ')')
        throw error(errc::parse, "expected E(s1,...,sn) or B(s), got '" + std::string(text) + "'");
    const std::string body = t.substr(2, t.size() - 3);
    std::vector<Surd> f;
    std::size_t start = 0;
    for (;;) {
        auto comma = body.find(',', start);
        f.push_back(Surd::parse(std::string_view(body).substr(start, comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (t[0] == 'B') {
        if (f.size() != 1) throw error(errc::parse, "B(s) takes one scalar");
        f.push_back(f.front());
    }
    return Ellipsoid(std::move(f));
}

inline json to_json(const Ellipsoid& e) {
    json a = json::array();
    for (const auto& f : e.factors()) a.push_back(to_json(f));
    return a;
}

inline Ellipsoid ellipsoid_from_json(const json& j) {
    if (j.is_string()) return parse_ellipsoid(j.get<std::string>());
    if (!j.is_array() || j.empty()) throw error(errc::parse, "expected an ellipsoid, got " + j.dump());
    std::vector<Surd> f;
    for (const auto& x : j) f.push_back(surd_from_json(x));
    return Ellipsoid(std::move(f));
}

inline json to_json(const Check& c) {
    json j{{"label", c.label}, {"lhs", to_json(c.lhs)}, {"op", to_string(c.op)}, {"rhs", to_json(c.rhs)},
           {"result", to_string(c.result)}};
    j["bits"] = c.bits;
    return j;
}

inline Cmp3 parse_cmp3(const std::string& s) {
    for (Cmp3 c : {Cmp3::certainly_true, Cmp3::certainly_false, Cmp3::unknown})
        if (s == to_string(c)) return c;
    throw error(errc::parse, "unknown check result '" + s + "'");
}

inline Check check_from_json(const json& j) {
    Check c;
    c.label = j.value("label", "");
    c.lhs = sum_from_json(j.at("lhs"));
    c.op = parse_cmp_op(j.at("op").get<std::string>());
    c.rhs = sum_from_json(j.at("rhs"));
    c.result = parse_cmp3(j.at("result").get<std::string>());
    c.bits = j.value("bits", 0u);
    return c;
}

inline json params_json(const Justification& jn) {
    json p = json::object();
    for (const auto& [name, v] : jn.params) p[name] = to_json(v);
    return p;
}

inline json checks_json(const std::vector<Check>& cs) {
    json a = json::array();
    for (const auto& c : cs) a.push_back(to_json(c));
    return a;
}

inline Justification justification_from_json(const json& j) {
    Justification jn;
    jn.rule = parse_rule(j.at("rule").get<std::string>());
    if (j.contains("params"))
        for (const auto& [k, v] : j.at("params").items()) jn.params.emplace_back(k, surd_from_json(v));
    if (j.contains("checks"))
        for (const auto& c : j.at("checks")) jn.checks.push_back(check_from_json(c));
    jn.citation = j.value("citation", "");
    return jn;
}

inline json to_json(const Decision& d) {
    json j;
    j["outcome"] = to_string(d.outcome);
    j["rule"] = d.justification ? json(to_string(d.justification->rule)) : json(nullptr);
    j["parameters"] = d.justification ? params_json(*d.justification) : json::object();
    j["checks"] = d.justification ? checks_json(d.justification->checks) : json::array();
    if (d.justification && !d.justification->citation.empty()) j["citation"] = d.justification->citation;
    j["cutoff"] = d.cutoff ? json(d.cutoff->to_string()) : json(nullptr);
    j["verified_terms"] = d.verified_terms;
    if (d.witness)
        j["witness"] = {{"k", d.witness->k}, {"lhs", d.witness->lhs.to_string()}, {"rhs", d.witness->rhs.to_string()}};
    else
        j["witness"] = nullptr;
    return j;
}

inline json to_json(const EmbeddingStep& s) {
    json j;
    j["rule"] = to_string(s.justification.rule);
    j["source"] = to_json(s.source);
    if (s.copies != 1) j["copies"] = s.copies;
    j["target"] = to_json(s.target);
    j["params"] = params_json(s.justification);
    if (s.suspension) {
        const auto& p = *s.suspension;
        j["pair"] = json::array({p.i, p.j});
        j["inner"] = {{"rule", to_string(p.inner.rule)},
                      {"from", json::array({to_json(p.a), to_json(p.b)})},
                      {"to", json::array({to_json(p.c), to_json(p.d)})},
                      {"params", params_json(p.inner)},
                      {"checks", checks_json(p.inner.checks)}};
        if (!p.inner.citation.empty()) j["inner"]["citation"] = p.inner.citation;
    } else {
        j["pair"] = nullptr;
    }
    j["checks"] = checks_json(s.justification.checks);
    if (!s.justification.citation.empty()) j["citation"] = s.justification.citation;
    return j;
}

inline EmbeddingStep step_from_json(const json& j) {
    EmbeddingStep s;
    s.source = ellipsoid_from_json(j.at("source"));
    s.target = ellipsoid_from_json(j.at("target"));
    s.copies = j.value("copies", std::size_t{1});
    s.justification = justification_from_json(j);
    if (j.contains("pair") && !j.at("pair").is_null()) {
        const auto& in = j.at("inner");
        Suspension p;
        p.i = j.at("pair").at(0).get<std::size_t>();
        p.j = j.at("pair").at(1).get<std::size_t>();
        p.a = surd_from_json(in.at("from").at(0));
        p.b = surd_from_json(in.at("from").at(1));
        p.c = surd_from_json(in.at("to").at(0));
        p.d = surd_from_json(in.at("to").at(1));
        p.inner = justification_from_json(in);
        s.suspension = std::move(p);
    }
    return s;
}

inline json to_json(const Certificate& c) {
    json j;
    j["source"] = to_json(c.source);
    if (c.source_copies != 1) j["source_copies"] = c.source_copies;
    j["target"] = to_json(c.target);
    j["steps"] = json::array();
    for (const auto& s : c.steps) j["steps"].push_back(to_json(s));
    return j;
}

inline Certificate certificate_from_json(const json& j) {
    try {
        Certificate c;
        c.source = ellipsoid_from_json(j.at("source"));
        c.source_copies = j.value("source_copies", std::size_t{1});
        c.target = ellipsoid_from_json(j.at("target"));
        for (const auto& s : j.at("steps")) c.steps.push_back(step_from_json(s));
        return c;
    } catch (const json::exception& e) {
        throw error(errc::parse, std::string("certificate: ") + e.what());
    }
}

inline json to_json(const VerifyReport& r) {
    return json{{"verified", r.ok()}, {"checks_run", r.checks_run}, {"failures", r.failures}};
}

inline json to_json(const StabReport& r) {
    json j;
    j["manifold"] = to_string(r.manifold);
    if (r.bound.fits_ulong_p())
        j["bound"] = r.bound.get_ui();
    else
        j["bound"] = r.bound.get_str();
    j["checks"] = checks_json(r.checks);
    if (r.chain) j["chain"] = to_json(*r.chain);
    return j;
}

/// [[lo, hi], ...] with rational strings or integers.
inline ExceptionTable exceptions_from_json(const json& j) {
    if (!j.is_array()) throw error(errc::parse, "exception table must be a list of [lo, hi] pairs");
    ExceptionTable t;
    for (const auto& e : j) {
        if (!e.is_array() || e.size() != 2) throw error(errc::parse, "exception entry must be [lo, hi]: " + e.dump());
        Rat lo = Rat::parse(scalar_text(e[0])), hi = Rat::parse(scalar_text(e[1]));
        if (hi < lo) throw error(errc::invalid_argument, "exception interval with hi < lo: " + e.dump());
        t.emplace_back(lo, hi);
    }
    return t;
}

inline void write_csv(std::ostream& os, const std::vector<Rat>& values) {
    os << "k,value_num,value_den\n";
    for (std::size_t k = 0; k < values.size(); ++k)
        os << k << ',' << values[k].num().get_str() << ',' << values[k].den().get_str() << '\n';
}

} // namespace ellipack::io
