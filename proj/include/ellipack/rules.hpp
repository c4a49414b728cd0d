#pragma once

#include "certify.hpp"

#include <string>
#include <utility>
#include <vector>

namespace ellipack {

enum class Rule {
    termwise_with_cutoff,
    inclusion,
    theorem_one,
    theorem_one_emb,
    corollary_onecor,
    ms_threshold,
    suspension,
    composition,
    axiom_full_fill,
};

inline const char* to_string(Rule r) {
    switch (r) {
    case Rule::termwise_with_cutoff: return "TermwiseWithCutoff";
    case Rule::inclusion: return "Inclusion";
    case Rule::theorem_one: return "TheoremOne";
    case Rule::theorem_one_emb: return "TheoremOneEmb";
    case Rule::corollary_onecor: return "CorollaryOnecor";
    case Rule::ms_threshold: return "MSThreshold";
    case Rule::suspension: return "Suspension";
    case Rule::composition: return "Composition";
    case Rule::axiom_full_fill: return "AxiomFullFill";
    }
    return "?";
}

inline Rule parse_rule(const std::string& s) {
    for (Rule r : {Rule::termwise_with_cutoff, Rule::inclusion, Rule::theorem_one, Rule::theorem_one_emb,
                   Rule::corollary_onecor, Rule::ms_threshold, Rule::suspension, Rule::composition,
                   Rule::axiom_full_fill})
        if (s == to_string(r)) return r;
    throw error(errc::parse, "unknown rule '" + s + "'");
}

/// Rule plus the parameters and certified checks that justify it. Every check
/// is re-derivable from the embedding's factors alone.
struct Justification {
    Rule rule = Rule::inclusion;
    std::vector<std::pair<std::string, Surd>> params;
    std::vector<Check> checks;
    std::string citation;

    bool ok() const {
        for (const auto& c : checks)
            if (!c.ok()) return false;
        return true;
    }
    Cmp3 status() const {
        Cmp3 s = Cmp3::certainly_true;
        for (const auto& c : checks) s = cmp3_and(s, c.result);
        return s;
    }
};

// m(x) = (5x+16)^2 / 16x, decreasing on [1, 16/5] and increasing after, m(16/5) = 20.

inline Rat m_of(const Rat& x) {
    if (x < Rat(1)) throw error(errc::invalid_argument, "m(x) needs x >= 1, got " + x.to_string());
    Rat t = Rat(5) * x + Rat(16);
    return t * t / (Rat(16) * x);
}

/// Expanded form 25x/16 + 10 + 16/x, exact for any Surd x >= 1.
inline SurdSum m_of(const Surd& x, const Precision& prec = Precision::from_env()) {
    if (compare(x, Surd(1), prec) < 0) throw error(errc::invalid_argument, "m(x) needs x >= 1, got " + x.to_string());
    return SurdSum(Surd(Rat(25, 16)) * x) + SurdSum(10) + SurdSum(Surd(16) / x);
}

inline XReal m_of(const XReal& x) {
    if (cmp(x, CmpOp::lt, XReal(Rat(1))) == Cmp3::certainly_true)
        throw error(errc::invalid_argument, "m(x) needs x >= 1");
    if (x.is_exact()) return XReal(m_of(x.value()));
    XReal t = XReal(Rat(5)) * x + XReal(Rat(16));
    return t * t / (XReal(Rat(16)) * x);
}

namespace detail {

inline Check chk(std::string label, const SurdSum& l, CmpOp op, const SurdSum& r, const Precision& prec) {
    return certify(std::move(label), l, op, r, prec);
}

} // namespace detail

/// Checks for a 4-dimensional rule E(a,b) -> E(c,d), with a <= b and c <= d.
/// Strictness follows each statement: TheoremOne and CorollaryOnecor are strict,
/// TheoremOneEmb and MSThreshold are not.
inline Justification justify4(Rule rule, const Surd& a, const Surd& b, const Surd& c, const Surd& d,
                              const Precision& prec = Precision::from_env()) {
    using detail::chk;
    Justification j;
    j.rule = rule;
    const Surd ab = a * b, cd = c * d;
    switch (rule) {
    case Rule::inclusion:
        j.checks.push_back(chk("a <= c", a, CmpOp::le, c, prec));
        j.checks.push_back(chk("b <= d", b, CmpOp::le, d, prec));
        break;
    case Rule::theorem_one: {
        const Surd ratio = b / a, x = d / c;
        j.params = {{"b/a", ratio}, {"d/c", x}};
        j.checks.push_back(chk("ab = cd", ab, CmpOp::eq, cd, prec));
        j.checks.push_back(chk("b/a > m(d/c)", ratio, CmpOp::gt, m_of(x, prec), prec));
        break;
    }
    case Rule::theorem_one_emb: {
        const Surd alpha = b / a, beta = d / c;
        j.params = {{"alpha", alpha}, {"beta", beta}, {"scale", c / a}};
        j.checks.push_back(chk("beta >= 1", beta, CmpOp::ge, Surd(1), prec));
        j.checks.push_back(chk("ab = cd", ab, CmpOp::eq, cd, prec));
        j.checks.push_back(chk("alpha >= m(beta)", alpha, CmpOp::ge, m_of(beta, prec), prec));
        break;
    }
    case Rule::corollary_onecor:
        j.params = {{"d", c}};
        j.checks.push_back(chk("ab = cd", ab, CmpOp::eq, cd, prec));
        j.checks.push_back(chk("b/a > 2^7/3", b / a, CmpOp::gt, Surd(Rat(128, 3)), prec));
        j.checks.push_back(chk("2a < d", Surd(2) * a, CmpOp::lt, c, prec));
        j.checks.push_back(chk("d < sqrt(ab)", c, CmpOp::lt, ab.sqrt(), prec));
        break;
    case Rule::ms_threshold: {
        const Surd alpha = b / a;
        j.params = {{"alpha", alpha}, {"t", c / ab.sqrt()}};
        j.checks.push_back(chk("target is a ball", c, CmpOp::eq, d, prec));
        j.checks.push_back(chk("alpha >= 8 1/36", alpha, CmpOp::ge, Surd(Rat(289, 36)), prec));
        j.checks.push_back(chk("c >= sqrt(ab)", c, CmpOp::ge, ab.sqrt(), prec));
        j.citation = "McDuff-Schlenk: E(1,alpha) -> B(sqrt(alpha)) for alpha >= 8 1/36";
        break;
    }
    default:
        throw error(errc::invalid_argument, std::string("not a 4-dimensional rule: ") + to_string(rule));
    }
    return j;
}

/// alpha >= (5 beta + 16)^2 / 16 beta, i.e. E(1,alpha) fully fills sqrt(alpha/beta) E(1,beta).
inline Cmp3 thm_oneemb_applies(const Surd& alpha, const Surd& beta, const Precision& prec = Precision::from_env()) {
    if (compare(beta, Surd(1), prec) < 0) throw error(errc::invalid_argument, "beta must be >= 1");
    return certify("alpha >= m(beta)", alpha, CmpOp::ge, m_of(beta, prec), prec).result;
}

/// b/a > 2^7/3 and 2a < d < sqrt(ab), giving E(a,b) -> E(d, ab/d).
inline Cmp3 cor_onecor_applies(const Surd& a, const Surd& b, const Surd& d, const Precision& prec = Precision::from_env()) {
    Cmp3 r = certify("", b / a, CmpOp::gt, Surd(Rat(128, 3)), prec).result;
    r = cmp3_and(r, certify("", Surd(2) * a, CmpOp::lt, d, prec).result);
    r = cmp3_and(r, certify("", d, CmpOp::lt, (a * b).sqrt(), prec).result);
    return r;
}

} // namespace ellipack
