#pragma once

#include "ellipsoid.hpp"
#include "rules.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ellipack {

/// A 4-dimensional embedding E(a,b) -> E(c,d) applied to factors i, j of an
/// ellipsoid, leaving the other factors alone.
struct Suspension {
    std::size_t i = 0, j = 0;
    Surd a, b, c, d;
    Justification inner;
};

struct EmbeddingStep {
    Ellipsoid source;
    std::size_t copies = 1;  // disjoint copies of source
    Ellipsoid target;
    Justification justification;  // Suspension, Inclusion or AxiomFullFill
    std::optional<Suspension> suspension;
};

struct Certificate {
    Ellipsoid source;
    std::size_t source_copies = 1;
    Ellipsoid target;
    std::vector<EmbeddingStep> steps;

    void append(const Certificate& tail) {
        if (steps.empty()) {
            source = tail.source;
            source_copies = tail.source_copies;
        }
        steps.insert(steps.end(), tail.steps.begin(), tail.steps.end());
        target = tail.target;
    }
};

namespace detail {

inline Surd product(const Ellipsoid& e) { return e.volume_product(); }

inline bool is_ball(const Ellipsoid& e) {
    for (std::size_t i = 1; i < e.dim_half(); ++i)
        if (!equal(e[i], e[0])) return false;
    return true;
}

} // namespace detail

/// Step-level checks, rebuilt from the step's own data.
inline std::vector<Check> step_checks(const EmbeddingStep& s, const Precision& prec = Precision::from_env()) {
    std::vector<Check> out;
    const Surd vs = detail::product(s.source) * Surd(Rat(s.copies)), vt = detail::product(s.target);
    switch (s.justification.rule) {
    case Rule::suspension: {
        const auto& p = *s.suspension;
        const bool preserving = p.inner.rule != Rule::inclusion;
        out.push_back(certify(preserving ? "vol(source) = vol(target)" : "vol(source) <= vol(target)", vs,
                              preserving ? CmpOp::eq : CmpOp::le, vt, prec));
        break;
    }
    case Rule::inclusion:
        for (std::size_t k = 0; k < s.source.dim_half() && k < s.target.dim_half(); ++k)
            out.push_back(certify("a_" + std::to_string(k + 1) + " <= b_" + std::to_string(k + 1), s.source[k],
                                  CmpOp::le, s.target[k], prec));
        break;
    case Rule::axiom_full_fill:
        out.push_back(certify("copies * vol(source) = vol(target)", vs, CmpOp::eq, vt, prec));
        break;
    default: break;
    }
    return out;
}

struct VerifyReport {
    std::vector<std::string> failures;
    std::size_t checks_run = 0;
    bool ok() const { return failures.empty(); }
};

namespace detail {

inline std::optional<Ellipsoid> suspended_target(const Ellipsoid& src, const Suspension& p) {
    if (p.i == p.j || p.i >= src.dim_half() || p.j >= src.dim_half()) return std::nullopt;
    std::vector<Surd> f;
    for (std::size_t k = 0; k < src.dim_half(); ++k)
        if (k != p.i && k != p.j) f.push_back(src[k]);
    f.push_back(p.c);
    f.push_back(p.d);
    return Ellipsoid(std::move(f));
}

inline bool axiom_shape(const EmbeddingStep& s) {
    const auto& src = s.source;
    const auto& tgt = s.target;
    const std::size_t n = src.dim_half();
    if (tgt.dim_half() != n) return false;
    const Surd k(Rat(s.copies));
    // k copies of E(a_1..a_n) fill E(a_1..a_{n-1}, k a_n); balls are the special case.
    std::vector<Surd> f(src.factors().begin(), src.factors().end() - 1);
    f.push_back(src.largest() * k);
    return equal(Ellipsoid(std::move(f)), tgt);
}

} // namespace detail

/// Re-derive every check of every step and the chaining, trusting nothing but
/// the factors, pair indices and rule names recorded in the certificate.
inline VerifyReport verify(const Certificate& cert, const Precision& prec = Precision::from_env()) {
    VerifyReport rep;
    auto fail = [&](std::size_t idx, const std::string& msg) {
        rep.failures.push_back("step " + std::to_string(idx) + ": " + msg);
    };
    if (cert.steps.empty()) {
        if (!equal(cert.source, cert.target) || cert.source_copies != 1)
            rep.failures.push_back("empty certificate with source != target");
        return rep;
    }
    if (!equal(cert.steps.front().source, cert.source) || cert.steps.front().copies != cert.source_copies)
        rep.failures.push_back("first step does not start at the certificate source");
    if (!equal(cert.steps.back().target, cert.target))
        rep.failures.push_back("last step does not end at the certificate target");

    for (std::size_t idx = 0; idx < cert.steps.size(); ++idx) {
        const auto& s = cert.steps[idx];
        if (idx > 0) {
            if (!equal(cert.steps[idx - 1].target, s.source)) fail(idx, "source differs from previous target");
            if (s.copies != 1) fail(idx, "disjoint union in the middle of a chain");
        }
        if (s.source.dim_half() != s.target.dim_half()) fail(idx, "dimension changes");

        // Recorded checks are re-certified as stated, then the rule's own checks are rebuilt.
        for (const auto& c : s.justification.checks) {
            ++rep.checks_run;
            auto again = certify(c.label, c.lhs, c.op, c.rhs, prec);
            if (!again.ok()) fail(idx, "recorded check " + c.label + " is " + to_string(again.result));
        }
        for (const auto& c : step_checks(s, prec)) {
            ++rep.checks_run;
            if (!c.ok()) fail(idx, c.label + " is " + to_string(c.result));
        }
        switch (s.justification.rule) {
        case Rule::suspension: {
            if (!s.suspension) {
                fail(idx, "suspension without pair data");
                break;
            }
            const auto& p = *s.suspension;
            auto expected = detail::suspended_target(s.source, p);
            if (!expected) {
                fail(idx, "bad pair indices");
                break;
            }
            if (!equal(s.source[p.i], p.a) || !equal(s.source[p.j], p.b))
                fail(idx, "pair does not match source factors");
            if (!equal(*expected, s.target)) fail(idx, "target is not the source with the pair replaced");
            if (compare(p.a, p.b, prec) > 0 || compare(p.c, p.d, prec) > 0) fail(idx, "pair factors out of order");
            auto inner = justify4(p.inner.rule, p.a, p.b, p.c, p.d, prec);
            for (const auto& c : inner.checks) {
                ++rep.checks_run;
                if (!c.ok()) fail(idx, std::string(to_string(p.inner.rule)) + ": " + c.label + " is " + to_string(c.result));
            }
            break;
        }
        case Rule::inclusion: break;
        case Rule::axiom_full_fill:
            if (s.justification.citation.empty()) fail(idx, "axiom step without citation");
            if (!detail::axiom_shape(s)) fail(idx, "axiom step is not a k-fold full filling E -> E(.., k a_n)");
            break;
        default: fail(idx, std::string("rule not allowed at step level: ") + to_string(s.justification.rule));
        }
    }
    return rep;
}

} // namespace ellipack
