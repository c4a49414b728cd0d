#pragma once

#include "ech.hpp"
#include "ellipsoid.hpp"
#include "rules.hpp"

#include <optional>

namespace ellipack {

struct Witness {
    std::size_t k = 0;
    Rat lhs;  // N(a,b)(k)
    Rat rhs;  // N(c,d)(k)
};

struct Decision {
    enum class Outcome { embeds, obstructed, verified_up_to };

    Outcome outcome = Outcome::verified_up_to;
    std::optional<Justification> justification;
    std::optional<Rat> cutoff;
    std::size_t verified_terms = 0;
    std::optional<Witness> witness;
};

inline const char* to_string(Decision::Outcome o) {
    switch (o) {
    case Decision::Outcome::embeds: return "Embeds";
    case Decision::Outcome::obstructed: return "Obstructed";
    case Decision::Outcome::verified_up_to: return "VerifiedUpTo";
    }
    return "?";
}

struct DecideOptions {
    std::size_t max_terms = 100000;
    Precision precision = Precision::from_env();
};

namespace detail {

inline std::pair<Rat, Rat> sorted_pair(const Rat& x, const Rat& y) { return y < x ? std::pair{y, x} : std::pair{x, y}; }

} // namespace detail

/// A rational Y0 with parabola_lower(a,b,y) >= parabola_upper(c,d,y) for all
/// y >= Y0, or nullopt when the quadratic
///   Q(y) = (1/2ab - 1/2cd) y^2 + (1/2a - 1/2c - 1/d) y - (d/8c + 1)
/// is not eventually nonnegative.
inline std::optional<Rat> cutoff_y0(const Rat& a0, const Rat& b0, const Rat& c0, const Rat& d0) {
    auto [a, b] = detail::sorted_pair(a0, b0);
    auto [c, d] = detail::sorted_pair(c0, d0);
    if (a.is_zero() || c.is_zero()) throw error(errc::invalid_argument, "factors must be positive");
    const mpq_class A = 1 / (2 * a.q() * b.q()) - 1 / (2 * c.q() * d.q());
    const mpq_class B = 1 / (2 * a.q()) - 1 / (2 * c.q()) - 1 / d.q();
    const mpq_class C = -(d.q() / (8 * c.q()) + 1);
    auto Q = [&](const mpq_class& y) { return mpq_class(A * y * y + B * y + C); };

    if (sgn(A) > 0) {
        // Larger root (-B + sqrt(B^2 - 4AC)) / 2A, with the square root rounded up.
        const mpq_class disc = B * B - 4 * A * C;
        const Rat s = detail::root_up(Rat(disc), 2, 32);
        mpq_class y = (-B + s.q()) / (2 * A);
        if (sgn(y) < 0) y = 0;
        Rat y0 = detail::round_up(Rat(y), 8);
        if (sgn(Q(y0.q())) < 0) throw error(errc::invalid_argument, "cutoff rounding failed");
        return y0;
    }
    if (sgn(A) == 0 && sgn(B) > 0) {
        mpq_class y = -C / B;
        return Rat(y);
    }
    return std::nullopt;
}

namespace detail {

// First k < count with N(a,b)(k) > N(c,d)(k).
inline std::optional<Witness> first_violation(const Rat& a, const Rat& b, const Rat& c, const Rat& d, std::size_t count) {
    CapSeq dom(a, b), tgt(c, d);
    dom.extend(count);
    tgt.extend(count);
    for (std::size_t k = 0; k < count; ++k)
        if (tgt.values()[k] < dom.values()[k]) return Witness{k, dom.values()[k], tgt.values()[k]};
    return std::nullopt;
}

inline Justification termwise_justification(const Rat& a, const Rat& b, const Rat& c, const Rat& d, const Rat& y0,
                                            std::size_t terms, const Precision& prec) {
    Justification j;
    j.rule = Rule::termwise_with_cutoff;
    j.params = {{"cutoff", Surd(y0)}, {"terms", Surd(Rat(terms))}};
    j.checks.push_back(certify("ab <= cd", Surd(a * b), CmpOp::le, Surd(c * d), prec));
    j.checks.push_back(certify("lower(a,b,Y0) >= upper(c,d,Y0)", Surd(parabola_lower(a, b, y0)), CmpOp::ge,
                               Surd(parabola_upper(c, d, y0)), prec));
    if (a * b == c * d)
        j.checks.push_back(certify("1/2a > 1/2c + 1/d", Surd(Rat(1) / (Rat(2) * a)), CmpOp::gt,
                                   Surd(Rat(1) / (Rat(2) * c) + Rat(1) / d), prec));
    return j;
}

} // namespace detail

/// Decide E(a,b) -> E(c,d).
///
/// For rational factors the termwise criterion N(a,b)(k) <= N(c,d)(k) is made
/// finite by the parabola cutoff: any violation has N(c,d)(k) < Y0, so only the
/// first R(c,d)(Y0) terms need comparing. That exact path runs first whenever
/// its term count fits in max_terms. Otherwise the closed-form rules are tried,
/// and failing those the comparison stops at max_terms with VerifiedUpTo unless
/// a violation shows up.
inline Decision decide(const Ellipsoid& domain, const Ellipsoid& target, const DecideOptions& opt = {}) {
    if (domain.dim_half() != 2 || target.dim_half() != 2)
        throw error(errc::invalid_argument, "decide works on 4-dimensional ellipsoids");
    if (opt.max_terms == 0) throw error(errc::invalid_argument, "max terms must be positive");
    const auto& prec = opt.precision;
    const Surd &a = domain[0], &b = domain[1], &c = target[0], &d = target[1];
    const bool rational = domain.all_rational() && target.all_rational();

    Decision out;
    auto compare_terms = [&](std::size_t count) {
        if (auto w = detail::first_violation(a.coef(), b.coef(), c.coef(), d.coef(), count)) {
            out.outcome = Decision::Outcome::obstructed;
            out.verified_terms = w->k;
            out.witness = *w;
            return true;
        }
        return false;
    };

    std::optional<Rat> y0;
    if (rational) y0 = cutoff_y0(a.coef(), b.coef(), c.coef(), d.coef());
    // Each row p <= Y0/d contributes at least one term, so this skips hopeless counts cheaply.
    if (y0 && (*y0 / d.coef()).floor() < opt.max_terms) {
        const std::uint64_t terms = lattice_count(c.coef(), d.coef(), *y0);
        if (terms <= opt.max_terms) {
            out.cutoff = *y0;
            out.verified_terms = terms;
            if (!compare_terms(terms)) {
                out.outcome = Decision::Outcome::embeds;
                out.justification = detail::termwise_justification(a.coef(), b.coef(), c.coef(), d.coef(), *y0,
                                                                   terms, prec);
            }
            return out;
        }
    }

    for (Rule r : {Rule::inclusion, Rule::theorem_one_emb, Rule::theorem_one, Rule::corollary_onecor, Rule::ms_threshold}) {
        Justification j = justify4(r, a, b, c, d, prec);
        if (j.ok()) return Decision{Decision::Outcome::embeds, std::move(j), std::nullopt, 0, std::nullopt};
    }
    if (!rational) return out;

    if (!compare_terms(opt.max_terms)) {
        out.outcome = Decision::Outcome::verified_up_to;
        out.verified_terms = opt.max_terms;
    }
    return out;
}

/// Recheck a decision from its recorded parameters alone.
inline bool reverify(const Decision& dec, const Ellipsoid& domain, const Ellipsoid& target,
                     const Precision& prec = Precision::from_env()) {
    const Surd &a = domain[0], &b = domain[1], &c = target[0], &d = target[1];
    switch (dec.outcome) {
    case Decision::Outcome::obstructed: {
        if (!dec.witness || !domain.all_rational() || !target.all_rational()) return false;
        const auto& w = *dec.witness;
        CapSeq dom(a.coef(), b.coef()), tgt(c.coef(), d.coef());
        return dom[w.k] == w.lhs && tgt[w.k] == w.rhs && w.rhs < w.lhs;
    }
    case Decision::Outcome::embeds: {
        if (!dec.justification) return false;
        if (dec.justification->rule != Rule::termwise_with_cutoff)
            return justify4(dec.justification->rule, a, b, c, d, prec).ok();
        if (!dec.cutoff) return false;
        const Rat y0 = *dec.cutoff;
        const Rat ra = a.coef(), rb = b.coef(), rc = c.coef(), rd = d.coef();
        if (!detail::termwise_justification(ra, rb, rc, rd, y0, dec.verified_terms, prec).ok()) return false;
        // Q(y) >= 0 for every y >= Y0 needs a nonnegative leading or linear coefficient.
        const std::size_t terms = lattice_count(rc, rd, y0);
        return terms == dec.verified_terms && !detail::first_violation(ra, rb, rc, rd, terms);
    }
    case Decision::Outcome::verified_up_to:
        if (!domain.all_rational() || !target.all_rational()) return dec.verified_terms == 0;
        return !detail::first_violation(a.coef(), b.coef(), c.coef(), d.coef(), dec.verified_terms);
    }
    return false;
}

} // namespace ellipack
