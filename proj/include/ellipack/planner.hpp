#pragma once

#include "certificate.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace ellipack {

/// Thinness constant S for target factors b_1 <= ... <= b_n:
///   S^(1/(n-1)) = (2^(n+6)/3) 20^((n-2)/2) max_k 20^(k(k-1)/2) b_1...b_n / b_k^n,  k = 1..n.
inline Surd s_constant(const Ellipsoid& target, const Precision& prec = Precision::from_env()) {
    const std::size_t n = target.dim_half();
    if (n < 2) throw error(errc::invalid_argument, "S needs n >= 2");
    const Surd vol = target.volume_product();
    std::optional<Surd> best;
    for (std::size_t k = 1; k <= n; ++k) {
        Surd term = Surd(Rat(20).pow(k * (k - 1) / 2)) * vol / target[k - 1].pow(mpq_class(static_cast<long>(n)));
        if (!best || compare(term, *best, prec) > 0) best = term;
    }
    const Surd root = Surd(Rat(mpz_class(detail::pow2(n + 6)), 3)) *
                      Surd::power(Rat(20), mpq_class(static_cast<long>(n) - 2, 2)) * *best;
    return root.pow(mpq_class(static_cast<long>(n) - 1));
}

inline Surd s_constant(const std::vector<Rat>& b, const Precision& prec = Precision::from_env()) {
    std::vector<Surd> f(b.begin(), b.end());
    return s_constant(Ellipsoid(std::move(f), prec), prec);
}

namespace detail {

inline std::size_t index_of(const Ellipsoid& e, const Surd& v, std::optional<std::size_t> skip = std::nullopt) {
    for (std::size_t i = e.dim_half(); i-- > 0;)
        if (i != skip && equal(e[i], v)) return i;
    throw error(errc::invalid_argument, "factor " + v.to_string() + " not found in " + e.to_string());
}

inline std::string failing_checks(const Justification& j) {
    std::string s;
    for (const auto& c : j.checks)
        if (!c.ok()) s += (s.empty() ? "" : ", ") + c.label + " is " + to_string(c.result);
    return s;
}

} // namespace detail

/// Apply E(a,b) -> E(c,d) to the factors at positions i, j of `source`.
inline EmbeddingStep suspension_step(const Ellipsoid& source, std::size_t i, std::size_t j, const Surd& c,
                                     const Surd& d, Justification inner) {
    Suspension p{i, j, source[i], source[j], c, d, std::move(inner)};
    EmbeddingStep s;
    s.source = source;
    s.target = *detail::suspended_target(source, p);
    s.justification.rule = Rule::suspension;
    s.justification.params = {{"i", Surd(Rat(i))}, {"j", Surd(Rat(j))}};
    s.suspension = std::move(p);
    return s;
}

/// Make the consecutive ratios among the first n-1 factors smaller than 20,
/// keeping a_n and the product of the first n-1 factors fixed.
///
/// The smallest index with a_k / a_{k-1} >= 20 is replaced by (t, 16t/5) with
/// t = sqrt(5 a_{k-1} a_k / 16). A ratio of exactly 20 uses the non-strict
/// TheoremOneEmb, anything larger the strict TheoremOne.
inline std::pair<Ellipsoid, Certificate> rebalance(const Ellipsoid& e, const Precision& prec = Precision::from_env()) {
    const std::size_t n = e.dim_half();
    if (n < 2) throw error(errc::invalid_argument, "rebalance needs n >= 2");
    Certificate cert{e, 1, e, {}};
    Ellipsoid cur = e;
    const double spread = std::max(0.0, (e.largest() / e.smallest()).log2_approx());
    const std::size_t guard = static_cast<std::size_t>(std::ceil(spread / std::log2(2.5))) * n + 1;

    for (;;) {
        std::optional<std::size_t> hit;
        for (std::size_t k = 1; k + 1 < n && !hit; ++k)
            if (compare(cur[k], Surd(20) * cur[k - 1], prec) >= 0) hit = k;
        if (!hit) break;
        if (cert.steps.size() >= guard) throw error(errc::hypothesis_failure, "rebalance exceeded its step guard");

        const std::size_t k = *hit;
        const Surd &a = cur[k - 1], &b = cur[k];
        const Surd t = (Surd(Rat(5, 16)) * a * b).sqrt(), u = Surd(Rat(16, 5)) * t;
        const Rule r = compare(b, Surd(20) * a, prec) > 0 ? Rule::theorem_one : Rule::theorem_one_emb;
        Justification inner = justify4(r, a, b, t, u, prec);
        if (!inner.ok())
            throw error(errc::precision_exhausted, "rebalance step " + std::to_string(cert.steps.size()) + ": " +
                                                       detail::failing_checks(inner));
        EmbeddingStep s = suspension_step(cur, k - 1, k, t, u, std::move(inner));
        s.justification.checks.push_back(certify("16t/5 <= a_n", u, CmpOp::le, cur.largest(), prec));
        if (!s.justification.ok()) throw error(errc::precision_exhausted, "rebalance bound 16t/5 <= a_n not certified");
        cur = s.target;
        cert.steps.push_back(std::move(s));
    }
    cert.target = cur;
    return {cur, std::move(cert)};
}

struct ChainOptions {
    bool skip_thinness_gate = false;
    Precision precision = Precision::from_env();
};

/// Volume preserving chain E(a_1..a_n) -> E(b_1..b_n) for a thin enough domain:
/// rebalance, then for k = 1..n-1 send (a_k, a_{n,k-1}) to (b_k, a_k a_{n,k-1} / b_k).
inline Certificate general_chain(const Ellipsoid& domain, const Ellipsoid& target, const ChainOptions& opt = {}) {
    const auto& prec = opt.precision;
    const std::size_t n = domain.dim_half();
    if (target.dim_half() != n) throw error(errc::invalid_argument, "domain and target dimensions differ");
    if (n < 2) throw error(errc::invalid_argument, "chains need n >= 2");

    auto vol = certify("vol(domain) = vol(target)", domain.volume_product(), CmpOp::eq, target.volume_product(), prec);
    if (!vol.ok()) throw error(errc::hypothesis_failure, "volume: " + vol.label + " is " + to_string(vol.result));
    if (!opt.skip_thinness_gate) {
        auto thin = certify("a_n/a_1 > S", domain.largest() / domain.smallest(), CmpOp::gt, s_constant(target, prec), prec);
        if (!thin.ok()) throw error(errc::hypothesis_failure, "thinness: " + thin.label + " is " + to_string(thin.result));
    }

    auto [cur, cert] = rebalance(domain, prec);
    const Ellipsoid base = cur;  // the a_k of the induction
    Surd top = base.largest();   // a_{n,k-1}

    for (std::size_t k = 1; k < n; ++k) {
        const Surd &a = base[k - 1], &bk = target[k - 1];
        const std::size_t j = detail::index_of(cur, top);
        const std::size_t i = detail::index_of(cur, a, j);
        const Surd next = a * top / bk;
        const std::string where = "step " + std::to_string(k) + ": ";

        auto snd = certify("b_k > 2a_k", bk, CmpOp::gt, Surd(2) * a, prec);
        if (!snd.ok()) throw error(errc::hypothesis_failure, where + snd.label + " is " + to_string(snd.result));

        Justification inner = justify4(Rule::corollary_onecor, a, top, bk, next, prec);
        if (!inner.ok()) {
            // d = sqrt(ab) happens when b_k = b_n; the pair is then reached through TheoremOne.
            const bool flip = compare(next, bk, prec) < 0;
            Justification alt = justify4(Rule::theorem_one, a, top, flip ? next : bk, flip ? bk : next, prec);
            if (!alt.ok())
                throw error(errc::hypothesis_failure, where + "CorollaryOnecor: " + detail::failing_checks(inner) +
                                                          "; TheoremOne: " + detail::failing_checks(alt));
            inner = std::move(alt);
        }
        const bool ordered = compare(bk, next, prec) <= 0;
        EmbeddingStep s = suspension_step(cur, std::min(i, j), std::max(i, j), ordered ? bk : next,
                                          ordered ? next : bk, std::move(inner));
        s.justification.checks.push_back(std::move(snd));
        cur = s.target;
        top = next;
        cert.steps.push_back(std::move(s));
    }

    if (!equal(top, target.largest()) || !equal(cur, target))
        throw error(errc::hypothesis_failure, "final ellipsoid " + cur.to_string() + " differs from " + target.to_string());
    cert.source = domain;
    cert.target = target;
    return cert;
}

/// Chain for a_1...a_n <= b_1...b_n: an Inclusion step raises a_n until the
/// volumes agree, then general_chain.
inline Certificate main_chain(const Ellipsoid& domain, const Ellipsoid& target, const ChainOptions& opt = {}) {
    const auto& prec = opt.precision;
    const std::size_t n = domain.dim_half();
    if (target.dim_half() != n) throw error(errc::invalid_argument, "domain and target dimensions differ");
    const Surd vd = domain.volume_product(), vt = target.volume_product();
    const auto order = compare(vd, vt, prec);
    if (order > 0)
        throw error(errc::volume_obstruction, "vol " + vd.to_string() + " exceeds target vol " + vt.to_string());
    if (order == 0) return general_chain(domain, target, opt);

    if (!opt.skip_thinness_gate) {
        auto thin = certify("a_n/a_1 > S", domain.largest() / domain.smallest(), CmpOp::gt, s_constant(target, prec), prec);
        if (!thin.ok()) throw error(errc::hypothesis_failure, "thinness: " + thin.label + " is " + to_string(thin.result));
    }
    std::vector<Surd> f(domain.factors().begin(), domain.factors().end() - 1);
    f.push_back(vt / (vd / domain.largest()));
    EmbeddingStep inc;
    inc.source = domain;
    inc.target = Ellipsoid(std::move(f), prec);
    inc.justification.rule = Rule::inclusion;
    inc.justification.params = {{"a_n", inc.target.largest()}};
    inc.justification.checks = step_checks(inc, prec);

    Certificate cert{domain, 1, target, {inc}};
    ChainOptions rest = opt;
    rest.skip_thinness_gate = true;  // a_n only grew
    cert.append(general_chain(inc.target, target, rest));
    cert.source = domain;
    return cert;
}

/// k copies of E(a_1..a_n) fully fill E(a_1..a_{n-1}, k a_n).
inline EmbeddingStep pack_ellipsoids_step(const Ellipsoid& d, std::size_t k) {
    if (k == 0) throw error(errc::invalid_argument, "k must be >= 1");
    EmbeddingStep s;
    s.source = d;
    s.copies = k;
    std::vector<Surd> f(d.factors().begin(), d.factors().end() - 1);
    f.push_back(d.largest() * Surd(Rat(k)));
    s.target = Ellipsoid(std::move(f));
    s.justification.rule = Rule::axiom_full_fill;
    s.justification.params = {{"k", Surd(Rat(k))}};
    s.justification.citation = "full filling of E(a_1,...,a_{n-1},k a_n) by k copies of E(a_1,...,a_n)";
    return s;
}

/// k balls B(1) fully fill E(1,...,1,k).
inline EmbeddingStep pack_balls_step(std::size_t k, std::size_t n) {
    if (n < 2) throw error(errc::invalid_argument, "n must be >= 2");
    EmbeddingStep s = pack_ellipsoids_step(Ellipsoid::ball(Surd(1), n), k);
    s.justification.citation = "full filling of E(1,...,1,k) by k balls B(1)";
    return s;
}

inline Certificate single_step(EmbeddingStep s) {
    Certificate c{s.source, s.copies, s.target, {}};
    c.steps.push_back(std::move(s));
    return c;
}

} // namespace ellipack
