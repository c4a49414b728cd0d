#pragma once

#include "planner.hpp"

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace ellipack {

struct CPn {
    std::size_t n;
};
struct Hnd {
    std::size_t n;
    std::size_t d;
};
struct GenericFilling {
    Ellipsoid filling;
};
using Manifold = std::variant<CPn, Hnd, GenericFilling>;

inline std::string to_string(const Manifold& m) {
    if (auto p = std::get_if<CPn>(&m)) return "CP^" + std::to_string(p->n);
    if (auto h = std::get_if<Hnd>(&m)) return "H^" + std::to_string(h->n) + "_" + std::to_string(h->d);
    return "filled by " + std::get<GenericFilling>(m).filling.to_string();
}

struct StabReport {
    Manifold manifold;
    mpz_class bound;
    std::vector<Check> checks;
    std::optional<Certificate> chain;

    bool ok() const {
        for (const auto& c : checks)
            if (!c.ok()) return false;
        return true;
    }
};

/// Closed intervals [lo, hi] of alpha on which E(1,alpha) -> B(sqrt(alpha)) is
/// not available, inside the range [64/9, 8] where it otherwise holds.
using ExceptionTable = std::vector<std::pair<Rat, Rat>>;

namespace detail {

inline Surd kpow(std::size_t k, long num, long den) { return Surd::power(Rat(k), mpq_class(num, den)); }

inline Surd kdpow(std::size_t k, long kn, std::size_t d, long dn, long den) {
    return kpow(k, kn, den) * Surd::power(Rat(d), mpq_class(dn, den));
}

inline void require(bool ok, errc code, const std::string& msg) {
    if (!ok) throw error(code, msg);
}

inline Cmp3 decided(const Check& c, const std::string& what) {
    if (c.result == Cmp3::unknown) throw error(errc::precision_exhausted, what + ": " + c.label);
    return c.result;
}

} // namespace detail

/// 25/16 k^(-2/n) + 10 k^(-(n-i)/n) + 16 k^(-2(n-i-1)/n); the chain step i needs this <= 1.
inline SurdSum kineq_lhs(std::size_t n, std::size_t i, std::size_t k) {
    detail::require(n >= 2 && k >= 1 && i + 2 <= n, errc::invalid_argument, "kineq needs n >= 2, k >= 1, i <= n-2");
    const long N = static_cast<long>(n), I = static_cast<long>(i);
    return SurdSum(Surd(Rat(25, 16)) * detail::kpow(k, -2, N)) + SurdSum(Surd(10) * detail::kpow(k, -(N - I), N)) +
           SurdSum(Surd(16) * detail::kpow(k, -2 * (N - I - 1), N));
}

/// 25/16 k^(-2/n) d^((i+2)/n) + 10 k^(-(n-i)/n) d^(-i/n) + 16 k^(-2(n-i-1)/n) d^(-2(i+1)/n).
inline SurdSum hnd_lhs(std::size_t n, std::size_t d, std::size_t i, std::size_t k) {
    detail::require(n >= 2 && d >= 1 && k >= 1 && i + 2 <= n, errc::invalid_argument,
                    "hypersurface condition needs n >= 2, d >= 1, k >= 1, i <= n-2");
    const long N = static_cast<long>(n), I = static_cast<long>(i);
    return SurdSum(Surd(Rat(25, 16)) * detail::kdpow(k, -2, d, I + 2, N)) +
           SurdSum(Surd(10) * detail::kdpow(k, -(N - I), d, -I, N)) +
           SurdSum(Surd(16) * detail::kdpow(k, -2 * (N - I - 1), d, -2 * (I + 1), N));
}

/// 25d/16 + 10 d^(-(n-2)/n) + 16 d^(-2(n-1)/n), the threshold for k^(2/n).
inline SurdSum hnd_threshold(std::size_t n, std::size_t d) {
    detail::require(n >= 2 && d >= 1, errc::invalid_argument, "need n >= 2, d >= 1");
    const long N = static_cast<long>(n);
    return SurdSum(Surd(Rat(25, 16) * Rat(d))) + SurdSum(Surd(10) * Surd::power(Rat(d), mpq_class(-(N - 2), N))) +
           SurdSum(Surd(16) * Surd::power(Rat(d), mpq_class(-2 * (N - 1), N)));
}

/// Checks behind N_stab(CP^n) <= k: the binding chain inequality at i = n-3
/// (n >= 3) and the ball threshold k^(2/n) >= 289/36.
inline std::vector<Check> cpn_checks(std::size_t n, std::size_t k, const Precision& prec = Precision::from_env()) {
    std::vector<Check> out;
    if (n >= 3) out.push_back(certify("kineq(i=" + std::to_string(n - 3) + ")", kineq_lhs(n, n - 3, k), CmpOp::le, 1, prec));
    out.push_back(certify("k^(2/n) >= 289/36", detail::kpow(k, 2, static_cast<long>(n)), CmpOp::ge,
                          Surd(Rat(289, 36)), prec));
    return out;
}

/// The i = n-2 hypersurface condition, equivalent to k^(2/n) >= threshold(n, d).
inline std::vector<Check> hnd_checks(std::size_t n, std::size_t d, std::size_t k,
                                     const Precision& prec = Precision::from_env()) {
    return {certify("condition(i=" + std::to_string(n - 2) + ")", hnd_lhs(n, d, n - 2, k), CmpOp::le, 1, prec)};
}

namespace detail {

/// Smallest integer k >= 1 with k^(2/n) >= x, certified on both sides.
inline mpz_class certified_ceiling(std::size_t n, const SurdSum& x, const Precision& prec) {
    const long N = static_cast<long>(n);
    auto meets = [&](const mpz_class& k) {
        if (k < 1) return false;
        auto c = certify("", Surd::power(Rat(k, 1), mpq_class(2, N)), CmpOp::ge, x, prec);
        return decided(c, "ceiling") == Cmp3::certainly_true;
    };
    // x^(n/2) from a coarse enclosure, then walk to the exact boundary.
    XReal v = x.eval(64);
    Rat hi = v.hi();
    Rat pw = hi.pow(n);
    mpz_class k = detail::root_up(pw, 2, 0).ceil();
    while (!meets(k)) ++k;
    while (meets(k - 1)) --k;
    return k;
}

} // namespace detail

/// N_stab(CP^n) <= ceil((289/36)^(n/2)) = ceil((17/6)^n).
///
/// With an exception table, smaller k are accepted while the chain inequality
/// holds and alpha = k^(2/n) lies in [64/9, 8] outside every listed interval.
inline StabReport nstab_cpn(std::size_t n, const std::optional<ExceptionTable>& exceptions = std::nullopt,
                            const Precision& prec = Precision::from_env()) {
    detail::require(n >= 2, errc::invalid_argument, "n must be >= 2");
    StabReport rep{CPn{n}, Rat(17, 6).pow(n).ceil(), {}, std::nullopt};
    rep.checks = cpn_checks(n, rep.bound.get_ui(), prec);
    if (!exceptions) return rep;

    for (const auto& [lo, hi] : *exceptions)
        detail::require(!(hi < lo), errc::invalid_argument, "exception interval with hi < lo");
    const long N = static_cast<long>(n);
    for (std::size_t k = rep.bound.get_ui() - 1; k >= 1; --k) {
        const Surd alpha = detail::kpow(k, 2, N);
        std::vector<Check> cs;
        if (n >= 3) cs.push_back(certify("kineq(i=" + std::to_string(n - 3) + ")", kineq_lhs(n, n - 3, k), CmpOp::le, 1, prec));
        cs.push_back(certify("k^(2/n) >= 64/9", alpha, CmpOp::ge, Surd(Rat(64, 9)), prec));
        cs.push_back(certify("k^(2/n) <= 8", alpha, CmpOp::le, Surd(8), prec));
        for (const auto& [lo, hi] : *exceptions) {
            auto below = certify("k^(2/n) < " + lo.to_string(), alpha, CmpOp::lt, Surd(lo), prec);
            cs.push_back(below.ok() ? below : certify("k^(2/n) > " + hi.to_string(), alpha, CmpOp::gt, Surd(hi), prec));
        }
        bool all = true;
        for (const auto& c : cs) all = all && detail::decided(c, "exception refinement") == Cmp3::certainly_true;
        if (!all) break;
        rep.bound = k;
        rep.checks = std::move(cs);
    }
    return rep;
}

/// N_stab(H^n_d) <= ceil((25d/16 + 10 d^(-(n-2)/n) + 16 d^(-2(n-1)/n))^(n/2)).
inline StabReport nstab_hnd(std::size_t n, std::size_t d, const Precision& prec = Precision::from_env()) {
    detail::require(n >= 2 && d >= 1, errc::invalid_argument, "need n >= 2 and d >= 1");
    StabReport rep{Hnd{n, d}, detail::certified_ceiling(n, hnd_threshold(n, d), prec), {}, std::nullopt};
    rep.checks = hnd_checks(n, d, rep.bound.get_ui(), prec);
    return rep;
}

namespace detail {

/// TheoremOne for E(a,b) -> E(c,d), or TheoremOneEmb when only equality holds.
inline Justification theorem_one_or_emb(const Surd& a, const Surd& b, const Surd& c, const Surd& d,
                                        const Precision& prec) {
    Justification j = justify4(Rule::theorem_one, a, b, c, d, prec);
    if (j.ok()) return j;
    Justification e = justify4(Rule::theorem_one_emb, a, b, c, d, prec);
    return e.ok() ? e : j;
}

} // namespace detail

/// E(1,...,1,k) -> B(k^(1/n)) in n-1 suspension steps; step i sends
/// (1, k^((n-i)/n)) to (k^(1/n), k^((n-i-1)/n)), the last one by the ball threshold.
inline Certificate cpn_chain(std::size_t n, std::size_t k, bool with_packing = false,
                             const Precision& prec = Precision::from_env()) {
    detail::require(n >= 2 && k >= 1, errc::invalid_argument, "need n >= 2 and k >= 1");
    const long N = static_cast<long>(n);
    const Surd alpha = detail::kpow(k, 2, N);
    auto thr = certify("k^(2/n) >= 289/36", alpha, CmpOp::ge, Surd(Rat(289, 36)), prec);
    if (!thr.ok()) throw error(errc::threshold_failure, thr.label + " is " + to_string(thr.result) + " at k = " + std::to_string(k));

    std::vector<Surd> f(n - 1, Surd(1));
    f.push_back(Surd(Rat(k)));
    Ellipsoid cur(std::move(f), prec);
    Certificate cert{cur, 1, cur, {}};
    const Surd r = detail::kpow(k, 1, N);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const Surd b = detail::kpow(k, N - static_cast<long>(i), N);
        const Surd d = detail::kpow(k, N - static_cast<long>(i) - 1, N);
        const bool last = i + 2 == n;
        Justification inner = last ? justify4(Rule::ms_threshold, Surd(1), b, r, d, prec)
                                   : detail::theorem_one_or_emb(Surd(1), b, r, d, prec);
        if (!inner.ok())
            throw error(last ? errc::threshold_failure : errc::hypothesis_failure,
                        "step " + std::to_string(i) + ": " + detail::failing_checks(inner));
        const std::size_t jb = detail::index_of(cur, b), ja = detail::index_of(cur, Surd(1), jb);
        EmbeddingStep s = suspension_step(cur, std::min(ja, jb), std::max(ja, jb), r, d, std::move(inner));
        if (!last) s.justification.checks.push_back(certify("kineq(i=" + std::to_string(i) + ")", kineq_lhs(n, i, k), CmpOp::le, 1, prec));
        cur = s.target;
        cert.steps.push_back(std::move(s));
    }
    cert.target = cur;
    if (with_packing) {
        Certificate full = single_step(pack_balls_step(k, n));
        full.append(cert);
        return full;
    }
    return cert;
}

/// E(1,...,1,k) -> (k/d)^(1/n) E(1,...,1,d); step i sends (1, k^((n-i)/n) d^(i/n))
/// to ((k/d)^(1/n), k^((n-i-1)/n) d^((i+1)/n)).
inline Certificate hnd_chain(std::size_t n, std::size_t d, std::size_t k, bool with_packing = false,
                             const Precision& prec = Precision::from_env()) {
    detail::require(n >= 2 && d >= 1 && k >= 1, errc::invalid_argument, "need n >= 2, d >= 1, k >= 1");
    const long N = static_cast<long>(n);
    auto binding = hnd_checks(n, d, k, prec).front();
    if (!binding.ok())
        throw error(errc::threshold_failure, binding.label + " is " + to_string(binding.result) + " at k = " + std::to_string(k));

    std::vector<Surd> f(n - 1, Surd(1));
    f.push_back(Surd(Rat(k)));
    Ellipsoid cur(std::move(f), prec);
    Certificate cert{cur, 1, cur, {}};
    const Surd r = detail::kdpow(k, 1, d, -1, N);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const long I = static_cast<long>(i);
        const Surd b = detail::kdpow(k, N - I, d, I, N);
        const Surd e = detail::kdpow(k, N - I - 1, d, I + 1, N);
        const bool ordered = compare(r, e, prec) <= 0;
        const Surd &lo = ordered ? r : e, &hi = ordered ? e : r;
        Justification inner = detail::theorem_one_or_emb(Surd(1), b, lo, hi, prec);
        if (!inner.ok())
            throw error(errc::threshold_failure, "step " + std::to_string(i) + ": " + detail::failing_checks(inner));
        const std::size_t jb = detail::index_of(cur, b), ja = detail::index_of(cur, Surd(1), jb);
        EmbeddingStep s = suspension_step(cur, std::min(ja, jb), std::max(ja, jb), lo, hi, std::move(inner));
        s.justification.checks.push_back(
            certify("condition(i=" + std::to_string(i) + ")", hnd_lhs(n, d, i, k), CmpOp::le, 1, prec));
        if (!s.justification.ok())
            throw error(errc::threshold_failure, "step " + std::to_string(i) + ": " + detail::failing_checks(s.justification));
        cur = s.target;
        cert.steps.push_back(std::move(s));
    }
    std::vector<Surd> tf(n - 1, Surd(1));
    tf.push_back(Surd(Rat(d)));
    if (!equal(cur, Ellipsoid(std::move(tf), prec).scaled(r)))
        throw error(errc::hypothesis_failure, "chain ends at " + cur.to_string());
    cert.target = cur;
    if (with_packing) {
        Certificate full = single_step(pack_balls_step(k, n));
        full.append(cert);
        return full;
    }
    return cert;
}

} // namespace ellipack
