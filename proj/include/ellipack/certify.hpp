#pragma once

#include "precision.hpp"
#include "surd.hpp"

#include <string>
#include <utility>
#include <vector>

namespace ellipack {

/// Finite sum of nonnegative Surds with like terms merged.
class SurdSum {
public:
    SurdSum() = default;
    SurdSum(const Surd& s) { add(s); }
    SurdSum(const Rat& r) { add(Surd(r)); }
    template <std::integral I>
    SurdSum(I n) { add(Surd(n)); }

    const std::vector<Surd>& terms() const { return terms_; }

    /// The single term when the sum collapses to one Surd (or zero).
    std::optional<Surd> as_surd() const {
        if (terms_.empty()) return Surd();
        if (terms_.size() == 1) return terms_.front();
        return std::nullopt;
    }

    SurdSum& operator+=(const SurdSum& o) {
        for (const auto& t : o.terms_) add(t);
        return *this;
    }
    friend SurdSum operator+(SurdSum a, const SurdSum& b) { return a += b; }
    friend SurdSum operator*(const SurdSum& a, const Surd& s) {
        SurdSum r;
        for (const auto& t : a.terms_) r.add(t * s);
        return r;
    }
    friend SurdSum operator*(const Surd& s, const SurdSum& a) { return a * s; }

    XReal eval(unsigned bits) const {
        XReal v(Rat(0));
        for (const auto& t : terms_) v = v + t.eval(bits);
        return v;
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (const auto& t : terms_) {
            if (!s.empty()) s += " + ";
            s += t.to_string();
        }
        return s;
    }

private:
    void add(const Surd& s) {
        if (s.is_zero()) return;
        for (auto& t : terms_) {
            auto ratio = (s / t).rational();
            if (ratio) {
                t = t * Surd(*ratio + Rat(1));
                return;
            }
        }
        terms_.push_back(s);
    }

    std::vector<Surd> terms_;
};

/// A certified inequality lhs op rhs. bits == 0 means it was decided symbolically.
struct Check {
    std::string label;
    SurdSum lhs;
    CmpOp op = CmpOp::le;
    SurdSum rhs;
    Cmp3 result = Cmp3::unknown;
    unsigned bits = 0;

    bool ok() const { return result == Cmp3::certainly_true; }
};

namespace detail {

// Sign of lhs - rhs when it can be settled symbolically: the difference is a
// signed combination of pairwise non-proportional radicals, which is zero only
// if every coefficient cancels (radicals of positive rationals whose ratios are
// irrational are linearly independent over Q). Returns nullopt when the sign
// needs numerical evaluation.
inline std::optional<int> symbolic_sign(const SurdSum& lhs, const SurdSum& rhs) {
    std::vector<std::pair<mpq_class, Surd>> diff;
    auto add = [&](const Surd& t, int sign) {
        Surd rp = t.radical_part();
        for (auto& [c, r] : diff) {
            if (auto ratio = (rp / r).rational()) {
                c += sign * t.coef().q() * ratio->q();
                return;
            }
        }
        diff.emplace_back(mpq_class(sign * t.coef().q()), rp);
    };
    for (const auto& t : lhs.terms()) add(t, 1);
    for (const auto& t : rhs.terms()) add(t, -1);

    bool any_radical = false;
    mpq_class rational_part = 0;
    for (const auto& [c, r] : diff) {
        if (c == 0) continue;
        if (r.is_rational()) rational_part += c * r.coef().q();
        else any_radical = true;
    }
    if (!any_radical) return sgn(rational_part);
    // Nonzero; all coefficients of one sign settle the order as well.
    bool all_pos = true, all_neg = true;
    for (const auto& [c, r] : diff) {
        if (c > 0) all_neg = false;
        if (c < 0) all_pos = false;
    }
    if (all_pos) return 1;
    if (all_neg) return -1;
    return std::nullopt;
}

} // namespace detail

/// Certify lhs op rhs, escalating interval precision by doubling up to the cap.
inline Check certify(std::string label, const SurdSum& lhs, CmpOp op, const SurdSum& rhs,
                     const Precision& prec = Precision::from_env()) {
    Check c{std::move(label), lhs, op, rhs};
    if (auto sign = detail::symbolic_sign(lhs, rhs)) {
        auto o = *sign < 0 ? std::strong_ordering::less
                           : (*sign > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
        c.result = cmp3_from(holds(o, op));
        return c;
    }
    // The difference is provably nonzero, so eq is settled without numerics.
    if (op == CmpOp::eq) {
        c.result = Cmp3::certainly_false;
        return c;
    }
    for (unsigned bits = prec.start_bits; bits <= prec.max_bits; bits *= 2) {
        XReal l, r;
        try {
            l = lhs.eval(bits);
            r = rhs.eval(bits);
        } catch (const error& e) {
            if (e.code() != errc::precision_exhausted) throw;
            continue;
        }
        c.bits = bits;
        c.result = cmp(l, op, r);
        if (c.result != Cmp3::unknown) return c;
    }
    c.result = Cmp3::unknown;
    return c;
}

/// Exact three-way comparison of Surds; throws precision_exhausted only if the
/// two (provably distinct) values cannot be separated below the cap.
inline std::strong_ordering compare(const Surd& a, const Surd& b, const Precision& prec = Precision::from_env()) {
    if (identical(a, b)) return std::strong_ordering::equal;
    auto lt = certify("", a, CmpOp::lt, b, prec);
    if (lt.result == Cmp3::certainly_true) return std::strong_ordering::less;
    auto gt = certify("", a, CmpOp::gt, b, prec);
    if (gt.result == Cmp3::certainly_true) return std::strong_ordering::greater;
    if (lt.result == Cmp3::certainly_false && gt.result == Cmp3::certainly_false) return std::strong_ordering::equal;
    throw error(errc::precision_exhausted, "cannot order " + a.to_string() + " and " + b.to_string());
}

inline bool equal(const Surd& a, const Surd& b) {
    if (identical(a, b)) return true;
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    auto r = (a / b).rational();
    return r && *r == Rat(1);
}

} // namespace ellipack
