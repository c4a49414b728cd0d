#pragma once

#include "rat.hpp"

#include <algorithm>
#include <string>

namespace ellipack {

enum class Cmp3 { certainly_true, certainly_false, unknown };
enum class CmpOp { lt, le, gt, ge, eq };

inline const char* to_string(Cmp3 c) {
    switch (c) {
    case Cmp3::certainly_true: return "CertainlyTrue";
    case Cmp3::certainly_false: return "CertainlyFalse";
    case Cmp3::unknown: return "Unknown";
    }
    return "?";
}

inline const char* to_string(CmpOp op) {
    switch (op) {
    case CmpOp::lt: return "<";
    case CmpOp::le: return "<=";
    case CmpOp::gt: return ">";
    case CmpOp::ge: return ">=";
    case CmpOp::eq: return "=";
    }
    return "?";
}

inline CmpOp parse_cmp_op(const std::string& s) {
    if (s == "<") return CmpOp::lt;
    if (s == "<=") return CmpOp::le;
    if (s == ">") return CmpOp::gt;
    if (s == ">=") return CmpOp::ge;
    if (s == "=") return CmpOp::eq;
    throw error(errc::parse, "unknown comparison operator '" + s + "'");
}

inline Cmp3 cmp3_and(Cmp3 a, Cmp3 b) {
    if (a == Cmp3::certainly_false || b == Cmp3::certainly_false) return Cmp3::certainly_false;
    if (a == Cmp3::unknown || b == Cmp3::unknown) return Cmp3::unknown;
    return Cmp3::certainly_true;
}

inline Cmp3 cmp3_from(bool b) { return b ? Cmp3::certainly_true : Cmp3::certainly_false; }

inline bool holds(std::strong_ordering o, CmpOp op) {
    switch (op) {
    case CmpOp::lt: return o < 0;
    case CmpOp::le: return o <= 0;
    case CmpOp::gt: return o > 0;
    case CmpOp::ge: return o >= 0;
    case CmpOp::eq: return o == 0;
    }
    return false;
}

namespace detail {

// Largest multiple of 2^-bits that is <= x.
inline Rat round_down(const Rat& x, unsigned bits) {
    if (x.den() == 1) return x;
    mpz_class scaled = x.num() * pow2(bits), r;
    mpz_fdiv_q(r.get_mpz_t(), scaled.get_mpz_t(), x.den().get_mpz_t());
    return Rat(r, pow2(bits));
}

// Smallest multiple of 2^-bits that is >= x.
inline Rat round_up(const Rat& x, unsigned bits) {
    if (x.den() == 1) return x;
    mpz_class scaled = x.num() * pow2(bits), r;
    mpz_cdiv_q(r.get_mpz_t(), scaled.get_mpz_t(), x.den().get_mpz_t());
    return Rat(r, pow2(bits));
}

inline bool perfect_root(const mpz_class& v, unsigned long n, mpz_class& root) {
    return mpz_root(root.get_mpz_t(), v.get_mpz_t(), n) != 0;
}

// floor(x^(1/n) * 2^bits) / 2^bits
inline Rat root_down(const Rat& x, unsigned long n, unsigned bits) {
    mpz_class scaled = x.num() * pow2(static_cast<unsigned long>(n) * bits), q, r;
    mpz_fdiv_q(q.get_mpz_t(), scaled.get_mpz_t(), x.den().get_mpz_t());
    mpz_root(r.get_mpz_t(), q.get_mpz_t(), n);
    return Rat(r, pow2(bits));
}

// ceil(x^(1/n) * 2^bits) / 2^bits
inline Rat root_up(const Rat& x, unsigned long n, unsigned bits) {
    mpz_class scaled = x.num() * pow2(static_cast<unsigned long>(n) * bits), q, r;
    mpz_cdiv_q(q.get_mpz_t(), scaled.get_mpz_t(), x.den().get_mpz_t());
    if (mpz_root(r.get_mpz_t(), q.get_mpz_t(), n) == 0) r += 1;
    return Rat(r, pow2(bits));
}

} // namespace detail

/// Either an exact rational or an enclosure [lo, hi] of a nonnegative real.
class XReal {
public:
    XReal() = default;
    XReal(const Rat& v) : lo_(v), hi_(v) {}

    static XReal exact(const Rat& v) { return XReal(v); }
    static XReal interval(const Rat& lo, const Rat& hi, unsigned bits) {
        if (hi < lo) throw error(errc::invalid_argument, "interval with hi < lo");
        XReal x;
        x.lo_ = lo;
        x.hi_ = hi;
        x.bits_ = bits;
        x.exact_ = false;
        return x;
    }

    bool is_exact() const { return exact_; }
    const Rat& lo() const { return lo_; }
    const Rat& hi() const { return hi_; }
    const Rat& value() const {
        if (!exact_) throw error(errc::invalid_argument, "value() on an interval");
        return lo_;
    }
    unsigned bits() const { return bits_; }
    Rat width() const { return hi_ - lo_; }
    bool contains(const Rat& v) const { return lo_ <= v && v <= hi_; }

    /// Midpoint as a double, for human-readable output only.
    double approx() const { return (lo_.q().get_d() + hi_.q().get_d()) / 2; }

private:
    Rat lo_, hi_;
    unsigned bits_ = 0;
    bool exact_ = true;
};

namespace detail {

inline XReal make_rounded(const Rat& lo, const Rat& hi, unsigned bits) {
    return XReal::interval(round_down(lo, bits), round_up(hi, bits), bits);
}

inline unsigned join_bits(const XReal& a, const XReal& b) {
    return std::max(a.is_exact() ? 0u : a.bits(), b.is_exact() ? 0u : b.bits());
}

} // namespace detail

inline XReal operator+(const XReal& a, const XReal& b) {
    if (a.is_exact() && b.is_exact()) return XReal(a.value() + b.value());
    return detail::make_rounded(a.lo() + b.lo(), a.hi() + b.hi(), detail::join_bits(a, b));
}

inline XReal operator*(const XReal& a, const XReal& b) {
    if (a.is_exact() && b.is_exact()) return XReal(a.value() * b.value());
    return detail::make_rounded(a.lo() * b.lo(), a.hi() * b.hi(), detail::join_bits(a, b));
}

/// Throws precision_exhausted when the divisor interval touches zero.
inline XReal operator/(const XReal& a, const XReal& b) {
    if (b.lo().is_zero()) {
        if (b.is_exact()) throw error(errc::zero_denominator, "division by 0");
        throw error(errc::precision_exhausted, "divisor interval contains 0");
    }
    if (a.is_exact() && b.is_exact()) return XReal(a.value() / b.value());
    return detail::make_rounded(a.lo() / b.hi(), a.hi() / b.lo(), detail::join_bits(a, b));
}

inline XReal pow(const XReal& x, unsigned long e) {
    if (x.is_exact()) return XReal(x.value().pow(e));
    XReal r(Rat(1));
    XReal base = x;
    while (e) {
        if (e & 1) r = r * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return r;
}

/// Enclosure of x^(1/n). Exact when x is an exact perfect n-th power of a
/// rational; otherwise of width <= 2^-bits for exact x.
inline XReal nth_root(const XReal& x, unsigned long n, unsigned bits) {
    if (n == 0) throw error(errc::invalid_argument, "0-th root");
    if (n == 1) return x;
    if (x.is_exact()) {
        mpz_class rn, rd;
        if (detail::perfect_root(x.value().num(), n, rn) && detail::perfect_root(x.value().den(), n, rd))
            return XReal(Rat(rn, rd));
        return XReal::interval(detail::root_down(x.value(), n, bits), detail::root_up(x.value(), n, bits), bits);
    }
    return XReal::interval(detail::root_down(x.lo(), n, bits), detail::root_up(x.hi(), n, bits), bits);
}

/// Three-valued comparison; exact operands never yield Unknown.
inline Cmp3 cmp(const XReal& x, CmpOp op, const XReal& y) {
    if (x.is_exact() && y.is_exact()) return cmp3_from(holds(x.value() <=> y.value(), op));
    switch (op) {
    case CmpOp::lt:
        if (x.hi() < y.lo()) return Cmp3::certainly_true;
        if (x.lo() >= y.hi()) return Cmp3::certainly_false;
        return Cmp3::unknown;
    case CmpOp::le:
        if (x.hi() <= y.lo()) return Cmp3::certainly_true;
        if (x.lo() > y.hi()) return Cmp3::certainly_false;
        return Cmp3::unknown;
    case CmpOp::gt: return cmp(y, CmpOp::lt, x);
    case CmpOp::ge: return cmp(y, CmpOp::le, x);
    case CmpOp::eq:
        if (x.hi() < y.lo() || y.hi() < x.lo()) return Cmp3::certainly_false;
        return Cmp3::unknown;
    }
    return Cmp3::unknown;
}

} // namespace ellipack
