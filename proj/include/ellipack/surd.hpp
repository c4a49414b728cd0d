#pragma once

#include "xreal.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ellipack {

/// Exact positive real of the form c * b_1^e_1 * ... * b_k^e_k with c rational,
/// b_i pairwise coprime integers > 1 that are not perfect powers, and 0 < e_i < 1.
///
/// The normal form makes rationality decidable: a Surd is rational exactly when
/// it has no radicals. Products, quotients and rational powers stay closed, which
/// is what ellipsoid factors like sqrt(5ab/16) or k^(1/n) d^(i/n) need.
class Surd {
public:
    struct Radical {
        mpz_class base;
        mpq_class exp;
    };

    Surd() = default;
    Surd(const Rat& r) : coef_(r) {}
    template <std::integral I>
    Surd(I n) : coef_(n) {}

    /// base^exponent for a positive rational base and signed rational exponent.
    static Surd power(const Rat& base, const mpq_class& exponent) { return Surd(base).pow(exponent); }

    const Rat& coef() const { return coef_; }
    const std::vector<Radical>& radicals() const { return rads_; }
    bool is_rational() const { return rads_.empty(); }
    bool is_zero() const { return coef_.is_zero(); }
    std::optional<Rat> rational() const {
        if (!is_rational()) return std::nullopt;
        return coef_;
    }

    /// The radical factor alone (coefficient 1).
    Surd radical_part() const {
        Surd s;
        s.coef_ = Rat(1);
        s.rads_ = rads_;
        return s;
    }

    Surd pow(const mpq_class& e) const;
    Surd sqrt() const { return pow(mpq_class(1, 2)); }
    Surd inverse() const { return pow(mpq_class(-1)); }

    friend Surd operator*(const Surd& a, const Surd& b) {
        Surd r;
        r.coef_ = a.coef_ * b.coef_;
        if (r.coef_.is_zero()) return r;
        r.rads_ = a.rads_;
        r.rads_.insert(r.rads_.end(), b.rads_.begin(), b.rads_.end());
        r.normalize();
        return r;
    }
    friend Surd operator/(const Surd& a, const Surd& b) {
        if (b.is_zero()) throw error(errc::zero_denominator, "division by 0");
        return a * b.inverse();
    }

    /// Same normal form. Equal values can differ structurally; use compare() for value equality.
    friend bool identical(const Surd& a, const Surd& b) {
        if (a.coef_ != b.coef_ || a.rads_.size() != b.rads_.size()) return false;
        for (std::size_t i = 0; i < a.rads_.size(); ++i)
            if (a.rads_[i].base != b.rads_[i].base || a.rads_[i].exp != b.rads_[i].exp) return false;
        return true;
    }

    /// Enclosure of the value; width is roughly 2^-bits times a small constant.
    XReal eval(unsigned bits) const;

    /// Scalar-grammar text, e.g. "5/4*2^(1/2)*3^(1/3)". Round-trips through parse().
    std::string to_string() const;

    /// scalar := rational ["^(" int "/" int ")"] ("*" scalar)*
    static Surd parse(std::string_view text);

    /// log2 of the value, approximately.
    double log2_approx() const {
        double l = std::log2(coef_.q().get_d());
        for (const auto& r : rads_) l += r.exp.get_d() * std::log2(r.base.get_d());
        return l;
    }

private:
    void normalize();

    Rat coef_;
    std::vector<Radical> rads_;
};

namespace detail {

inline mpz_class pow_z(const mpz_class& b, unsigned long e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

// b = c^k with k maximal; returns k and sets c.
inline unsigned long minimal_root(const mpz_class& b, mpz_class& c) {
    c = b;
    unsigned long k = 1;
    if (mpz_sizeinbase(b.get_mpz_t(), 2) > 1u << 14) return 1;
    bool again = true;
    while (again && mpz_perfect_power_p(c.get_mpz_t())) {
        again = false;
        const unsigned long lim = mpz_sizeinbase(c.get_mpz_t(), 2);
        for (unsigned long p = 2; p <= lim; ++p) {
            if (!mpz_probab_prime_p(mpz_class(p).get_mpz_t(), 25)) continue;
            mpz_class r;
            if (mpz_root(r.get_mpz_t(), c.get_mpz_t(), p)) {
                c = r;
                k *= p;
                again = true;
                break;
            }
        }
    }
    return k;
}

inline mpz_class floor_q(const mpq_class& q) {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

} // namespace detail

inline void Surd::normalize() {
    if (coef_.is_zero()) {
        rads_.clear();
        return;
    }
    mpq_class c = coef_.q();
    bool changed = true;
    while (changed) {
        changed = false;
        // fold integer parts of exponents into the coefficient
        std::vector<Radical> kept;
        for (auto& r : rads_) {
            if (r.base == 1 || r.exp == 0) continue;
            mpz_class fl = detail::floor_q(r.exp);
            if (fl != 0) {
                mpz_class mag = abs(fl);
                mpz_class p = detail::pow_z(r.base, mag.get_ui());
                if (fl > 0) c *= p;
                else c /= p;
                r.exp -= fl;
            }
            if (r.exp != 0) kept.push_back(std::move(r));
        }
        rads_ = std::move(kept);

        std::sort(rads_.begin(), rads_.end(), [](const Radical& a, const Radical& b) { return a.base < b.base; });
        for (std::size_t i = 1; i < rads_.size(); ++i) {
            if (rads_[i].base == rads_[i - 1].base) {
                rads_[i - 1].exp += rads_[i].exp;
                rads_.erase(rads_.begin() + static_cast<std::ptrdiff_t>(i));
                changed = true;
                break;
            }
        }
        if (changed) continue;

        for (std::size_t i = 0; i < rads_.size() && !changed; ++i) {
            for (std::size_t j = i + 1; j < rads_.size(); ++j) {
                mpz_class g = gcd(rads_[i].base, rads_[j].base);
                if (g == 1) continue;
                Radical gi{g, rads_[i].exp + rads_[j].exp};
                rads_[i].base /= g;
                rads_[j].base /= g;
                rads_.push_back(std::move(gi));
                changed = true;
                break;
            }
        }
        if (changed) continue;

        for (auto& r : rads_) {
            mpz_class root;
            unsigned long k = detail::minimal_root(r.base, root);
            if (k > 1) {
                r.base = root;
                r.exp *= k;
                changed = true;
            }
        }
    }
    coef_ = Rat(c);
}

inline Surd Surd::pow(const mpq_class& e) const {
    if (coef_.is_zero()) {
        if (sgn(e) <= 0) throw error(errc::zero_denominator, "nonpositive power of 0");
        return Surd();
    }
    Surd r;
    r.coef_ = Rat(1);
    r.rads_.push_back({coef_.num(), e});
    r.rads_.push_back({coef_.den(), mpq_class(-e)});
    for (const auto& rad : rads_) r.rads_.push_back({rad.base, mpq_class(rad.exp * e)});
    r.normalize();
    return r;
}

namespace detail {

// Enclosure of base^exp with base > 1 and 0 < exp < 1, at working precision w.
inline XReal eval_radical(const mpz_class& base, const mpq_class& exp, unsigned w) {
    const mpz_class p = exp.get_num(), q = exp.get_den();
    const auto base_bits = mpz_sizeinbase(base.get_mpz_t(), 2);
    if (q <= 64 && base_bits * p.get_ui() <= (1u << 16))
        return nth_root(XReal(Rat(pow_z(base, p.get_ui()))), q.get_ui(), w);

    // q = 2^m * q' with q' odd: base^(p/q) = (base^(1/q'))^(p/2^m), where the
    // dyadic exponent is expanded bitwise over repeated square roots.
    const unsigned long m = mpz_scan1(q.get_mpz_t(), 0);
    mpz_class qodd = q >> m;
    if (qodd > 1u << 20) throw error(errc::precision_exhausted, "root degree too large to evaluate");
    const unsigned wk = w + static_cast<unsigned>(m) + 8;
    XReal r = nth_root(XReal(Rat(base)), qodd.get_ui(), wk);
    mpz_class whole = p >> m;
    mpz_class low = p - (whole << m);
    XReal res = pow(r, whole.get_ui());
    XReal cur = r;
    for (unsigned long j = 1; j <= m; ++j) {
        cur = nth_root(cur, 2, wk);
        if (mpz_tstbit(low.get_mpz_t(), m - j)) res = res * cur;
    }
    return res;
}

} // namespace detail

inline XReal Surd::eval(unsigned bits) const {
    XReal v(coef_);
    if (rads_.empty()) return v;
    const double mag = std::max(0.0, log2_approx()) + 1;
    const unsigned w = bits + 16 + 4 * static_cast<unsigned>(rads_.size()) + static_cast<unsigned>(mag);
    for (const auto& r : rads_) v = v * detail::eval_radical(r.base, r.exp, w);
    return v;
}

inline std::string Surd::to_string() const {
    if (rads_.empty()) return coef_.to_string();
    std::string s;
    if (coef_ != Rat(1)) s = coef_.to_string();
    for (const auto& r : rads_) {
        if (!s.empty()) s += "*";
        s += r.base.get_str() + "^(" + r.exp.get_num().get_str() + "/" + r.exp.get_den().get_str() + ")";
    }
    return s;
}

namespace detail {

struct ScalarParser {
    std::string_view src;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < src.size() && (src[pos] == ' ' || src[pos] == '\t')) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < src.size() && src[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw error(errc::parse, msg + " at offset " + std::to_string(pos) + " in '" + std::string(src) + "'");
    }
    std::string_view take(auto pred) {
        skip_ws();
        auto start = pos;
        while (pos < src.size() && pred(src[pos])) ++pos;
        return src.substr(start, pos - start);
    }
    Rat rational() {
        auto tok = take([](char c) { return (c >= '0' && c <= '9') || c == '.' || c == '/'; });
        if (tok.empty()) fail("expected a rational");
        return Rat::parse(tok);
    }
    mpz_class integer() {
        skip_ws();
        bool neg = eat('-');
        auto tok = take([](char c) { return c >= '0' && c <= '9'; });
        if (tok.empty()) fail("expected an integer");
        mpz_class v(std::string(tok), 10);
        return neg ? mpz_class(-v) : v;
    }
    Surd factor() {
        Rat base = rational();
        if (!eat('^')) return Surd(base);
        if (!eat('(')) fail("expected '(' after '^'");
        mpz_class p = integer();
        if (!eat('/')) fail("expected '/' in exponent");
        mpz_class q = integer();
        if (!eat(')')) fail("expected ')' closing exponent");
        if (q == 0) throw error(errc::zero_denominator, "exponent " + p.get_str() + "/0");
        if (base.is_zero() && sgn(p) <= 0) throw error(errc::zero_denominator, "nonpositive power of 0");
        mpq_class e(p, q);
        e.canonicalize();
        return Surd::power(base, e);
    }
    Surd scalar() {
        Surd v = factor();
        while (eat('*')) v = v * factor();
        return v;
    }
};

} // namespace detail

inline Surd Surd::parse(std::string_view text) {
    detail::ScalarParser p{text};
    Surd v = p.scalar();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("unexpected trailing input");
    return v;
}

} // namespace ellipack
