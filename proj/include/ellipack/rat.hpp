#pragma once

#include "error.hpp"

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstdint>
#include <string>
#include <string_view>
#include <type_traits>

namespace ellipack {

/// Exact nonnegative rational, always in lowest terms.
class Rat {
public:
    Rat() = default;
    template <std::integral I>
    Rat(I n) {
        if constexpr (std::is_signed_v<I>)
            if (n < 0) throw error(errc::negative_value, std::to_string(n));
        q_ = mpz_class(std::to_string(n), 10);
    }
    template <std::integral I, std::integral J>
    Rat(I num, J den) : Rat(mpz_class(std::to_string(num), 10), mpz_class(std::to_string(den), 10)) {}
    Rat(const mpz_class& num, const mpz_class& den) {
        if (den == 0) throw error(errc::zero_denominator, num.get_str() + "/0");
        q_ = mpq_class(num, den);
        q_.canonicalize();
        check_sign();
    }
    explicit Rat(const mpz_class& n) : q_(n) { check_sign(); }
    explicit Rat(const mpq_class& q) : q_(q) {
        q_.canonicalize();
        check_sign();
    }

    const mpq_class& q() const { return q_; }
    mpz_class num() const { return q_.get_num(); }
    mpz_class den() const { return q_.get_den(); }

    bool is_zero() const { return q_ == 0; }
    bool is_integer() const { return q_.get_den() == 1; }

    mpz_class floor() const {
        mpz_class r;
        mpz_fdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
        return r;
    }
    mpz_class ceil() const {
        mpz_class r;
        mpz_cdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
        return r;
    }
    Rat frac() const { return Rat(mpq_class(q_ - mpq_class(floor()))); }

    Rat pow(unsigned long e) const {
        mpz_class n, d;
        mpz_pow_ui(n.get_mpz_t(), q_.get_num_mpz_t(), e);
        mpz_pow_ui(d.get_mpz_t(), q_.get_den_mpz_t(), e);
        return Rat(n, d);
    }
    Rat inverse() const {
        if (is_zero()) throw error(errc::zero_denominator, "inverse of 0");
        return Rat(mpq_class(1 / q_));
    }

    Rat& operator+=(const Rat& o) { q_ += o.q_; return *this; }
    Rat& operator*=(const Rat& o) { q_ *= o.q_; return *this; }
    Rat& operator/=(const Rat& o) {
        if (o.is_zero()) throw error(errc::zero_denominator, "division by 0");
        q_ /= o.q_;
        return *this;
    }
    // Throws negative_value when the result would drop below zero.
    Rat& operator-=(const Rat& o) {
        if (o.q_ > q_) throw error(errc::negative_value, to_string() + " - " + o.to_string());
        q_ -= o.q_;
        return *this;
    }

    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

    friend bool operator==(const Rat& a, const Rat& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
        int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    /// "p" for integers, "p/q" otherwise.
    std::string to_string() const { return q_.get_str(); }

    /// Accepts "p", "p/q" and terminating decimals such as "1.2" or ".5".
    static Rat parse(std::string_view text);

private:
    void check_sign() const {
        if (sgn(q_) < 0) throw error(errc::negative_value, q_.get_str());
    }

    mpq_class q_{0};
};

namespace detail {

inline bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

inline mpz_class pow2(unsigned long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
    return r;
}

} // namespace detail

inline Rat Rat::parse(std::string_view text) {
    auto t = text;
    while (!t.empty() && (t.front() == ' ' || t.front() == '\t')) t.remove_prefix(1);
    while (!t.empty() && (t.back() == ' ' || t.back() == '\t')) t.remove_suffix(1);
    if (t.empty()) throw error(errc::parse, "empty rational");
    if (t.front() == '-') throw error(errc::negative_value, std::string(t));
    if (t.front() == '+') t.remove_prefix(1);

    if (auto slash = t.find('/'); slash != std::string_view::npos) {
        auto p = t.substr(0, slash), q = t.substr(slash + 1);
        if (!detail::all_digits(p) || !detail::all_digits(q))
            throw error(errc::parse, "malformed rational '" + std::string(text) + "'");
        mpz_class den(std::string(q), 10);
        if (den == 0) throw error(errc::zero_denominator, std::string(text));
        return Rat(mpz_class(std::string(p), 10), den);
    }
    if (auto dot = t.find('.'); dot != std::string_view::npos) {
        auto ip = t.substr(0, dot), fp = t.substr(dot + 1);
        if ((ip.empty() && fp.empty()) || (!ip.empty() && !detail::all_digits(ip)) ||
            (!fp.empty() && !detail::all_digits(fp)))
            throw error(errc::parse, "malformed decimal '" + std::string(text) + "'");
        std::string digits = std::string(ip) + std::string(fp);
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, fp.size());
        return Rat(mpz_class(digits, 10), den);
    }
    if (!detail::all_digits(t)) throw error(errc::parse, "malformed rational '" + std::string(text) + "'");
    return Rat(mpz_class(std::string(t), 10));
}

} // namespace ellipack
