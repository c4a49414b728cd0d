#pragma once

#include "rat.hpp"

#include <cstdint>
#include <queue>
#include <utility>
#include <vector>

namespace ellipack {

/// The nondecreasing sequence N(a,b)(k): all a*l + b*p (l, p >= 0) in order,
/// with repetitions. c_k(E(a,b)) = N(a,b)(k-1).
///
/// Terms are produced by merging the rows p = 0, 1, 2, ... (row p is the
/// progression b*p + a*l) through a min-heap of row heads; a row is opened
/// only once the head of the previous row has been consumed at l = 0.
class CapSeq {
public:
    CapSeq(const Rat& a, const Rat& b) : a_(a), b_(b) {
        if (a.is_zero() || b.is_zero()) throw error(errc::invalid_argument, "capacity factors must be positive");
        if (b_ < a_) std::swap(a_, b_);
        heap_.push(Head{Rat(0), 0, 0});
    }

    const Rat& a() const { return a_; }
    const Rat& b() const { return b_; }

    /// N(a,b)(k), extending the cached prefix as needed.
    const Rat& operator[](std::size_t k) {
        extend(k + 1);
        return values_[k];
    }

    /// Ensure at least `count` terms are cached.
    void extend(std::size_t count) {
        while (values_.size() < count) {
            Head h = heap_.top();
            heap_.pop();
            values_.push_back(h.value);
            if (h.l == 0) heap_.push(Head{h.value + b_, h.p + 1, 0});
            heap_.push(Head{h.value + a_, h.p, h.l + 1});
        }
    }

    const std::vector<Rat>& values() const { return values_; }
    std::size_t live_rows() const { return heap_.size(); }

private:
    struct Head {
        Rat value;
        std::uint64_t p;
        std::uint64_t l;
        bool operator>(const Head& o) const { return o.value < value; }
    };

    Rat a_, b_;
    std::vector<Rat> values_;
    std::priority_queue<Head, std::vector<Head>, std::greater<>> heap_;
};

/// N(a,b)(0), ..., N(a,b)(last_index).
inline std::vector<Rat> cap_sequence(const Rat& a, const Rat& b, std::size_t last_index) {
    CapSeq s(a, b);
    s.extend(last_index + 1);
    return s.values();
}

/// R(a,b)(y): the number of (l, p) >= 0 with a*l + b*p <= y. Equals
/// #{k : N(a,b)(k) <= y}.
inline std::uint64_t lattice_count(const Rat& a, const Rat& b, const Rat& y) {
    if (a.is_zero() || b.is_zero()) throw error(errc::invalid_argument, "capacity factors must be positive");
    const mpz_class rows = (y / b).floor();
    mpz_class total = 0;
    Rat pb(0);
    for (mpz_class p = 0; p <= rows; ++p, pb += b) total += ((y - pb) / a).floor() + 1;
    if (!total.fits_ulong_p()) throw error(errc::invalid_argument, "lattice count overflows 64 bits");
    return total.get_ui();
}

namespace detail {
inline std::pair<Rat, Rat> ordered(const Rat& a, const Rat& b) {
    if (a.is_zero() || b.is_zero()) throw error(errc::invalid_argument, "capacity factors must be positive");
    return b < a ? std::pair{b, a} : std::pair{a, b};
}
} // namespace detail

/// y^2/2ab + y/2a, with a the smaller factor.
inline Rat parabola_lower(const Rat& a0, const Rat& b0, const Rat& y) {
    auto [a, b] = detail::ordered(a0, b0);
    return y * y / (Rat(2) * a * b) + y / (Rat(2) * a);
}

/// y^2/2ab + y/2a + y/b + b/8a + 1, with a the smaller factor.
inline Rat parabola_upper(const Rat& a0, const Rat& b0, const Rat& y) {
    auto [a, b] = detail::ordered(a0, b0);
    return parabola_lower(a, b, y) + y / b + b / (Rat(8) * a) + Rat(1);
}

} // namespace ellipack
