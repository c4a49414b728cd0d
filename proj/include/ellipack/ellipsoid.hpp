#pragma once

#include "certify.hpp"

#include <algorithm>
#include <initializer_list>
#include <string>
#include <vector>

namespace ellipack {

/// E(a_1, ..., a_n) with factors kept in nondecreasing order.
class Ellipsoid {
public:
    Ellipsoid() = default;
    explicit Ellipsoid(std::vector<Surd> factors, const Precision& prec = Precision::from_env())
        : factors_(std::move(factors)) {
        if (factors_.empty()) throw error(errc::invalid_argument, "ellipsoid needs at least one factor");
        for (const auto& f : factors_)
            if (f.is_zero()) throw error(errc::invalid_argument, "ellipsoid factors must be positive");
        std::stable_sort(factors_.begin(), factors_.end(),
                         [&](const Surd& a, const Surd& b) { return compare(a, b, prec) < 0; });
    }
    Ellipsoid(std::initializer_list<Surd> factors) : Ellipsoid(std::vector<Surd>(factors)) {}

    /// B^{2n}(c) = E(c, ..., c)
    static Ellipsoid ball(const Surd& c, std::size_t n = 2) { return Ellipsoid(std::vector<Surd>(n, c)); }

    std::size_t dim_half() const { return factors_.size(); }
    const std::vector<Surd>& factors() const { return factors_; }
    const Surd& operator[](std::size_t i) const { return factors_[i]; }
    const Surd& smallest() const { return factors_.front(); }
    const Surd& largest() const { return factors_.back(); }

    /// Product of all factors (volume up to the constant pi^n / n!).
    Surd volume_product() const {
        Surd p(1);
        for (const auto& f : factors_) p = p * f;
        return p;
    }

    Ellipsoid scaled(const Surd& lambda) const {
        std::vector<Surd> f;
        for (const auto& x : factors_) f.push_back(x * lambda);
        return Ellipsoid(std::move(f));
    }

    bool all_rational() const {
        return std::all_of(factors_.begin(), factors_.end(), [](const Surd& s) { return s.is_rational(); });
    }

    std::string to_string() const {
        std::string s = "E(";
        for (std::size_t i = 0; i < factors_.size(); ++i) {
            if (i) s += ",";
            s += factors_[i].to_string();
        }
        return s + ")";
    }

private:
    std::vector<Surd> factors_;
};

/// Same multiset of factor values.
inline bool equal(const Ellipsoid& a, const Ellipsoid& b) {
    if (a.dim_half() != b.dim_half()) return false;
    for (std::size_t i = 0; i < a.dim_half(); ++i)
        if (!equal(a[i], b[i])) return false;
    return true;
}

} // namespace ellipack
