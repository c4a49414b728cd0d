#include "oracles.hpp"

#include <ellipack/ech.hpp>

#include <gtest/gtest.h>

using namespace ellipack;

namespace {

std::vector<Rat> ints(std::initializer_list<int> v) { return {v.begin(), v.end()}; }

} // namespace

TEST(CapSequence, SmallCases) {
    EXPECT_EQ(cap_sequence(1, 1, 9), ints({0, 1, 1, 2, 2, 2, 3, 3, 3, 3}));
    EXPECT_EQ(cap_sequence(1, 4, 9), ints({0, 1, 2, 3, 4, 4, 5, 5, 6, 6}));
    EXPECT_EQ(cap_sequence(2, 3, 6), ints({0, 2, 3, 4, 5, 6, 6}));
}

TEST(CapSequence, MatchesOracle) {
    oracle::Gen g(1);
    for (int i = 0; i < 100; ++i) {
        const Rat a = g.rat(50, 50), b = g.rat(50, 50);
        EXPECT_EQ(cap_sequence(a, b, 150), oracle::caps(a, b, 151)) << a.to_string() << " " << b.to_string();
    }
}

TEST(CapSequence, SymmetricAndScaling) {
    oracle::Gen g(2);
    for (int i = 0; i < 50; ++i) {
        const Rat a = g.rat(20, 20), b = g.rat(20, 20), lambda = g.rat(9, 9);
        const auto s = cap_sequence(a, b, 80);
        EXPECT_EQ(s, cap_sequence(b, a, 80));
        const auto t = cap_sequence(a * lambda, b * lambda, 80);
        for (std::size_t k = 0; k < s.size(); ++k) EXPECT_EQ(t[k], s[k] * lambda);
    }
}

TEST(CapSequence, InclusionMonotone) {
    oracle::Gen g(3);
    for (int i = 0; i < 50; ++i) {
        const Rat a = g.rat(20, 20), b = g.rat(20, 20);
        const Rat c = a + g.rat0(5, 5), d = b + g.rat0(5, 5);
        const auto s = cap_sequence(a, b, 100), t = cap_sequence(c, d, 100);
        for (std::size_t k = 0; k < s.size(); ++k) EXPECT_LE(s[k], t[k]);
    }
}

TEST(CapSequence, LiveRowsStayBounded) {
    CapSeq s(Rat(1), Rat(1000));
    s.extend(5000);
    // rows p with p*1000 <= max value, plus the next unopened row head
    EXPECT_LE(s.live_rows(), static_cast<std::size_t>((s.values().back() / Rat(1000)).floor().get_ui()) + 3);
}

TEST(CapSequence, RejectsNonpositive) {
    EXPECT_THROW(cap_sequence(0, 1, 3), error);
}

TEST(LatticeCount, Examples) {
    EXPECT_EQ(lattice_count(1, 1, 2), 6u);
    EXPECT_EQ(lattice_count(1, 2, 3), 6u);
    EXPECT_EQ(lattice_count(1, 1, 0), 1u);
}

TEST(LatticeCount, MatchesOracleAndSequence) {
    oracle::Gen g(4);
    for (int i = 0; i < 200; ++i) {
        const Rat a = g.rat(30, 10), b = g.rat(30, 10), y = g.rat0(60, 4);
        const auto n = lattice_count(a, b, y);
        EXPECT_EQ(n, oracle::count(a, b, y));
        // duality with the sequence: exactly n terms are <= y
        CapSeq s(a, b);
        s.extend(n + 1);
        EXPECT_LE(s.values()[n - 1], y);
        EXPECT_GT(s.values()[n], y);
    }
}

TEST(Parabolas, Examples) {
    EXPECT_EQ(parabola_lower(1, 2, 3), Rat(15, 4));
    EXPECT_EQ(parabola_upper(1, 2, 3), Rat(13, 2));
    EXPECT_EQ(parabola_lower(1, 1, 0), Rat(0));
    EXPECT_EQ(parabola_upper(1, 1, 0), Rat(9, 8));
    EXPECT_EQ(parabola_lower(1, 1, 2), Rat(3));
    EXPECT_EQ(parabola_upper(1, 1, 2), Rat(49, 8));
}

TEST(Parabolas, Sandwich) {
    oracle::Gen g(6);
    for (int i = 0; i < 300; ++i) {
        const Rat a = g.rat(20, 6), b = i % 3 == 0 ? a : g.rat(20, 6), y = g.rat0(80, 5);
        const Rat n(lattice_count(a, b, y));
        EXPECT_LE(parabola_lower(a, b, y), n);
        EXPECT_LE(n, parabola_upper(a, b, y));
    }
}
