#include "oracles.hpp"

#include <ellipack/stability.hpp>

#include <gtest/gtest.h>

using namespace ellipack;

TEST(NstabCpn, Bounds) {
    // ceil((17/6)^n), frozen from the exact rational power
    const unsigned long expected[] = {0, 0, 9, 23, 65, 183, 518};
    for (std::size_t n = 2; n <= 6; ++n) {
        auto r = nstab_cpn(n);
        EXPECT_EQ(r.bound, expected[n]) << n;
        EXPECT_TRUE(r.ok());
        EXPECT_EQ(r.bound, Rat(17, 6).pow(n).ceil());
    }
    EXPECT_THROW(nstab_cpn(1), error);
}

TEST(NstabCpn, ChecksKeepPassingAboveBound) {
    for (std::size_t n = 2; n <= 6; ++n) {
        const std::size_t k = nstab_cpn(n).bound.get_ui();
        for (std::size_t kk : {k, k + 1, k + 7})
            for (const auto& c : cpn_checks(n, kk)) EXPECT_TRUE(c.ok()) << n << " " << kk << " " << c.label;
        // and the threshold fails just below
        EXPECT_FALSE(cpn_checks(n, k - 1).back().ok());
    }
}

TEST(NstabCpn, ExceptionTableRefinement) {
    EXPECT_EQ(nstab_cpn(3).bound, 23);
    auto free = nstab_cpn(3, ExceptionTable{});
    EXPECT_EQ(free.bound, 21);
    EXPECT_TRUE(free.ok());
    // an interval covering 22^(2/3) ~ 7.85 blocks the refinement at 22
    auto blocked = nstab_cpn(3, ExceptionTable{{Rat(784, 100), Rat(786, 100)}});
    EXPECT_EQ(blocked.bound, 23);
    // one covering 21^(2/3) ~ 7.61 stops it at 22
    auto partial = nstab_cpn(3, ExceptionTable{{Rat(76, 10), Rat(762, 100)}});
    EXPECT_EQ(partial.bound, 22);
}

TEST(Kineq, HoldsAtTwentyOneAndTwentyTwo) {
    for (std::size_t k : {21, 22})
        EXPECT_EQ(certify("", kineq_lhs(3, 0, k), CmpOp::le, 1).result, Cmp3::certainly_true) << k;
    EXPECT_EQ(certify("", kineq_lhs(3, 0, 20), CmpOp::le, 1).result, Cmp3::certainly_false);
}

TEST(Kineq, NondecreasingInI) {
    for (std::size_t n = 3; n <= 7; ++n)
        for (std::size_t k : {10, 30, 100, 1000})
            for (std::size_t i = 0; i + 3 < n; ++i)
                EXPECT_EQ(certify("", kineq_lhs(n, i, k), CmpOp::le, kineq_lhs(n, i + 1, k)).result,
                          Cmp3::certainly_true)
                    << n << " " << k << " " << i;
}

TEST(Kineq, MatchesFloatingPoint) {
    for (int n = 3; n <= 6; ++n)
        for (std::size_t k : {5, 23, 64, 500})
            for (int i = 0; i + 2 <= n; ++i) {
                auto v = kineq_lhs(n, i, k).eval(64);
                const long double f = oracle::kineq(n, i, k);
                EXPECT_NEAR(v.approx(), f, 1e-12);
            }
}

TEST(NstabHnd, Values) {
    EXPECT_EQ(nstab_hnd(2, 1).bound, 28);
    // ceil((25/8 + 10 2^(-1/3) + 16 2^(-4/3))^(3/2)), cross-checked in floating point below
    EXPECT_EQ(nstab_hnd(3, 2).bound, 73);
    for (int n = 2; n <= 5; ++n)
        for (int d = 1; d <= 10; ++d) {
            const long double x = oracle::hnd_threshold(n, d);
            const long double p = std::pow(x, n / 2.0L);
            if (std::abs(p - std::round(p)) < 1e-6) continue;  // too close to call in floating point
            EXPECT_EQ(nstab_hnd(n, d).bound, oracle::ceiling_power(n, x)) << n << " " << d;
        }
    EXPECT_THROW(nstab_hnd(1, 1), error);
    EXPECT_THROW(nstab_hnd(2, 0), error);
}

TEST(NstabHnd, ShapeInD) {
    // The threshold 25d/16 + 10 d^(-(n-2)/n) + 16 d^(-2(n-1)/n) is convex in d, so the
    // bound first falls and then rises; it is not monotone.
    for (std::size_t n = 2; n <= 4; ++n) {
        std::vector<mpz_class> b;
        for (std::size_t d = 1; d <= 10; ++d) b.push_back(nstab_hnd(n, d).bound);
        std::size_t turn = 0;
        while (turn + 1 < b.size() && b[turn + 1] <= b[turn]) ++turn;
        for (std::size_t i = turn; i + 1 < b.size(); ++i) EXPECT_LE(b[i], b[i + 1]) << n;
        EXPECT_GT(b.front(), b[turn]);
    }
    EXPECT_EQ(nstab_hnd(2, 2).bound, 22);
    EXPECT_EQ(nstab_hnd(2, 5).bound, 22);
    EXPECT_EQ(nstab_hnd(2, 3).bound, 21);
}

TEST(NstabHnd, DominatesCpn) {
    EXPECT_LT(Rat(289, 36), Rat(441, 16));
    for (std::size_t n = 2; n <= 6; ++n) EXPECT_GE(nstab_hnd(n, 1).bound, nstab_cpn(n).bound);
}

TEST(CpnChain, WorkedExample) {
    auto c = cpn_chain(3, 27);
    ASSERT_EQ(c.steps.size(), 2u);
    EXPECT_TRUE(equal(c.steps[0].target, Ellipsoid{1, 3, 9}));
    EXPECT_EQ(c.steps[0].suspension->inner.rule, Rule::theorem_one);
    EXPECT_TRUE(equal(c.steps[0].suspension->inner.params[1].second, Surd(3)));
    EXPECT_EQ(c.steps[1].suspension->inner.rule, Rule::ms_threshold);
    EXPECT_TRUE(equal(c.target, Ellipsoid::ball(Surd(3), 3)));
    EXPECT_TRUE(verify(c).ok());
}

TEST(CpnChain, ThresholdAndSmallN) {
    try {
        cpn_chain(3, 8);
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::threshold_failure);
    }
    auto c = cpn_chain(2, 9);
    ASSERT_EQ(c.steps.size(), 1u);
    EXPECT_EQ(c.steps[0].suspension->inner.rule, Rule::ms_threshold);
    EXPECT_TRUE(equal(c.target, Ellipsoid{3, 3}));
}

TEST(CpnChain, VerifiesAndKeepsVolume) {
    for (std::size_t n = 2; n <= 5; ++n) {
        const std::size_t k0 = nstab_cpn(n).bound.get_ui();
        for (std::size_t k : {k0, k0 + 1, k0 + 7}) {
            auto c = cpn_chain(n, k, true);
            EXPECT_EQ(c.steps.size(), n);  // packing step + n-1 suspensions
            EXPECT_EQ(c.source_copies, k);
            EXPECT_TRUE(verify(c).ok()) << n << " " << k;
            for (std::size_t i = 1; i < c.steps.size(); ++i)
                EXPECT_TRUE(equal(c.steps[i].target.volume_product(), Surd(Rat(k))));
        }
    }
}

TEST(HndChain, AtBound) {
    for (std::size_t n = 2; n <= 4; ++n)
        for (std::size_t d = 1; d <= 5; ++d) {
            const std::size_t k = nstab_hnd(n, d).bound.get_ui();
            auto c = hnd_chain(n, d, k);
            EXPECT_EQ(c.steps.size(), n - 1);
            EXPECT_TRUE(verify(c).ok()) << n << " " << d;
            std::vector<Surd> f(n - 1, Surd(1));
            f.push_back(Surd(Rat(d)));
            EXPECT_TRUE(equal(c.target, Ellipsoid(f).scaled(Surd::power(Rat(k, d), mpq_class(1, n)))));
        }
}

TEST(HndChain, FailuresAndSpecialization) {
    try {
        hnd_chain(3, 2, 2);
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::threshold_failure);
        EXPECT_NE(std::string(e.what()).find("i=1"), std::string::npos);
    }
    auto h = hnd_chain(2, 1, 28);
    ASSERT_EQ(h.steps.size(), 1u);
    const Surd r = Surd::parse("28^(1/2)");
    EXPECT_TRUE(equal(h.target, Ellipsoid{r, r}));
    EXPECT_EQ(h.steps[0].suspension->inner.rule, Rule::theorem_one);
}
