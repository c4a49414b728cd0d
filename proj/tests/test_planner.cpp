#include "oracles.hpp"

#include <ellipack/io.hpp>
#include <ellipack/planner.hpp>

#include <gtest/gtest.h>

#include <cmath>

using namespace ellipack;

namespace {

// Exact S for rational targets with n even, straight from the defining formula.
Rat s_oracle(const std::vector<Rat>& b) {
    const std::size_t n = b.size();
    Rat vol(1);
    for (const auto& x : b) vol = vol * x;
    Rat best(0);
    for (std::size_t k = 1; k <= n; ++k) best = std::max(best, Rat(20).pow(k * (k - 1) / 2) * vol / b[k - 1].pow(n));
    const Rat root = Rat(mpz_class(1) << static_cast<unsigned>(n + 6), 3) * Rat(20).pow((n - 2) / 2) * best;
    return root.pow(n - 1);
}

Ellipsoid random_sorted(oracle::Gen& g, std::size_t n) {
    // log-uniform factors spanning ratios up to 10^6
    std::vector<Surd> f;
    for (std::size_t i = 0; i < n; ++i) {
        const long scale = static_cast<long>(std::pow(10.0, g.uniform(0, 6)));
        f.push_back(Surd(Rat(g.uniform(1, 9) * scale, g.uniform(1, 9))));
    }
    return Ellipsoid(std::move(f));
}

// AC9-style domain: target E(1,..,1) in n = 3, a_3/a_1 = factor * S.
Ellipsoid thin_domain(const Rat& S, const Rat& factor, const Rat& u) {
    const Rat v = Rat(1) / (factor * S * u * u);
    return Ellipsoid{Surd(u), Surd(v), Surd(factor * S * u)};
}

} // namespace

TEST(SConstant, Values) {
    EXPECT_TRUE(identical(s_constant(std::vector<Rat>{1, 1}), Surd(Rat(5120, 3))));
    EXPECT_TRUE(identical(s_constant(std::vector<Rat>{1, 2}), Surd(Rat(2560, 3))));
    // n = 3: S^(1/2) = (512/3) 20^(1/2) max(1, 20, 8000)
    const Surd root = Surd(Rat(512 * 8000, 3)) * Surd::parse("20^(1/2)");
    EXPECT_TRUE(equal(s_constant(std::vector<Rat>{1, 1, 1}), root * root));
    EXPECT_THROW(s_constant(std::vector<Rat>{1}), error);
}

TEST(SConstant, MatchesFormulaForEvenN) {
    oracle::Gen g(61);
    for (int i = 0; i < 30; ++i) {
        const std::size_t n = i % 2 ? 2 : 4;
        std::vector<Rat> b;
        for (std::size_t k = 0; k < n; ++k) b.push_back(g.rat(20, 5));
        std::sort(b.begin(), b.end());
        auto s = s_constant(b).rational();
        ASSERT_TRUE(s);
        EXPECT_EQ(*s, s_oracle(b));
    }
}

TEST(Rebalance, Examples) {
    auto [e, cert] = rebalance(Ellipsoid{1, 50, 100});
    ASSERT_EQ(cert.steps.size(), 1u);
    const Surd t = Surd::parse("250/16").sqrt();
    EXPECT_TRUE(equal(e, Ellipsoid{t, Surd(Rat(16, 5)) * t, Surd(100)}));
    EXPECT_TRUE(equal(e[0] * e[1], Surd(50)));
    EXPECT_EQ(cert.steps[0].suspension->inner.rule, Rule::theorem_one);
    EXPECT_TRUE(verify(cert).ok());

    auto [same, none] = rebalance(Ellipsoid{1, 2, 100});
    EXPECT_TRUE(equal(same, Ellipsoid{1, 2, 100}));
    EXPECT_TRUE(none.steps.empty());
    auto [wide, none2] = rebalance(Ellipsoid{1, 1, 1000000});
    EXPECT_TRUE(none2.steps.empty());
}

TEST(Rebalance, RatioExactlyTwentyUsesNonStrictRule) {
    auto [e, cert] = rebalance(Ellipsoid{1, 20, 400});
    ASSERT_EQ(cert.steps.size(), 1u);
    EXPECT_EQ(cert.steps[0].suspension->inner.rule, Rule::theorem_one_emb);
    EXPECT_TRUE(verify(cert).ok());
}

TEST(Rebalance, Properties) {
    oracle::Gen g(71);
    for (int i = 0; i < 40; ++i) {
        const Ellipsoid e = random_sorted(g, static_cast<std::size_t>(g.uniform(3, 6)));
        const std::size_t n = e.dim_half();
        auto [r, cert] = rebalance(e);
        EXPECT_TRUE(equal(r.largest(), e.largest()));
        for (std::size_t k = 1; k + 1 < n; ++k)
            EXPECT_EQ(certify("", r[k], CmpOp::lt, Surd(20) * r[k - 1]).result, Cmp3::certainly_true);
        Surd pe(1), pr(1);
        for (std::size_t k = 0; k + 1 < n; ++k) {
            pe = pe * e[k];
            pr = pr * r[k];
        }
        EXPECT_TRUE(equal(pe, pr));
        const double spread = std::log2(e.largest().eval(64).approx() / e.smallest().eval(64).approx());
        EXPECT_LE(cert.steps.size(), std::ceil(spread / std::log2(2.5)) * n);
        for (const auto& s : cert.steps) {
            // recorded auxiliary bound 16t/5 <= a_n
            ASSERT_FALSE(s.justification.checks.empty());
            EXPECT_TRUE(s.justification.checks.back().ok());
        }
        EXPECT_TRUE(verify(cert).ok());
    }
}

TEST(GeneralChain, EndToEnd) {
    const Rat S = *s_constant(std::vector<Rat>{1, 1, 1}).rational();
    const Ellipsoid dom = thin_domain(S, 2, Rat(1, 100000));
    const Ellipsoid tgt{1, 1, 1};
    auto cert = general_chain(dom, tgt);
    EXPECT_EQ(cert.steps.size(), 2u);
    EXPECT_TRUE(equal(cert.steps.back().target, tgt));
    auto rep = verify(cert);
    EXPECT_TRUE(rep.ok()) << (rep.failures.empty() ? "" : rep.failures.front());
    // volume ledger: every step preserves the product
    for (const auto& s : cert.steps) EXPECT_TRUE(equal(s.source.volume_product(), s.target.volume_product()));
}

TEST(GeneralChain, WithRebalancingSteps) {
    const Rat S = *s_constant(std::vector<Rat>{1, 1, 1}).rational();
    const Ellipsoid dom = thin_domain(S, 40, Rat(1, 10000000));
    ASSERT_EQ(certify("", dom[1], CmpOp::gt, Surd(20) * dom[0]).result, Cmp3::certainly_true);
    auto cert = general_chain(dom, Ellipsoid{1, 1, 1});
    EXPECT_GT(cert.steps.size(), 2u);
    EXPECT_TRUE(verify(cert).ok());
}

TEST(GeneralChain, UnequalTargetFactors) {
    const Ellipsoid tgt{1, 2, 3, 5};
    const Surd S = s_constant(tgt);
    const Rat s = *S.rational();
    const Rat a1(mpz_class(1), mpz_class("1000000000000")), a2 = a1 * Rat(10), a3 = a2 * Rat(10);
    const Rat a4 = Rat(30) / (a1 * a2 * a3);
    ASSERT_GT(a4 / a1, s);
    auto cert = general_chain(Ellipsoid{Surd(a1), Surd(a2), Surd(a3), Surd(a4)}, tgt);
    EXPECT_TRUE(verify(cert).ok());
    EXPECT_TRUE(equal(cert.target, tgt));
}

TEST(GeneralChain, Gates) {
    try {
        general_chain(Ellipsoid{1, 1, 1}, Ellipsoid{1, 1, 1});
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::hypothesis_failure);
        EXPECT_NE(std::string(e.what()).find("thinness"), std::string::npos);
    }
    try {
        general_chain(Ellipsoid{1, 1, 2}, Ellipsoid{1, 1, 1});
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::hypothesis_failure);
    }
    // bypassing the gate on a fat domain fails a per-step check instead
    EXPECT_THROW(general_chain(Ellipsoid{1, 2, 3}, Ellipsoid{1, 2, 3}, ChainOptions{true}), error);
}

TEST(MainChain, VolumeCases) {
    const Rat S = *s_constant(std::vector<Rat>{1, 1, 1}).rational();
    const Rat u(1, 100000);
    const Ellipsoid full = thin_domain(S, 4, u);
    const Ellipsoid tgt{1, 1, 1};
    auto same = main_chain(full, tgt);
    auto direct = general_chain(full, tgt);
    EXPECT_EQ(io::to_json(same), io::to_json(direct));

    std::vector<Surd> f(full.factors());
    f.back() = f.back() * Surd(Rat(1, 2));
    const Ellipsoid half(f);
    auto cert = main_chain(half, tgt);
    ASSERT_FALSE(cert.steps.empty());
    EXPECT_EQ(cert.steps.front().justification.rule, Rule::inclusion);
    EXPECT_TRUE(equal(cert.steps.front().target.largest(), full.largest()));
    EXPECT_TRUE(verify(cert).ok());

    try {
        main_chain(Ellipsoid{1, 1, 2}, tgt);
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::volume_obstruction);
    }
}

TEST(Packing, Steps) {
    auto b = pack_balls_step(3, 2);
    EXPECT_EQ(b.copies, 3u);
    EXPECT_TRUE(equal(b.target, Ellipsoid{1, 3}));
    EXPECT_EQ(b.justification.rule, Rule::axiom_full_fill);
    EXPECT_FALSE(b.justification.citation.empty());
    EXPECT_TRUE(equal(pack_balls_step(1, 2).target, Ellipsoid{1, 1}));
    EXPECT_TRUE(equal(pack_balls_step(5, 3).target, Ellipsoid{1, 1, 5}));
    EXPECT_TRUE(equal(pack_ellipsoids_step(Ellipsoid{1, 2}, 3).target, Ellipsoid{1, 6}));
    EXPECT_TRUE(equal(pack_ellipsoids_step(Ellipsoid{1, 1, 1}, 1).target, Ellipsoid{1, 1, 1}));
    EXPECT_TRUE(equal(pack_ellipsoids_step(Ellipsoid{2, 3}, 2).target, Ellipsoid{2, 6}));
    for (auto s : {pack_balls_step(7, 4), pack_ellipsoids_step(Ellipsoid{2, 3}, 2)})
        EXPECT_TRUE(verify(single_step(s)).ok());
    EXPECT_THROW(pack_balls_step(0, 2), error);
}

TEST(Verify, RejectsTampering) {
    auto [e, cert] = rebalance(Ellipsoid{1, 50, 100});
    ASSERT_TRUE(verify(cert).ok());

    auto bad_target = cert;
    bad_target.steps[0].target = Ellipsoid{2, 25, 100};
    bad_target.target = bad_target.steps[0].target;
    EXPECT_FALSE(verify(bad_target).ok());

    auto bad_rule = cert;
    bad_rule.steps[0].suspension->inner.rule = Rule::inclusion;
    EXPECT_FALSE(verify(bad_rule).ok());

    auto bad_chain = cert;
    bad_chain.steps.push_back(single_step(pack_ellipsoids_step(Ellipsoid{1, 1, 1}, 1)).steps[0]);
    EXPECT_FALSE(verify(bad_chain).ok());

    auto axiom = single_step(pack_balls_step(3, 2));
    axiom.steps[0].target = Ellipsoid{1, 4};
    axiom.target = axiom.steps[0].target;
    EXPECT_FALSE(verify(axiom).ok());
}
