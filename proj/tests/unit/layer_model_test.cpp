#include "posetramsey/layer_model.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cmath>

using namespace posetramsey;

namespace {

Fraction F(std::int64_t a, std::int64_t b) { return Fraction(a, b); }

TEST(MakeLayers, OnePair) {
    const auto s = make_layers(1);
    ASSERT_EQ(s.size(), 1u);
    EXPECT_EQ(s[0].bottom, F(1, 3));
    EXPECT_EQ(s[0].top, F(1, 1));
    EXPECT_EQ(s[0].red_level, F(0, 1));
    EXPECT_EQ(s[0].red_climb, F(1, 3));
    EXPECT_EQ(s[0].blue_level, F(2, 3));
    EXPECT_EQ(s[0].blue_climb, F(1, 3));
    EXPECT_EQ(s.denominator(), 3);
}

TEST(MakeLayers, TwoPairs) {
    const auto s = make_layers(2);
    ASSERT_EQ(s.size(), 2u);
    EXPECT_EQ(s[0].bottom, F(1, 5));
    EXPECT_EQ(s[1].bottom, F(3, 5));
    EXPECT_EQ(s[0].top, F(3, 5));
    EXPECT_EQ(s[1].top, F(1, 1));
    EXPECT_EQ(s[0].red_level, F(0, 1));
    EXPECT_EQ(s[1].red_level, F(1, 5));
    EXPECT_EQ(s[0].blue_level, F(2, 5));
    EXPECT_EQ(s[1].blue_level, F(3, 5));
    EXPECT_EQ(s.denominator(), 5);
}

TEST(MakeLayers, TelescopesForEveryL) {
    for (std::size_t L = 1; L <= 40; ++L) {
        const auto s = make_layers(L);
        ASSERT_EQ(s.size(), L);
        ASSERT_EQ(s.denominator(), static_cast<std::int64_t>(2 * L + 1));
        for (std::size_t i = 0; i + 1 < L; ++i) ASSERT_EQ(s[i].top, s[i + 1].bottom);
        ASSERT_EQ(s[L - 1].top, F(1, 1));
        for (std::size_t i = 0; i < L; ++i) {
            ASSERT_EQ(s[i].top, s[i].red_level + s[i].blue_level + s[i].red_climb);
            ASSERT_EQ(s[i].red_climb, F(1, static_cast<std::int64_t>(2 * L + 1)));
            ASSERT_EQ(s[i].blue_climb, s[i].red_climb);
        }
    }
}

TEST(MakeLayers, RejectsZero) { EXPECT_THROW(make_layers(0), std::invalid_argument); }

TEST(FromTravel, UniformBudgetsReproduceMakeLayers) {
    for (std::size_t L = 1; L <= 6; ++L) {
        const Fraction w(1, static_cast<std::int64_t>(2 * L + 1));
        const std::vector<Fraction> b(L + 1, w), r(L, w);
        const auto g = LayerSchedule::from_travel(b, r);
        const auto u = make_layers(L);
        for (std::size_t i = 0; i < L; ++i) EXPECT_EQ(g[i], u[i]) << L << " " << i;
    }
}

TEST(FromTravel, RejectsOverBudgetAndBadShapes) {
    const std::vector<Fraction> b{F(1, 3), F(1, 3)}, r{F(1, 2)};
    EXPECT_THROW(LayerSchedule::from_travel(b, r), std::invalid_argument);
    const std::vector<Fraction> b2{F(1, 4)}, r2{F(1, 4)};
    EXPECT_THROW(LayerSchedule::from_travel(b2, r2), std::invalid_argument);
    const std::vector<Fraction> b3{F(1, 4), F(0, 1)}, r3{F(1, 4)};
    EXPECT_THROW(LayerSchedule::from_travel(b3, r3), std::invalid_argument);
}

TEST(FromTravel, UnevenBudgets) {
    // b = (1/10, 2/10, 3/10), r = (1/10, 2/10).
    const std::vector<Fraction> b{F(1, 10), F(2, 10), F(3, 10)}, r{F(1, 10), F(2, 10)};
    const auto s = LayerSchedule::from_travel(b, r);
    EXPECT_EQ(s[0].bottom, F(1, 10));
    EXPECT_EQ(s[0].top, F(4, 10));
    EXPECT_EQ(s[1].bottom, F(4, 10));
    EXPECT_EQ(s[1].top, F(9, 10));
    EXPECT_EQ(s[1].red_level, F(1, 10));
    EXPECT_EQ(s[0].blue_level, F(3, 10));
    EXPECT_EQ(s[0].blue_climb, F(2, 10));
    EXPECT_EQ(s[1].blue_climb, F(3, 10));
}

TEST(Derive, SixLayerExample) {
    const auto s = make_layers(1);
    const ParamVector p({1.0 / 6}, {0.05});
    const auto d = derive(s, p);
    EXPECT_NEAR(d.N, 7.0 / 3, 1e-15);
    EXPECT_NEAR(d.s[0], 2.0 / 3, 1e-15);
    EXPECT_NEAR(d.t[0], 2.0 / 3 + 1.0 / 6 + 0.05, 1e-15);
    EXPECT_NEAR(d.top[0], 7.0 / 6, 1e-15);
    EXPECT_NEAR(std::exp(d.Kt_log[0]), 1.917913, 1e-6);
    EXPECT_GT(std::exp(d.Kt_log[0]), 1.9179);
    EXPECT_NEAR(d.Nt_log[0], entropy_log(5.0 / 3, 13.0 / 60).value, 1e-15);
    EXPECT_LE(d.Nt_log[0], std::log(1.9041));
    EXPECT_NEAR(d.Ks_log[0], std::log(3.0 / std::cbrt(4.0)), 1e-15);
    EXPECT_NEAR(d.Kt_log[0], entropy_log(2.0 / 3, 1.0 / 3).value + entropy_log(5.0 / 6, 0.05).value, 1e-15);
}

TEST(Derive, ZeroParams) {
    const auto d = derive(make_layers(1), ParamVector::zeros(1));
    EXPECT_EQ(d.N, 2.0);
    EXPECT_NEAR(d.s[0], 2.0 / 3, 1e-15);
    EXPECT_EQ(d.t[0], d.s[0]);
    EXPECT_EQ(d.Nt_log[0], 0.0);
    EXPECT_EQ(d.Nsect_log[0], 0.0);
}

TEST(Derive, LengthMismatch) {
    EXPECT_THROW(derive(make_layers(1), ParamVector({1.0 / 6, 1.0 / 6}, {0.05})), LengthMismatch);
    EXPECT_THROW(constraint_margins(make_layers(2), ParamVector::zeros(1)), LengthMismatch);
}

TEST(Margins, SixLayerExample) {
    const auto m = constraint_margins(make_layers(1), ParamVector({1.0 / 6}, {0.05}));
    EXPECT_NEAR(m.intersection[0], 1.0 / 180, 1e-15);
    EXPECT_GT(m.probability[0], 0.0);
    EXPECT_NEAR(m.probability[0], std::log(1.917913) - entropy_log(5.0 / 3, 13.0 / 60).value, 1e-6);
    EXPECT_GE(m.probability[0], std::log(1.9179) - std::log(1.9041));
    EXPECT_TRUE(m.feasible(1e-6));
    EXPECT_TRUE(m.certifiable(1e-6));
}

TEST(Margins, TooLargeSkipIsInfeasible) {
    const auto m = constraint_margins(make_layers(1), ParamVector({0.25}, {0.0}));
    EXPECT_NEAR(m.intersection[0], 2.0 / 9 - 0.25, 1e-15);
    EXPECT_FALSE(m.feasible(1e-6));
    const auto v = m.violations(1e-6);
    ASSERT_FALSE(v.empty());
    EXPECT_EQ(v[0].family, ConstraintFamily::intersection);
    EXPECT_EQ(v[0].layer, 0u);
}

TEST(Margins, ZeroVectorFeasible) {
    for (std::size_t L = 1; L <= 12; ++L) {
        const auto m = constraint_margins(make_layers(L), ParamVector::zeros(L));
        EXPECT_TRUE(m.certifiable(1e-6)) << L;
    }
    const auto m = constraint_margins(make_layers(1), ParamVector::zeros(1));
    EXPECT_NEAR(m.intersection[0], 2.0 / 9, 1e-15);
    EXPECT_NEAR(m.probability[0], entropy_log(2.0 / 3, 1.0 / 3).value, 1e-15);
}

TEST(Margins, TBelowTopIdentity) {
    for (std::size_t L = 1; L <= 8; ++L) {
        ParamVector p = ParamVector::zeros(L);
        for (std::size_t i = 0; i < L; ++i) {
            p.c[i] = 0.01 * static_cast<double>(i + 1) / static_cast<double>(L);
            p.h[i] = 0.002 * static_cast<double>(L - i);
        }
        const auto m = constraint_margins(make_layers(L), p);
        for (std::size_t i = 0; i < L; ++i) {
            EXPECT_NEAR(m.t_below_top[i], 1.0 / static_cast<double>(2 * L + 1) - p.h[i], 1e-14);
        }
    }
}

TEST(Margins, SubfamilyVanishesAtBalancedWidth) {
    // Ks - Nsect is zero exactly when c + h = r q / (r + q) with q = 1 - red_level - red_climb.
    const auto s = make_layers(1);
    const double r = 1.0 / 3, q = 2.0 / 3;
    const ParamVector p({r * q / (r + q)}, {0.0});
    EXPECT_NEAR(constraint_margins(s, p).subfamily[0], 0.0, 1e-14);
}

TEST(Margins, DeterministicBitForBit) {
    const auto s = make_layers(5);
    ParamVector p = ParamVector::zeros(5);
    for (std::size_t i = 0; i < 5; ++i) {
        p.c[i] = 0.017 + 0.001 * static_cast<double>(i);
        p.h[i] = 0.01;
    }
    const auto a = constraint_margins(s, p), b = constraint_margins(s, p);
    for (auto f : kAllFamilies) EXPECT_EQ(a.family(f), b.family(f));
}

TEST(Margins, ExtendedAgreesWithDouble) {
    const auto s = make_layers(3);
    const ParamVector p({0.03, 0.04, 0.05}, {0.02, 0.015, 0.01});
    const auto d = constraint_margins(s, p);
    const auto e = constraint_margins_as<ExtendedReal>(s, p);
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_NEAR(static_cast<double>(e.probability[i]), d.probability[i], 1e-13);
        EXPECT_NEAR(static_cast<double>(e.intersection[i]), d.intersection[i], 1e-15);
    }
}

} // namespace
