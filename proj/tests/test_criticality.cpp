#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "jlcrit/criticality.hpp"
#include "jlcrit/errors.hpp"
#include "jlcrit/specfun.hpp"

using namespace jlcrit;

namespace {

std::string domain_message(const ProblemParams& pp) {
    try {
        pp.validate();
    } catch (const DomainError& e) {
        return e.what();
    }
    return {};
}

struct Point {
    int N;
    double s, ell, p;
};

Point random_point(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Point pt{};
    pt.N = 1 + static_cast<int>(u(rng) * 20);
    pt.s = pt.N == 1 ? 0.02 + 0.46 * u(rng) : 0.02 + 0.96 * u(rng);
    pt.ell = -1.98 * pt.s + 4.0 * u(rng);
    const double pS = sobolev_exponent(pt.N, pt.s, pt.ell);
    pt.p = pS + (pS - 1.0) * std::pow(10.0, -2.0 + 4.0 * u(rng));
    return pt;
}

}  // namespace

TEST(Params, EachDomainClauseHasItsOwnMessage) {
    EXPECT_NE(domain_message({3, 0.0, 0.0, 2.0}).find("0 < s < 1"), std::string::npos);
    EXPECT_NE(domain_message({3, 1.0, 0.0, 2.0}).find("0 < s < 1"), std::string::npos);
    EXPECT_NE(domain_message({3, 0.5, -1.2, 2.0}).find("l > -2s"), std::string::npos);
    EXPECT_NE(domain_message({3, 0.5, 0.0, 1.0}).find("p > 1"), std::string::npos);
    EXPECT_NE(domain_message({0, 0.5, 0.0, 2.0}).find("N >= 1"), std::string::npos);
    EXPECT_NE(domain_message({1, 0.6, 0.0, 2.0}).find("N > 2s"), std::string::npos);
    EXPECT_TRUE(domain_message({3, 0.5, 0.0, 2.0}).empty());
    EXPECT_TRUE(domain_message({3, 0.5, 0.0, std::nullopt}).empty());
}

TEST(Exponent, InfinityIsADistinctState) {
    EXPECT_FALSE(Exponent::infinite().is_finite());
    EXPECT_EQ(Exponent::infinite().to_string(), "inf");
    EXPECT_THROW((void)Exponent::infinite().value(), std::logic_error);
    EXPECT_THROW(Exponent::finite(INFINITY), std::invalid_argument);
    EXPECT_EQ(Exponent::finite(2.5).value(), 2.5);
}

TEST(Lambda, HardyConstantAndSobolevExponent) {
    EXPECT_NEAR(hardy_constant(3, 0.5), 2.0 / std::numbers::pi, 1e-12);
    EXPECT_DOUBLE_EQ(sobolev_exponent(3, 0.5, 0.0), 2.0);
    EXPECT_DOUBLE_EQ(sobolev_exponent(5, 0.5, 1.0), 2.0);
    // lambda is even in alpha and decreasing in |alpha|
    EXPECT_NEAR(lambda(0.3, 5, 0.4), lambda(-0.3, 5, 0.4), 1e-14);
    EXPECT_GT(lambda(0.2, 5, 0.4), lambda(0.8, 5, 0.4));
    EXPECT_THROW(lambda(2.0, 5, 0.5), DomainError);
}

TEST(Reduced, RoundTripAndEndpoints) {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 2000; ++i) {
        const Point pt = random_point(rng);
        const ReducedPoint rp = to_reduced(pt.N, pt.s, pt.ell, pt.p);
        ASSERT_GT(rp.x, 0.0);
        ASSERT_LT(rp.x, rp.A);
        const double back = from_reduced(rp).value();
        ASSERT_NEAR(back, pt.p, 1e-12 * pt.p);
        ASSERT_NEAR(rp.x, 0.5 * beta(pt.N, pt.s, pt.ell, pt.p), 1e-12 * rp.A);
    }
    const ReducedPoint at_pS = to_reduced(3, 0.5, 0.0, 2.0);
    EXPECT_EQ(at_pS.x, 0.0);
    EXPECT_FALSE(from_reduced(reduced_at_infinity(3, 0.5, 0.0)).is_finite());
    // large p keeps relative accuracy through the separate gap
    const ReducedPoint far = to_reduced(6, 0.3, 0.2, 1e6);
    EXPECT_NEAR(from_reduced(far).value(), 1e6, 1e-12 * 1e6);
}

TEST(Reduced, EquivalenceIdentity) {
    std::mt19937_64 rng(22);
    for (int i = 0; i < 10000; ++i) {
        const Point pt = random_point(rng);
        const double lhs = pt.p * lambda(beta(pt.N, pt.s, pt.ell, pt.p), pt.N, pt.s);
        const double rhs = std::exp2(2.0 * pt.s) * g_ell(to_reduced(pt.N, pt.s, pt.ell, pt.p));
        ASSERT_LE(std::abs(lhs - rhs) / rhs, 1e-10);
    }
}

TEST(Reduced, HardyConstantAsThreshold) {
    for (int N : {2, 3, 8, 20}) {
        for (double s : {0.1, 0.5, 0.9}) {
            EXPECT_NEAR(hardy_constant(N, s), std::exp2(2.0 * s) * M_tilde(N, s),
                        1e-12 * hardy_constant(N, s));
        }
    }
}

TEST(Reduced, GZeroTwoRoutesAgree) {
    for (double x : {0.0, 0.3, 1.0, 1.7}) {
        const ReducedPoint rp = make_reduced(8, 0.4, 0.0, x);
        EXPECT_NEAR(g_ell(rp), g_zero(rp), 1e-13 * g_zero(rp));
    }
}

TEST(HEll, DerivativesMatchFiniteDifferences) {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const int N = 2 + static_cast<int>(u(rng) * 20);
        const double s = 0.05 + 0.9 * u(rng);
        const double ell = -1.9 * s + 3.0 * u(rng);
        const double A = 0.25 * (N - 2.0 * s);
        const double x = A * (0.05 + 0.9 * u(rng));
        const double h = 1e-5 * A;
        const auto at = [&](double y) { return make_reduced(N, s, ell, y); };
        const double fd1 = (h_ell(at(x + h)) - h_ell(at(x - h))) / (2.0 * h);
        const double fd2 = (h_ell_prime(at(x + h)) - h_ell_prime(at(x - h))) / (2.0 * h);
        ASSERT_NEAR(h_ell_prime(at(x)), fd1, 1e-6 * (1.0 + std::abs(fd1)));
        ASSERT_NEAR(h_ell_second(at(x)), fd2, 1e-6 * (1.0 + std::abs(fd2)));
    }
}

TEST(HEll, StrictDomainForDerivatives) {
    EXPECT_THROW(h_ell_prime(make_reduced(5, 0.5, 0.0, 0.0)), DomainError);
    EXPECT_THROW(h_ell_second(reduced_at_infinity(5, 0.5, 0.0)), DomainError);
    EXPECT_THROW(make_reduced(5, 0.5, 0.0, 2.0), DomainError);
}

TEST(HEll, TurningPointAtOneHalf) {
    for (int N : {4, 7, 12, 25}) {
        for (double s : {0.1, 0.5, 0.9}) {
            EXPECT_NEAR(h_ell_prime(make_reduced(N, s, 0.0, 0.5)), 0.0, 1e-10);
        }
    }
}

TEST(H, ClosedFormAtSEqualsOne) {
    for (double ell : {-1.0, -0.5, 0.0, 1.0, 2.0}) {
        for (int N = 3; N <= 30; ++N) {
            const double expect = std::log((1.0 + 0.5 * ell) * 4.0 / (0.5 * N - 1.0));
            ASSERT_NEAR(H(1.0, N, ell), expect, 1e-10) << "N=" << N << " l=" << ell;
        }
    }
    EXPECT_NEAR(H(1.0, 10, 0.0), 0.0, 1e-10);
}

TEST(H, ReductionRouteAndDerivative) {
    for (int N : {3, 8, 9, 15}) {
        for (double ell : {-0.1, 0.0, 0.7}) {
            for (double s : {0.2, 0.5, 0.8}) {
                EXPECT_NEAR(H(s, N, ell), H_via_reduction(s, N, ell), 1e-12);
                const double h = 1e-6;
                const double fd = (H(s + h, N, ell) - H(s - h, N, ell)) / (2.0 * h);
                EXPECT_NEAR(dH_ds(s, N, ell), fd, 1e-7);
            }
        }
    }
}

TEST(H, DigammaAnchorsNearZero) {
    EXPECT_NEAR(dH_ds(1e-6, 7, 0.0), 0.4 + 4.0 * std::numbers::ln2 - std::numbers::pi, 1e-4);
    EXPECT_NEAR(dH_ds(1e-6, 8, 0.0), -1.0 / 6.0, 1e-4);
}

TEST(Classify, Examples) {
    EXPECT_EQ(classify({5, 0.5, 0.0, 3.0}).label, Label::Subcritical);
    const Classification below = classify({3, 0.5, 0.0, 1.5});
    EXPECT_EQ(below.label, Label::Subcritical);
    EXPECT_FALSE(below.margin.has_value());
    // p = p_S is subcritical by definition
    EXPECT_EQ(classify({3, 0.5, 0.0, 2.0}).label, Label::Subcritical);
    EXPECT_THROW(classify({3, 0.5, -1.2, 2.0}), DomainError);
    EXPECT_THROW(classify({3, 0.5, 0.0, std::nullopt}), DomainError);
}

TEST(Classify, MarginSignMatchesLabel) {
    std::mt19937_64 rng(24);
    for (int i = 0; i < 2000; ++i) {
        const Point pt = random_point(rng);
        const Classification c = classify({pt.N, pt.s, pt.ell, pt.p});
        ASSERT_TRUE(c.margin.has_value());
        const double rel = *c.margin / M_tilde(pt.N, pt.s);
        switch (c.label) {
            case Label::Subcritical: ASSERT_GT(rel, kDefaultTol); break;
            case Label::Supercritical: ASSERT_LT(rel, -kDefaultTol); break;
            case Label::Critical: ASSERT_LE(std::abs(rel), kDefaultTol); break;
        }
    }
}

TEST(Classify, AtInfinityAgreesWithH) {
    for (int N : {5, 8, 12}) {
        const Classification c = classify_at_infinity(N, 0.3, 0.0);
        EXPECT_TRUE(c.at_infinity);
        EXPECT_EQ(c.label == Label::Supercritical, H(0.3, N, 0.0) < 0.0) << N;
    }
}
