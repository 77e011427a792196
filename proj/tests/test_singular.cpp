#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "jlcrit/errors.hpp"
#include "jlcrit/exponents.hpp"
#include "jlcrit/singular.hpp"

using namespace jlcrit;

TEST(Singular, AmplitudeAndDecay) {
    const ProblemParams pp{5, 0.5, 0.0, 3.0};
    const SingularSolution sol = build_singular(pp);
    EXPECT_DOUBLE_EQ(sol.theta0, 0.5);
    EXPECT_TRUE(sol.weak_regime);  // p_S = 1.5
    const double b = 0.5 * (5 - 1.0) - 0.5;
    EXPECT_NEAR(sol.A0, std::sqrt(lambda(b, 5, 0.5)), 1e-14);
    EXPECT_NEAR(u_S_eval(sol, 4.0), sol.A0 * 0.5, 1e-14);
    EXPECT_THROW(u_S_eval(sol, 0.0), DomainError);
}

TEST(Singular, RequiresDistributionalRange) {
    // (N + l)/(N - 2s) = 1.5 at N = 3, s = 0.5
    EXPECT_THROW(build_singular({3, 0.5, 0.0, 1.4}), DomainError);
    EXPECT_THROW(build_singular({3, 0.5, 0.0, std::nullopt}), DomainError);
    const SingularSolution sol = build_singular({3, 0.5, 0.0, 1.8});
    EXPECT_FALSE(sol.weak_regime);  // between (N+l)/(N-2s) and p_S = 2
}

TEST(Singular, RieszConstantClosedForm) {
    // gamma(alpha) for N = 3, alpha = 2: pi^{3/2} 4 Gamma(1) / Gamma(1/2) = 4 pi
    EXPECT_NEAR(riesz_gamma(2.0, 3), 4.0 * std::numbers::pi, 1e-12);
    EXPECT_THROW(riesz_gamma(3.0, 3), DomainError);
}

TEST(Singular, AmplitudeIdentity) {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const int N = 1 + static_cast<int>(u(rng) * 20);
        const double s = N == 1 ? 0.02 + 0.46 * u(rng) : 0.02 + 0.96 * u(rng);
        const double ell = -1.98 * s + 3.0 * u(rng);
        const double p_min = std::max(1.0, (N + ell) / (N - 2.0 * s));
        const double p = p_min * (1.0 + std::pow(10.0, -3.0 + 5.0 * u(rng)));
        ASSERT_LE(verify_amplitude_identity({N, s, ell, p}), 1e-10) << N << " " << s << " " << ell << " " << p;
    }
}

TEST(Singular, StabilityFollowsClassification) {
    const double pjl = p_joseph_lundgren(10, 0.5, 0.0).value();
    const StabilityResult below = is_singular_solution_stable({10, 0.5, 0.0, 0.9 * pjl});
    const StabilityResult above = is_singular_solution_stable({10, 0.5, 0.0, 1.1 * pjl});
    EXPECT_FALSE(below.stable);
    EXPECT_LT(below.margin, 0.0);
    EXPECT_TRUE(above.stable);
    EXPECT_GT(above.margin, 0.0);

    // margin = lambda(0) - p lambda(beta)
    const double p = 1.1 * pjl;
    const double direct = hardy_constant(10, 0.5) - p * lambda(beta(10, 0.5, 0.0, p), 10, 0.5);
    EXPECT_NEAR(above.margin, direct, 1e-12 * hardy_constant(10, 0.5));
    EXPECT_THROW(is_singular_solution_stable({10, 0.5, 0.0, 1.2}), DomainError);
}

TEST(Singular, IntegrabilityFlags) {
    // (N+l)/(N-2s) = 1.5 < p = 1.8 < p_S = 2
    const IntegrabilityFlags f = integrability_flags({3, 0.5, 0.0, 1.8});
    EXPECT_TRUE(f.distributional);
    EXPECT_FALSE(f.weak_solution);
    EXPECT_FALSE(f.theta_below_half);
    const IntegrabilityFlags h = integrability_flags({3, 0.5, 0.0, 50.0});
    EXPECT_TRUE(h.distributional && h.weak_solution && h.theta_below_half);
    const IntegrabilityFlags g = integrability_flags({3, 0.5, 0.0, 1.2});
    EXPECT_FALSE(g.distributional);
}

TEST(Singular, ScalingFamilyFixesUS) {
    const SingularSolution sol = build_singular({6, 0.4, 0.5, 4.0});
    const RadialProfile uS = [&sol](double r) { return u_S_eval(sol, r); };
    for (double alpha : {0.3, 2.0, 17.0}) {
        const RadialProfile scaled = scale_member(uS, alpha, sol.theta0);
        for (double r : {0.01, 1.0, 50.0}) {
            EXPECT_NEAR(scaled(r), uS(r), 1e-12 * uS(r)) << alpha << " " << r;
        }
    }
    // a bounded profile is moved: scale(f)(0) = alpha f(0)
    const RadialProfile bump = [](double r) { return 1.0 / (1.0 + r * r); };
    EXPECT_NEAR(scale_member(bump, 3.0, sol.theta0)(0.0), 3.0, 1e-15);
    EXPECT_THROW(scale_member(bump, -1.0, sol.theta0), DomainError);
}
