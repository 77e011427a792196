#pragma once

// Joseph-Lundgren classification of a parameter point.
//
// For p > p_S the test  p * lambda(beta) vs lambda(0)  is rewritten in the
// reduced coordinate x = beta/2 in [0, A], A = (N-2s)/4, as  g_l(x) vs M~,
// where x = 0 is p = p_S and x = A is p = infinity. All gamma ratios are
// formed as differences of log-gamma values. N is a real parameter here;
// only `classify(ProblemParams)` insists on an integer dimension.

#include <optional>
#include <string_view>

#include "jlcrit/params.hpp"

namespace jlcrit {

inline constexpr double kDefaultTol = 1e-9;

/// p_S(N, l) = (N + 2s + 2l) / (N - 2s)
double sobolev_exponent(double N, double s, double ell);

/// lambda(alpha) for |alpha| < (N-2s)/2, and its logarithm.
double lambda(double alpha, double N, double s);
double log_lambda(double alpha, double N, double s);

/// Best constant of the fractional Hardy inequality, lambda(0).
double hardy_constant(double N, double s);

/// theta_0 = (2s + l) / (p - 1), the decay rate of the singular solution.
double theta0(double s, double ell, double p);

/// beta = (N-2s)/2 - (2s+l)/(p-1), requires p > p_S.
double beta(double N, double s, double ell, double p);

struct ReducedPoint {
    double A = 0.0;    ///< (N - 2s) / 4
    double x = 0.0;    ///< in [0, A]
    double gap = 0.0;  ///< A - x, carried separately to keep precision near p = infinity
    double s = 0.0;
    double ell = 0.0;

    [[nodiscard]] bool at_infinity() const noexcept { return gap == 0.0; }
    [[nodiscard]] double N() const noexcept { return 4.0 * A + 2.0 * s; }
};

/// p -> x. Accepts p >= p_S (p = p_S maps to x = 0).
ReducedPoint to_reduced(double N, double s, double ell, double p);
/// Point at coordinate x in [0, A].
ReducedPoint make_reduced(double N, double s, double ell, double x);
/// The x = A sentinel standing for p = infinity.
ReducedPoint reduced_at_infinity(double N, double s, double ell);
/// x -> p, infinite at x = A.
Exponent from_reduced(const ReducedPoint& rp);

/// g_l(x) on [0, A] (pole-free form).
double g_ell(const ReducedPoint& rp);
/// g_0(x) through its own gamma-ratio form, independent of g_ell.
double g_zero(const ReducedPoint& rp);
/// h_l = log g_l
double h_ell(const ReducedPoint& rp);
/// Analytic derivatives of h_l on the open interval (0, A).
double h_ell_prime(const ReducedPoint& rp);
double h_ell_second(const ReducedPoint& rp);

/// M~ = (Gamma(A+s)/Gamma(A))^2 and its logarithm.
double M_tilde(double N, double s);
double log_M_tilde(double N, double s);

/// H_l(s, N) = h_l(A) - log M~, the log-margin at p = infinity.
/// Domain: max(0, -l/2) < s <= 1, N > 2s (s = 1 allowed for N > 2).
double H(double s, double N, double ell);
/// dH/ds.
double dH_ds(double s, double N, double ell);
/// Second route: h_l(A) - 2[lnGamma(A+s) - lnGamma(A)].
double H_via_reduction(double s, double N, double ell);

enum class Label { Subcritical, Critical, Supercritical };
std::string_view to_string(Label label) noexcept;

struct Classification {
    Label label = Label::Subcritical;
    /// g_l(x) - M~; absent when p < p_S.
    std::optional<double> margin;
    bool at_infinity = false;
};

/// Definition-level classification; p must be present in `params`.
Classification classify(const ProblemParams& params, double tol = kDefaultTol);
/// Same test at an already reduced point (real N allowed).
Classification classify_reduced(const ReducedPoint& rp, double tol = kDefaultTol);
/// Classification of the p = infinity endpoint.
Classification classify_at_infinity(double N, double s, double ell, double tol = kDefaultTol);

namespace detail {
// Unchecked evaluators, valid on the closed interval [0, A].
double h_ell_prime_closed(const ReducedPoint& rp);
// log(g_l(x) / M~)
double log_margin(const ReducedPoint& rp);
}  // namespace detail

}  // namespace jlcrit
