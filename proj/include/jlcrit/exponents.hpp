#pragma once

// JL-critical exponents and the threshold curves in (N, s, l).
//
// Roots are located in the reduced coordinate x in (0, A), where the search
// interval is bounded, and mapped back to p afterwards.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "jlcrit/criticality.hpp"

namespace jlcrit {

struct Crossing {
    double x = 0.0;
    Exponent p = Exponent::infinite();
    int multiplicity = 1;
    bool tangential = false;  ///< touches M~ without a sign change
};

struct CriticalSet {
    double N = 0.0;
    double s = 0.0;
    double ell = 0.0;
    double p_sobolev = 0.0;
    std::vector<Crossing> crossings;  ///< sorted by x
    /// Labels on (p_S, p_1), (p_1, p_2), ..., (p_k, inf); size crossings + 1.
    std::vector<Label> intervals;

    [[nodiscard]] bool all_subcritical() const noexcept { return crossings.empty(); }
    /// Number of crossings counted with multiplicity.
    [[nodiscard]] int total_multiplicity() const noexcept;
};

struct ScanOptions {
    int samples = 4096;
    double tol = kDefaultTol;
};

/// The unique JL exponent for -2s < l <= 0 (infinite when H_l(s, N) >= 0).
Exponent p_joseph_lundgren(double N, double s, double ell);
/// Same root as a reduced point; nullopt when p_JL is infinite.
std::optional<ReducedPoint> jl_root(double N, double s, double ell);

/// Every crossing of g_l = M~ on (0, A), with interval labels.
CriticalSet jl_critical_set(double N, double s, double ell, const ScanOptions& opts = {});

/// (p_1, p_2, p_3, p_4) of a Sub -> Super -> Sub set: first crossing, start of
/// the first supercritical interval, end of the last one, last crossing.
/// nullopt when the set has no supercritical interval bounded on both sides.
std::optional<std::array<Exponent, 4>> supercritical_window(const CriticalSet& set);

/// For l = 0, N in {8, 9}: the unique s in (0, 1) where H_0(., N) changes sign.
double s_threshold(int N);

struct NegEllThresholds {
    double lower = 0.0;  ///< first sign change of H_l(., N)
    double upper = 0.0;  ///< last sign change
};
/// For -2 < l < 0: the s-window where p_JL switches from finite to infinite.
/// N >= 2 requires N < 10 + 4l; N = 1 requires -1 < l < 0.
NegEllThresholds s_thresholds_neg_ell(int N, double ell);

/// For l = 0, N >= 8: root of dH_0/ds in (0, 1), or 1 when dH_0/ds < 0 throughout.
double t_turning(int N);

struct EllThresholds {
    double ell1 = 0.0;     ///< g_l(A) = M~ exactly at l = ell1
    double ell2 = 0.0;     ///< max of L over (x~, A)
    double ell3 = 0.0;     ///< l >= ell3 gives all-subcritical
    double x_tilde = 0.0;  ///< root of g_0 = M~
    double x1 = 0.0;       ///< argmax of L
    [[nodiscard]] bool window_open() const noexcept { return ell1 < ell2; }
};
/// Requires N >= 8 and g_0(A) < M~ (for N in {8, 9}: s < s_N).
EllThresholds ell_thresholds(int N, double s);

/// L(x) = (2 / g_0(x)) (A - x + s) (M~ - g_0(x)).
double L_function(double N, double s, double x);
/// -2 [2 psi(N/4) - psi(1) - psi(N/2)], the s -> 0 limit of L'(A)/s.
double L_slope_limit(double N);
/// L'(A) from the closed-form derivative.
double L_prime_at_A(double N, double s);

/// Smallest integer N >= 2 with H_l(s, N) < 0.
int N_star(double s, double ell);

/// Classical (s = 1) exponents.
Exponent p_plus_classical(int N, double ell);
Exponent p_c_classical(int N);

}  // namespace jlcrit
