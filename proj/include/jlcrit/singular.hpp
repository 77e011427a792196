#pragma once

// The explicit singular solution u_S(x) = A0 |x|^{-theta0}, kept analytic
// (amplitude and decay exponent), never sampled.

#include <functional>

#include "jlcrit/criticality.hpp"
#include "jlcrit/params.hpp"

namespace jlcrit {

struct SingularSolution {
    double A0 = 0.0;
    double theta0 = 0.0;
    ProblemParams params;
    /// p > p_S: u_S is a local H^s weak solution, not only a distributional one.
    bool weak_regime = false;
};

/// Requires p > (N + l) / (N - 2s).
SingularSolution build_singular(const ProblemParams& params);

/// u_S(r) = A0 r^{-theta0}, r > 0.
double u_S_eval(const SingularSolution& sol, double r);

/// gamma(alpha) = pi^{N/2} 2^alpha Gamma(alpha/2) / Gamma((N - alpha)/2), 0 < alpha < N.
double riesz_gamma(double alpha, double N);
double log_riesz_gamma(double alpha, double N);

/// Relative residual between A0^{p-1} computed as a ratio of Riesz constants
/// and as lambda((N-2s)/2 - theta0).
double verify_amplitude_identity(const ProblemParams& params);

struct StabilityResult {
    bool stable = false;
    double margin = 0.0;  ///< lambda(0) - p lambda(beta)
};

/// p lambda(beta) <= lambda(0) within the classifier band. Requires p > p_S.
StabilityResult is_singular_solution_stable(const ProblemParams& params,
                                            double tol = kDefaultTol);

struct IntegrabilityFlags {
    bool distributional = false;  ///< p > (N + l)/(N - 2s)
    bool weak_solution = false;   ///< p > p_S
    bool theta_below_half = false;  ///< theta0 < (N - 2s)/2
};

IntegrabilityFlags integrability_flags(const ProblemParams& params);

using RadialProfile = std::function<double(double)>;

/// r -> alpha f(alpha^{1/theta0} r); u_S is a fixed point of this map.
RadialProfile scale_member(RadialProfile f, double alpha, double theta0);

}  // namespace jlcrit
