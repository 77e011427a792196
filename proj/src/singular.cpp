#include "jlcrit/singular.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "jlcrit/errors.hpp"
#include "jlcrit/specfun.hpp"

namespace jlcrit {

namespace {

double require_p(const ProblemParams& params) {
    params.validate();
    if (!params.p || !std::isfinite(*params.p)) {
        throw DomainError("singular solution: a finite exponent p is required");
    }
    return *params.p;
}

double distributional_threshold(const ProblemParams& params) {
    return (params.N + params.ell) / (params.N - 2.0 * params.s);
}

}  // namespace

SingularSolution build_singular(const ProblemParams& params) {
    const double p = require_p(params);
    if (!(p > distributional_threshold(params))) {
        throw DomainError("build_singular: requires p > (N + l)/(N - 2s)");
    }
    SingularSolution sol;
    sol.params = params;
    sol.theta0 = theta0(params.s, params.ell, p);
    const double b = 0.5 * (params.N - 2.0 * params.s) - sol.theta0;
    sol.A0 = std::exp(log_lambda(b, params.N, params.s) / (p - 1.0));
    sol.weak_regime = p > sobolev_exponent(params.N, params.s, params.ell);
    return sol;
}

double u_S_eval(const SingularSolution& sol, double r) {
    if (!(r > 0.0) || !std::isfinite(r)) {
        throw DomainError("u_S_eval: requires a finite radius r > 0");
    }
    return sol.A0 * std::pow(r, -sol.theta0);
}

double log_riesz_gamma(double alpha, double N) {
    if (!std::isfinite(alpha) || !(alpha > 0.0 && alpha < N)) {
        throw DomainError("riesz_gamma: requires 0 < alpha < N");
    }
    return 0.5 * N * std::log(std::numbers::pi) + alpha * std::numbers::ln2 +
           specfun::log_gamma(0.5 * alpha) - specfun::log_gamma(0.5 * (N - alpha));
}

double riesz_gamma(double alpha, double N) { return std::exp(log_riesz_gamma(alpha, N)); }

double verify_amplitude_identity(const ProblemParams& params) {
    const double p = require_p(params);
    if (!(p > distributional_threshold(params))) {
        throw DomainError("verify_amplitude_identity: requires p > (N + l)/(N - 2s)");
    }
    const double N = params.N;
    const double th = theta0(params.s, params.ell, p);
    const double source_decay = (params.ell + 2.0 * params.s * p) / (p - 1.0);
    const double via_riesz = log_riesz_gamma(N - th, N) - log_riesz_gamma(N - source_decay, N);
    const double via_lambda = log_lambda(0.5 * (N - 2.0 * params.s) - th, N, params.s);
    return std::abs(std::expm1(via_riesz - via_lambda));
}

StabilityResult is_singular_solution_stable(const ProblemParams& params, double tol) {
    const double p = require_p(params);
    if (!(p > sobolev_exponent(params.N, params.s, params.ell))) {
        throw DomainError("is_singular_solution_stable: requires p > p_S");
    }
    const Classification c = classify(params, tol);
    // p lambda(beta) = 2^{2s} g_l(x) and lambda(0) = 2^{2s} M~.
    const double scale = std::exp2(2.0 * params.s);
    return StabilityResult{c.label != Label::Subcritical, -scale * c.margin.value()};
}

IntegrabilityFlags integrability_flags(const ProblemParams& params) {
    const double p = require_p(params);
    IntegrabilityFlags f;
    f.distributional = p > distributional_threshold(params);
    f.weak_solution = p > sobolev_exponent(params.N, params.s, params.ell);
    f.theta_below_half = theta0(params.s, params.ell, p) < 0.5 * (params.N - 2.0 * params.s);
    return f;
}

RadialProfile scale_member(RadialProfile f, double alpha, double theta0) {
    if (!(alpha > 0.0) || !(theta0 > 0.0)) {
        throw DomainError("scale_member: requires alpha > 0 and theta0 > 0");
    }
    const double stretch = std::pow(alpha, 1.0 / theta0);
    return [f = std::move(f), alpha, stretch](double r) { return alpha * f(stretch * r); };
}

}  // namespace jlcrit
