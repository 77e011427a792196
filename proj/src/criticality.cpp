#include "jlcrit/criticality.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "jlcrit/errors.hpp"
#include "jlcrit/specfun.hpp"

namespace jlcrit {

using specfun::digamma;
using specfun::log_gamma;
using specfun::trigamma;

namespace {

void check_order_and_dimension(double N, double s, const char* fn) {
    if (!std::isfinite(s) || !(s > 0.0 && s < 1.0)) {
        throw DomainError(std::string(fn) + ": requires 0 < s < 1");
    }
    if (!std::isfinite(N) || !(N > 2.0 * s)) {
        throw DomainError(std::string(fn) + ": requires N > 2s");
    }
}

// H and dH/ds also accept the endpoint s = 1 (when N > 2).
void check_H_domain(double s, double N, double ell, const char* fn) {
    if (!std::isfinite(s) || !std::isfinite(N) || !std::isfinite(ell)) {
        throw DomainError(std::string(fn) + ": arguments must be finite");
    }
    if (!(s > 0.0 && s <= 1.0)) {
        throw DomainError(std::string(fn) + ": requires 0 < s <= 1");
    }
    if (!(s > -0.5 * ell)) {
        throw DomainError(std::string(fn) + ": requires s > -l/2");
    }
    if (!(N > 2.0 * s)) {
        throw DomainError(std::string(fn) + ": requires N > 2s");
    }
}

}  // namespace

double sobolev_exponent(double N, double s, double ell) {
    validate_setting(N, s, ell);
    return (N + 2.0 * s + 2.0 * ell) / (N - 2.0 * s);
}

double log_lambda(double alpha, double N, double s) {
    check_order_and_dimension(N, s, "lambda");
    const double half_gap = 0.5 * (N - 2.0 * s);
    if (!std::isfinite(alpha) || !(std::abs(alpha) < half_gap)) {
        throw DomainError("lambda: requires |alpha| < (N-2s)/2");
    }
    const double up = 0.25 * (N + 2.0 * s);
    const double down = 0.25 * (N - 2.0 * s);
    const double a = 0.5 * alpha;
    return 2.0 * s * std::numbers::ln2 + log_gamma(up + a) + log_gamma(up - a) -
           log_gamma(down - a) - log_gamma(down + a);
}

double lambda(double alpha, double N, double s) { return std::exp(log_lambda(alpha, N, s)); }

double hardy_constant(double N, double s) { return lambda(0.0, N, s); }

double theta0(double s, double ell, double p) {
    if (std::isnan(p) || !(p > 1.0)) {
        throw DomainError("theta0: requires p > 1");
    }
    if (!(2.0 * s + ell > 0.0)) {
        throw DomainError("theta0: requires l > -2s");
    }
    return (2.0 * s + ell) / (p - 1.0);
}

double beta(double N, double s, double ell, double p) {
    const double p_s = sobolev_exponent(N, s, ell);
    if (!std::isfinite(p) || !(p > p_s)) {
        throw DomainError("beta: requires p_S < p < infinity");
    }
    return 0.5 * (N - 2.0 * s) - (2.0 * s + ell) / (p - 1.0);
}

ReducedPoint to_reduced(double N, double s, double ell, double p) {
    const double p_s = sobolev_exponent(N, s, ell);
    if (!std::isfinite(p) || !(p >= p_s)) {
        throw DomainError("to_reduced: requires p_S <= p < infinity");
    }
    ReducedPoint rp;
    rp.A = 0.25 * (N - 2.0 * s);
    rp.s = s;
    rp.ell = ell;
    rp.gap = std::min(0.5 * (2.0 * s + ell) / (p - 1.0), rp.A);
    rp.x = std::max(rp.A - rp.gap, 0.0);
    return rp;
}

ReducedPoint make_reduced(double N, double s, double ell, double x) {
    validate_setting(N, s, ell);
    ReducedPoint rp;
    rp.A = 0.25 * (N - 2.0 * s);
    if (!std::isfinite(x) || x < 0.0 || x > rp.A) {
        throw DomainError("make_reduced: requires 0 <= x <= A");
    }
    rp.x = x;
    rp.gap = rp.A - x;
    rp.s = s;
    rp.ell = ell;
    return rp;
}

ReducedPoint reduced_at_infinity(double N, double s, double ell) {
    validate_setting(N, s, ell);
    ReducedPoint rp;
    rp.A = 0.25 * (N - 2.0 * s);
    rp.x = rp.A;
    rp.gap = 0.0;
    rp.s = s;
    rp.ell = ell;
    return rp;
}

Exponent from_reduced(const ReducedPoint& rp) {
    if (rp.x < 0.0 || rp.gap < 0.0 || rp.x > rp.A) {
        throw DomainError("from_reduced: requires 0 <= x <= A");
    }
    if (rp.at_infinity()) {
        return Exponent::infinite();
    }
    return Exponent::finite(1.0 + (2.0 * rp.s + rp.ell) / (2.0 * rp.gap));
}

namespace {

void check_closed(const ReducedPoint& rp, const char* fn) {
    if (!(rp.A > 0.0) || rp.x < 0.0 || rp.gap < 0.0 || rp.x > rp.A) {
        throw DomainError(std::string(fn) + ": requires 0 <= x <= A");
    }
}

void check_open(const ReducedPoint& rp, const char* fn) {
    if (!(rp.x > 0.0 && rp.gap > 0.0)) {
        throw DomainError(std::string(fn) + ": requires 0 < x < A");
    }
}

// h_l(x), written with gap = A - x:
//   log(gap + s + l/2) + lnG(s + gap) - lnG(1 + gap) + lnG(A + s + x) - lnG(A + x)
double h_ell_unchecked(const ReducedPoint& rp) {
    const double s = rp.s;
    return std::log(rp.gap + s + 0.5 * rp.ell) + log_gamma(s + rp.gap) -
           log_gamma(1.0 + rp.gap) + log_gamma(rp.A + s + rp.x) - log_gamma(rp.A + rp.x);
}

}  // namespace

double h_ell(const ReducedPoint& rp) {
    check_closed(rp, "h_ell");
    return h_ell_unchecked(rp);
}

double g_ell(const ReducedPoint& rp) { return std::exp(h_ell(rp)); }

double g_zero(const ReducedPoint& rp) {
    check_closed(rp, "g_zero");
    return std::exp(log_gamma(1.0 + rp.s + rp.gap) + log_gamma(rp.A + rp.s + rp.x) -
                    log_gamma(1.0 + rp.gap) - log_gamma(rp.A + rp.x));
}

double detail::h_ell_prime_closed(const ReducedPoint& rp) {
    const double s = rp.s;
    return -1.0 / (rp.gap + s + 0.5 * rp.ell) - digamma(s + rp.gap) + digamma(1.0 + rp.gap) +
           digamma(rp.A + s + rp.x) - digamma(rp.A + rp.x);
}

double h_ell_prime(const ReducedPoint& rp) {
    check_closed(rp, "h_ell_prime");
    check_open(rp, "h_ell_prime");
    return detail::h_ell_prime_closed(rp);
}

double h_ell_second(const ReducedPoint& rp) {
    check_closed(rp, "h_ell_second");
    check_open(rp, "h_ell_second");
    const double s = rp.s;
    const double c = rp.gap + s + 0.5 * rp.ell;
    return -1.0 / (c * c) + trigamma(s + rp.gap) - trigamma(1.0 + rp.gap) +
           trigamma(rp.A + s + rp.x) - trigamma(rp.A + rp.x);
}

double log_M_tilde(double N, double s) {
    check_order_and_dimension(N, s, "M_tilde");
    const double A = 0.25 * (N - 2.0 * s);
    return 2.0 * (log_gamma(A + s) - log_gamma(A));
}

double M_tilde(double N, double s) { return std::exp(log_M_tilde(N, s)); }

double detail::log_margin(const ReducedPoint& rp) {
    const double A = rp.A;
    const double s = rp.s;
    return h_ell_unchecked(rp) - 2.0 * (log_gamma(A + s) - log_gamma(A));
}

double H(double s, double N, double ell) {
    check_H_domain(s, N, ell, "H");
    // log(s + l/2) + lnG(s) folded into log1p(l/(2s)) + lnG(1+s)
    return std::log1p(0.5 * ell / s) + log_gamma(1.0 + s) + log_gamma(0.5 * N) -
           log_gamma(0.5 * (N - 2.0 * s)) - 2.0 * log_gamma(0.25 * (N + 2.0 * s)) +
           2.0 * log_gamma(0.25 * (N - 2.0 * s));
}

double dH_ds(double s, double N, double ell) {
    check_H_domain(s, N, ell, "dH_ds");
    // 1/(s + l/2) + psi(s) = -l / (2s(s + l/2)) + psi(1+s)
    const double pole_part = -0.5 * ell / (s * (s + 0.5 * ell));
    return pole_part + digamma(1.0 + s) + digamma(0.5 * (N - 2.0 * s)) -
           digamma(0.25 * (N + 2.0 * s)) - digamma(0.25 * (N - 2.0 * s));
}

double H_via_reduction(double s, double N, double ell) {
    const ReducedPoint end = reduced_at_infinity(N, s, ell);
    return h_ell(end) - log_M_tilde(N, s);
}

std::string_view to_string(Label label) noexcept {
    switch (label) {
        case Label::Subcritical: return "Subcritical";
        case Label::Critical: return "Critical";
        case Label::Supercritical: return "Supercritical";
    }
    return "?";
}

Classification classify_reduced(const ReducedPoint& rp, double tol) {
    check_closed(rp, "classify");
    if (!(tol > 0.0)) {
        throw DomainError("classify: requires tol > 0");
    }
    const double log_m = log_M_tilde(rp.N(), rp.s);
    const double rel = std::expm1(h_ell_unchecked(rp) - log_m);
    Classification c;
    c.margin = std::exp(log_m) * rel;
    c.at_infinity = rp.at_infinity();
    if (std::abs(rel) <= tol) {
        c.label = Label::Critical;
    } else {
        c.label = rel > 0.0 ? Label::Subcritical : Label::Supercritical;
    }
    return c;
}

Classification classify(const ProblemParams& params, double tol) {
    params.validate();
    if (!params.p) {
        throw DomainError("classify: exponent p is required");
    }
    if (!std::isfinite(*params.p)) {
        throw DomainError("classify: p must be finite (use classify_at_infinity)");
    }
    const double N = params.N;
    const double p = *params.p;
    const double p_s = sobolev_exponent(N, params.s, params.ell);
    if (p < p_s) {
        if (!(tol > 0.0)) {
            throw DomainError("classify: requires tol > 0");
        }
        return Classification{Label::Subcritical, std::nullopt, false};
    }
    Classification c = classify_reduced(to_reduced(N, params.s, params.ell, p), tol);
    if (p == p_s) {
        c.label = Label::Subcritical;
    }
    return c;
}

Classification classify_at_infinity(double N, double s, double ell, double tol) {
    return classify_reduced(reduced_at_infinity(N, s, ell), tol);
}

}  // namespace jlcrit
