#include "jlcrit/specfun.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "jlcrit/errors.hpp"

namespace jlcrit::specfun {

namespace {

void require_positive(double z, const char* fn) {
    if (!std::isfinite(z) || !(z > 0.0)) {
        throw DomainError(std::string(fn) + ": argument must be finite and > 0 (got " +
                          std::to_string(z) + ")");
    }
}

// Below this the argument is shifted up with the recurrence before the
// asymptotic series is applied.
constexpr double kAsymptoticFloor = 10.0;

// psi(z) ~ ln z - 1/(2z) - sum B_{2k} / (2k z^{2k})
double digamma_asymptotic(double z) {
    const double w = 1.0 / (z * z);
    // B_{2k}/(2k), k = 1..7
    const double series =
        w * (1.0 / 12.0 -
             w * (1.0 / 120.0 -
                  w * (1.0 / 252.0 -
                       w * (1.0 / 240.0 -
                            w * (1.0 / 132.0 - w * (691.0 / 32760.0 - w * (1.0 / 12.0)))))));
    return std::log(z) - 0.5 / z - series;
}

// psi'(z) ~ 1/z + 1/(2z^2) + sum B_{2k} / z^{2k+1}
double trigamma_asymptotic(double z) {
    const double w = 1.0 / (z * z);
    const double series =
        w * (1.0 / 6.0 -
             w * (1.0 / 30.0 -
                  w * (1.0 / 42.0 -
                       w * (1.0 / 30.0 -
                            w * (5.0 / 66.0 - w * (691.0 / 2730.0 - w * (7.0 / 6.0)))))));
    return 1.0 / z + 0.5 * w + series / z;
}

}  // namespace

double log_gamma(double z) {
    require_positive(z, "log_gamma");
#if defined(__GLIBC__)
    int sign = 0;
    return ::lgamma_r(z, &sign);
#else
    return std::lgamma(z);
#endif
}

double digamma(double z) {
    require_positive(z, "digamma");
    // psi(z) = psi(z + n) - sum_{k<n} 1/(z+k)
    double shift = 0.0;
    while (z < kAsymptoticFloor) {
        shift += 1.0 / z;
        z += 1.0;
    }
    return digamma_asymptotic(z) - shift;
}

double trigamma(double z) {
    require_positive(z, "trigamma");
    // psi'(z) = psi'(z + n) + sum_{k<n} 1/(z+k)^2
    double shift = 0.0;
    while (z < kAsymptoticFloor) {
        shift += 1.0 / (z * z);
        z += 1.0;
    }
    return trigamma_asymptotic(z) + shift;
}

NormalizationConstants normalization_constants(int N, double s) {
    if (!(s > 0.0 && s < 1.0)) {
        throw DomainError("normalization_constants: requires 0 < s < 1");
    }
    if (N < 1) {
        throw DomainError("normalization_constants: requires N >= 1");
    }
    const double half_n = 0.5 * N;
    const double log_c = 2.0 * s * std::numbers::ln2 + std::log(s * (1.0 - s)) -
                         half_n * std::log(std::numbers::pi) + log_gamma(half_n + s) -
                         log_gamma(2.0 - s);
    const double log_kappa =
        (1.0 - 2.0 * s) * std::numbers::ln2 + log_gamma(1.0 - s) - log_gamma(s);
    return {std::exp(log_c), std::exp(log_kappa)};
}

}  // namespace jlcrit::specfun
