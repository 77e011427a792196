#pragma once

#include <cmath>
#include <string>

#include "jlcrit/errors.hpp"

namespace jlcrit::roots {

/// Bisection on [lo, hi] where f(lo) and f(hi) have opposite signs (a zero
/// at either end is returned as-is). Stops once the bracket is no wider than
/// `xtol` or cannot be split further in double precision.
template <class F>
double bisect(F&& f, double lo, double hi, double xtol = 1e-12, int max_iter = 400) {
    double f_lo = f(lo);
    const double f_hi = f(hi);
    if (f_lo == 0.0) return lo;
    if (f_hi == 0.0) return hi;
    if (std::signbit(f_lo) == std::signbit(f_hi)) {
        throw NumericFailure("bisect: no sign change on [" + std::to_string(lo) + ", " +
                             std::to_string(hi) + "]");
    }
    for (int it = 0; it < max_iter && hi - lo > xtol; ++it) {
        const double mid = lo + 0.5 * (hi - lo);
        if (mid <= lo || mid >= hi) break;
        const double f_mid = f(mid);
        if (f_mid == 0.0) return mid;
        if (std::signbit(f_mid) == std::signbit(f_lo)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return lo + 0.5 * (hi - lo);
}

/// Golden-section search for a maximum of a unimodal f on [lo, hi].
template <class F>
double golden_section_max(F&& f, double lo, double hi, double xtol = 1e-12,
                          int max_iter = 400) {
    const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo;
    double b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    for (int it = 0; it < max_iter && b - a > xtol; ++it) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace jlcrit::roots
