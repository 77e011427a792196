#include "jlcrit/params.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "jlcrit/errors.hpp"

namespace jlcrit {

namespace {

void check_s_ell(double s, double ell) {
    if (!std::isfinite(s) || !(s > 0.0 && s < 1.0)) {
        throw DomainError("domain violation: requires 0 < s < 1 (got s=" + format_real(s) + ")");
    }
    if (!std::isfinite(ell) || !(ell > -2.0 * s)) {
        throw DomainError("domain violation: requires l > -2s (got l=" + format_real(ell) +
                          ", -2s=" + format_real(-2.0 * s) + ")");
    }
}

void check_N(double N, double s) {
    if (!std::isfinite(N) || !(N >= 1.0)) {
        throw DomainError("domain violation: requires N >= 1 (got N=" + format_real(N) + ")");
    }
    if (!(N > 2.0 * s)) {
        throw DomainError("domain violation: requires N > 2s (got N=" + format_real(N) +
                          ", 2s=" + format_real(2.0 * s) + ")");
    }
}

}  // namespace

void ProblemParams::validate() const {
    check_s_ell(s, ell);
    if (p.has_value() && (std::isnan(*p) || !(*p > 1.0))) {
        throw DomainError("domain violation: requires p > 1 (got p=" + format_real(*p) + ")");
    }
    check_N(static_cast<double>(N), s);
}

void validate_setting(double N, double s, double ell) {
    check_s_ell(s, ell);
    check_N(N, s);
}

Exponent Exponent::finite(double p) {
    if (!std::isfinite(p)) {
        throw std::invalid_argument("Exponent::finite: value must be finite");
    }
    Exponent e;
    e.value_ = p;
    return e;
}

double Exponent::value() const {
    if (!value_) {
        throw std::logic_error("Exponent::value: exponent is infinite");
    }
    return *value_;
}

std::string Exponent::to_string() const {
    return value_ ? format_real(*value_) : std::string("inf");
}

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace jlcrit
