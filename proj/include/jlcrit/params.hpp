#pragma once

#include <optional>
#include <string>

namespace jlcrit {

/// A point (N, s, l, p) of the problem (-Delta)^s u = |x|^l |u|^{p-1} u.
/// `p` is absent for p-free queries (exponent sets, thresholds).
struct ProblemParams {
    int N = 3;
    double s = 0.5;
    double ell = 0.0;
    std::optional<double> p;

    /// Throws DomainError naming the first violated constraint among
    /// 0 < s < 1, l > -2s, p > 1, N >= 1, N > 2s.
    void validate() const;
};

/// Validation for internal callers that treat N as a real parameter.
void validate_setting(double N, double s, double ell);

/// Exponent value that may be +infinity. Infinity is a distinct state,
/// never an IEEE infinity.
class Exponent {
public:
    static Exponent finite(double p);
    static Exponent infinite() noexcept { return Exponent{}; }

    [[nodiscard]] bool is_finite() const noexcept { return value_.has_value(); }
    /// Throws std::logic_error when infinite.
    [[nodiscard]] double value() const;
    [[nodiscard]] std::string to_string() const;

    friend bool operator==(const Exponent&, const Exponent&) = default;

private:
    Exponent() = default;
    std::optional<double> value_;
};

/// printf("%.17g") rendering shared by every text output.
std::string format_real(double v);

}  // namespace jlcrit
