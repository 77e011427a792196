#include "jlcrit/exponents.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "jlcrit/errors.hpp"
#include "jlcrit/roots.hpp"
#include "jlcrit/specfun.hpp"

namespace jlcrit {

namespace {

constexpr double kXTol = 1e-12;
constexpr double kSTol = 1e-12;

ReducedPoint point_at(double A, double s, double ell, double x) {
    ReducedPoint rp;
    rp.A = A;
    rp.x = x;
    rp.gap = A - x;
    rp.s = s;
    rp.ell = ell;
    return rp;
}

// Reduced point whose gap is taken from the sample index directly.
ReducedPoint sample_point(double A, double s, double ell, int i, int n) {
    ReducedPoint rp;
    rp.A = A;
    rp.x = A * i / n;
    rp.gap = A * (n - i) / n;
    rp.s = s;
    rp.ell = ell;
    return rp;
}

Crossing make_crossing(const ReducedPoint& rp, int multiplicity) {
    Crossing c;
    c.x = rp.x;
    c.p = from_reduced(rp);
    c.multiplicity = multiplicity;
    c.tangential = multiplicity % 2 == 0;
    return c;
}

}  // namespace

int CriticalSet::total_multiplicity() const noexcept {
    int total = 0;
    for (const auto& c : crossings) total += c.multiplicity;
    return total;
}

std::optional<ReducedPoint> jl_root(double N, double s, double ell) {
    validate_setting(N, s, ell);
    if (ell > 0.0) {
        throw DomainError("p_joseph_lundgren: requires l <= 0 (use jl_critical_set for l > 0)");
    }
    const double A = 0.25 * (N - 2.0 * s);
    const ReducedPoint end = reduced_at_infinity(N, s, ell);
    if (detail::log_margin(end) >= 0.0) {
        return std::nullopt;
    }
    // The log-margin is positive at x = 0 (it equals log p_S) and concave.
    const auto f = [&](double x) { return detail::log_margin(point_at(A, s, ell, x)); };
    const double x = roots::bisect(f, 0.0, A, kXTol);
    return point_at(A, s, ell, x);
}

Exponent p_joseph_lundgren(double N, double s, double ell) {
    const auto root = jl_root(N, s, ell);
    return root ? from_reduced(*root) : Exponent::infinite();
}

CriticalSet jl_critical_set(double N, double s, double ell, const ScanOptions& opts) {
    validate_setting(N, s, ell);
    if (opts.samples < 2) {
        throw DomainError("jl_critical_set: requires at least 2 samples");
    }
    const double A = 0.25 * (N - 2.0 * s);
    const int n = opts.samples;

    CriticalSet set;
    set.N = N;
    set.s = s;
    set.ell = ell;
    set.p_sobolev = sobolev_exponent(N, s, ell);

    const auto f = [&](double x) { return detail::log_margin(point_at(A, s, ell, x)); };
    const auto df = [&](double x) { return detail::h_ell_prime_closed(point_at(A, s, ell, x)); };

    std::vector<double> fv(n + 1);
    std::vector<double> dv(n + 1);
    for (int i = 0; i <= n; ++i) {
        const ReducedPoint rp = sample_point(A, s, ell, i, n);
        fv[i] = detail::log_margin(rp);
        dv[i] = detail::h_ell_prime_closed(rp);
    }

    const auto add_root = [&](double lo, double hi, double f_lo, double f_hi) {
        if (std::signbit(f_lo) == std::signbit(f_hi)) return;
        const double x = roots::bisect(f, lo, hi, kXTol);
        if (x >= A) return;  // a zero at x = A is p = infinity, not a crossing
        set.crossings.push_back(make_crossing(point_at(A, s, ell, x), 1));
    };

    for (int i = 0; i < n; ++i) {
        const double a = A * i / n;
        const double b = A * (i + 1) / n;
        if (std::signbit(dv[i]) != std::signbit(dv[i + 1])) {
            // f has an interior extremum c: up to two crossings, or a tangency at c.
            const double c = roots::bisect(df, a, b, kXTol);
            const double fc = f(c);
            add_root(a, c, fv[i], fc);
            add_root(c, b, fc, fv[i + 1]);
            const bool no_sign_change = std::signbit(fv[i]) == std::signbit(fc) &&
                                        std::signbit(fc) == std::signbit(fv[i + 1]);
            if (no_sign_change && std::abs(std::expm1(fc)) <= opts.tol && c > 0.0 && c < A) {
                set.crossings.push_back(make_crossing(point_at(A, s, ell, c), 2));
            }
        } else {
            add_root(a, b, fv[i], fv[i + 1]);
        }
    }

    std::vector<double> bounds{0.0};
    for (const auto& c : set.crossings) bounds.push_back(c.x);
    bounds.push_back(A);
    for (std::size_t k = 0; k + 1 < bounds.size(); ++k) {
        const double mid = 0.5 * (bounds[k] + bounds[k + 1]);
        set.intervals.push_back(classify_reduced(point_at(A, s, ell, mid), opts.tol).label);
    }
    return set;
}

std::optional<std::array<Exponent, 4>> supercritical_window(const CriticalSet& set) {
    const auto& labels = set.intervals;
    if (set.crossings.size() < 2 || labels.size() != set.crossings.size() + 1) {
        return std::nullopt;
    }
    if (labels.front() != Label::Subcritical || labels.back() != Label::Subcritical) {
        return std::nullopt;
    }
    std::optional<std::size_t> first;
    std::size_t last = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == Label::Supercritical) {
            if (!first) first = i;
            last = i;
        }
    }
    if (!first) return std::nullopt;
    return std::array<Exponent, 4>{set.crossings.front().p, set.crossings[*first - 1].p,
                                   set.crossings[last].p, set.crossings.back().p};
}

double t_turning(int N) {
    if (N < 8) {
        throw DomainError(
            "t_turning: requires N >= 8 (for N <= 7 with l = 0, dH_0/ds > 0 near s = 0)");
    }
    const auto d = [N](double s) { return dH_ds(s, N, 0.0); };
    const double lo = 1e-12;
    if (!(d(lo) < 0.0)) {
        throw NumericFailure("t_turning: dH_0/ds is not negative near s = 0");
    }
    if (d(1.0) <= 0.0) {
        return 1.0;
    }
    return roots::bisect(d, lo, 1.0, kSTol);
}

double s_threshold(int N) {
    if (N != 8 && N != 9) {
        throw DomainError(
            "s_threshold: requires N in {8, 9} (l = 0: p_JL is infinite for every s when "
            "N <= 7 and finite for every s when N >= 10)");
    }
    // H_0(., N) is convex with H_0(0+) = 0, so it is negative at its minimum t_N
    // and positive at s = 1.
    const double t = t_turning(N);
    const auto h = [N](double s) { return H(s, N, 0.0); };
    if (!(h(t) < 0.0) || !(h(1.0) > 0.0)) {
        throw NumericFailure("s_threshold: H_0 does not change sign on [t_N, 1]");
    }
    return roots::bisect(h, t, 1.0, kSTol);
}

NegEllThresholds s_thresholds_neg_ell(int N, double ell) {
    if (!(ell > -2.0 && ell < 0.0)) {
        throw DomainError("s_thresholds_neg_ell: requires -2 < l < 0");
    }
    double lo = -0.5 * ell;
    double hi = 0.0;
    if (N == 1) {
        if (!(ell > -1.0)) {
            throw DomainError("s_thresholds_neg_ell: N = 1 requires -1 < l < 0");
        }
        hi = 0.5 * (1.0 - 1e-12);
    } else if (N >= 2) {
        if (!(N < 10.0 + 4.0 * ell)) {
            throw DomainError(
                "s_thresholds_neg_ell: requires N < 10 + 4l (otherwise H_l(s, N) < 0 for all "
                "s and p_JL is always finite)");
        }
        hi = N > 2 ? 1.0 : 1.0 - 1e-12;
    } else {
        throw DomainError("s_thresholds_neg_ell: requires N >= 1");
    }
    lo *= 1.0 + 1e-12;

    const auto h = [N, ell](double s) { return H(s, N, ell); };
    constexpr int kGrid = 2048;
    std::vector<double> grid(kGrid + 1);
    std::vector<double> hv(kGrid + 1);
    for (int i = 0; i <= kGrid; ++i) {
        grid[i] = i == kGrid ? hi : lo + (hi - lo) * i / kGrid;
        hv[i] = h(grid[i]);
    }
    std::vector<double> roots_found;
    for (int i = 0; i < kGrid; ++i) {
        if (std::signbit(hv[i]) != std::signbit(hv[i + 1])) {
            roots_found.push_back(roots::bisect(h, grid[i], grid[i + 1], kSTol));
        }
    }
    if (roots_found.empty()) {
        throw NumericFailure("s_thresholds_neg_ell: H_l(., N) has no sign change");
    }
    NegEllThresholds t{roots_found.front(), roots_found.back()};
    if (N >= 2 && N <= 6 && std::abs(t.upper - t.lower) > 1e-10) {
        throw NumericFailure("s_thresholds_neg_ell: multiple sign changes where H_l is monotone");
    }
    return t;
}

double L_function(double N, double s, double x) {
    const ReducedPoint rp = make_reduced(N, s, 0.0, x);
    const double log_ratio = log_M_tilde(N, s) - h_ell(rp);  // log(M~ / g_0(x))
    return 2.0 * (rp.gap + s) * std::expm1(log_ratio);
}

double L_slope_limit(double N) {
    using specfun::digamma;
    return -2.0 * (2.0 * digamma(0.25 * N) - digamma(1.0) - digamma(0.5 * N));
}

double L_prime_at_A(double N, double s) {
    const ReducedPoint end = reduced_at_infinity(N, s, 0.0);
    const double ratio = std::exp(log_M_tilde(N, s) - h_ell(end));  // M~ / M_0
    const double h_prime = detail::h_ell_prime_closed(end);
    return -2.0 * (ratio - 1.0) - 2.0 * s * ratio * h_prime;
}

EllThresholds ell_thresholds(int N, double s) {
    if (N < 8) {
        throw DomainError("ell_thresholds: requires N >= 8");
    }
    validate_setting(N, s, 0.0);
    const double A = 0.25 * (N - 2.0 * s);
    const double log_m = log_M_tilde(N, s);
    const double m_tilde = std::exp(log_m);
    const ReducedPoint end = reduced_at_infinity(N, s, 0.0);
    const double m0 = g_ell(end);
    if (!(m0 < m_tilde)) {
        throw DomainError(
            "ell_thresholds: requires g_0(A) < M~ (for N in {8, 9}: s < s_N); otherwise every "
            "l > 0 is subcritical for all p");
    }

    EllThresholds t;
    // g_0 increases up to x = 1/2 and decreases after, and A > 1/2 here.
    const auto f0 = [&](double x) { return detail::log_margin(point_at(A, s, 0.0, x)); };
    t.x_tilde = roots::bisect(f0, 0.5, A, kXTol);
    t.ell1 = 2.0 * s * (m_tilde - m0) / m0;
    t.ell3 = 2.0 / m0 * (A - t.x_tilde + s) * (m_tilde - m0);

    const auto L = [&](double x) {
        const ReducedPoint rp = point_at(A, s, 0.0, x);
        return 2.0 * (rp.gap + s) * std::expm1(-detail::log_margin(rp));
    };
    constexpr int kGrid = 512;
    int best = kGrid;
    double best_val = t.ell1;
    for (int i = 1; i < kGrid; ++i) {
        const double x = t.x_tilde + (A - t.x_tilde) * i / kGrid;
        const double v = L(x);
        if (v > best_val) {
            best_val = v;
            best = i;
        }
    }
    if (best == kGrid) {
        t.x1 = A;
        t.ell2 = t.ell1;
        return t;
    }
    const double step = (A - t.x_tilde) / kGrid;
    const double lo = t.x_tilde + step * (best - 1);
    const double hi = std::min(t.x_tilde + step * (best + 1), A);
    t.x1 = roots::golden_section_max(L, lo, hi, kXTol);
    t.ell2 = std::max(L(t.x1), best_val);
    return t;
}

int N_star(double s, double ell) {
    if (!(s > 0.0 && s < 1.0) || !(ell > -2.0 * s)) {
        throw DomainError("N_star: requires 0 < s < 1 and l > -2s");
    }
    const auto negative = [s, ell](long N) { return H(s, static_cast<double>(N), ell) < 0.0; };
    if (negative(2)) {
        return 2;
    }
    long lo = 2;  // H >= 0
    long hi = 4;
    while (!negative(hi)) {
        lo = hi;
        hi *= 2;
        if (hi > (1L << 40)) {
            throw NumericFailure("N_star: no sign change found");
        }
    }
    while (hi - lo > 1) {
        const long mid = lo + (hi - lo) / 2;
        (negative(mid) ? hi : lo) = mid;
    }
    return static_cast<int>(hi);
}

Exponent p_plus_classical(int N, double ell) {
    if (N < 2) {
        throw DomainError("p_plus_classical: requires N >= 2");
    }
    if (!(ell > -2.0)) {
        throw DomainError("p_plus_classical: requires l > -2");
    }
    const double n = N;
    if (!(n > 10.0 + 4.0 * ell)) {
        return Exponent::infinite();
    }
    const double e2 = ell + 2.0;
    const double num = (n - 2.0) * (n - 2.0) - 2.0 * e2 * (ell + n) +
                       2.0 * std::sqrt(e2 * e2 * e2 * (ell + 2.0 * n - 2.0));
    return Exponent::finite(num / ((n - 2.0) * (n - 4.0 * ell - 10.0)));
}

Exponent p_c_classical(int N) {
    if (N < 1) {
        throw DomainError("p_c_classical: requires N >= 1");
    }
    if (N <= 10) {
        return Exponent::infinite();
    }
    const double n = N;
    return Exponent::finite(((n - 2.0) * (n - 2.0) - 4.0 * n + 8.0 * std::sqrt(n - 1.0)) /
                            ((n - 2.0) * (n - 10.0)));
}

}  // namespace jlcrit
