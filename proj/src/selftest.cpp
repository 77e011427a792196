#include "jlcrit/selftest.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "jlcrit/exponents.hpp"
#include "jlcrit/phase_diagram.hpp"
#include "jlcrit/singular.hpp"
#include "jlcrit/truncation.hpp"

namespace jlcrit {

namespace {

using Clock = std::chrono::steady_clock;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
    bool pass = false;
    std::string detail;
};

// Admissible (N, s, l) with N > 2s; N = 1 forces s < 1/2.
struct Setting {
    int N;
    double s;
    double ell;
};

Setting random_setting(std::mt19937_64& rng, double ell_lo_frac, double ell_hi) {
    std::uniform_int_distribution<int> dim(1, 30);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Setting st{};
    st.N = dim(rng);
    st.s = st.N == 1 ? 0.01 + 0.48 * u(rng) : 0.01 + 0.98 * u(rng);
    const double lo = -2.0 * st.s * ell_lo_frac;
    st.ell = lo + (ell_hi - lo) * u(rng);
    return st;
}

// 1. p lambda(beta) = 2^{2s} g_l(x)
Outcome equivalence_identity() {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(1001);
    std::uniform_real_distribution<double> dec(-3.0, 3.0);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const Setting st = random_setting(rng, 0.99, 4.0);
        const double pS = sobolev_exponent(st.N, st.s, st.ell);
        const double p = pS + (pS - 1.0) * std::pow(10.0, dec(rng));
        const double b = beta(st.N, st.s, st.ell, p);
        const double lhs = p * lambda(b, st.N, st.s);
        const double rhs = std::exp2(2.0 * st.s) * g_ell(to_reduced(st.N, st.s, st.ell, p));
        worst = std::max(worst, std::abs(lhs - rhs) / rhs);
    }
    const double dt = seconds_since(t0);
    return {worst <= 1e-10 && dt < 1.0,
            "max rel err " + fmt(worst) + " (<= 1e-10) over 1e4 points in " + fmt(dt) + " s (< 1 s)"};
}

// 2. H_l(1, N) = log[(1 + l/2) 4 / (N/2 - 1)]
Outcome closed_form_endpoint() {
    double worst = 0.0;
    std::string bad;
    for (double ell : {-1.0, -0.5, 0.0, 1.0, 2.0}) {
        for (int N = 3; N <= 30; ++N) {
            const double h = H(1.0, N, ell);
            const double expect = std::log((1.0 + 0.5 * ell) * 4.0 / (0.5 * N - 1.0));
            worst = std::max(worst, std::abs(h - expect));
            const double edge = 10.0 + 4.0 * ell;
            const bool sign_ok = N == edge ? std::abs(h) <= 1e-10 : (h > 0.0) == (N < edge);
            if (!sign_ok && bad.empty()) bad = " sign wrong at N=" + std::to_string(N) + " l=" + fmt(ell);
        }
    }
    return {worst <= 1e-10 && bad.empty(),
            "max abs err " + fmt(worst) + " (<= 1e-10); H(1,10,0) = " + fmt(H(1.0, 10, 0.0)) + bad};
}

// 3. dH/ds near s = 0 for N = 7, 8
Outcome digamma_anchors() {
    const double d7 = dH_ds(1e-6, 7, 0.0);
    const double d8 = dH_ds(1e-6, 8, 0.0);
    const double e7 = 0.4 + 4.0 * std::numbers::ln2 - std::numbers::pi;
    const double e8 = -1.0 / 6.0;
    const double err7 = std::abs(d7 - e7);
    const double err8 = std::abs(d8 - e8);
    return {err7 <= 1e-4 && err8 <= 1e-4,
            "N=7: " + fmt(d7) + " vs " + fmt(e7) + " (err " + fmt(err7) + "); N=8: " + fmt(d8) +
                " vs " + fmt(e8) + " (err " + fmt(err8) + "), tol 1e-4"};
}

// 4. lim L'(A)/s at N = 8
Outcome slope_anchor() {
    const double lim = L_slope_limit(8);
    const double err = std::abs(lim + 1.0 / 3.0);
    // the closed-form L'(A) itself should approach the same limit
    const double approach = L_prime_at_A(8, 1e-6) / 1e-6;
    const double err_fd = std::abs(approach + 1.0 / 3.0);
    return {err <= 1e-12 && err_fd <= 1e-4,
            "limit " + fmt(lim) + " (err " + fmt(err) + " <= 1e-12); L'(A)/s at s=1e-6: " +
                fmt(approach) + " (err " + fmt(err_fd) + " <= 1e-4)"};
}

// 5. h_0'(1/2) = 0, + below, - above
Outcome turning_point() {
    std::mt19937_64 rng(1005);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    int done = 0;
    std::string bad;
    while (done < 20) {
        const int N = 3 + static_cast<int>(u(rng) * 28);
        const double s = 0.01 + 0.98 * u(rng);
        const double A = 0.25 * (N - 2.0 * s);
        if (!(A > 0.5)) continue;
        ++done;
        worst = std::max(worst, std::abs(h_ell_prime(make_reduced(N, s, 0.0, 0.5))));
        const double below = h_ell_prime(make_reduced(N, s, 0.0, 0.25));
        const double above = h_ell_prime(make_reduced(N, s, 0.0, 0.5 + 0.5 * (A - 0.5)));
        if ((below <= 0.0 || above >= 0.0) && bad.empty()) {
            bad = " sign pattern broken at N=" + std::to_string(N) + " s=" + fmt(s);
        }
    }
    return {worst <= 1e-10 && bad.empty(), "max |h_0'(1/2)| " + fmt(worst) + " (<= 1e-10) over 20 points" + bad};
}

// 6. h_l'' < 0 for l <= 0
Outcome concavity() {
    std::mt19937_64 rng(1006);
    double largest = -INFINITY;
    for (int i = 0; i < 50; ++i) {
        Setting st = random_setting(rng, 0.999, 0.0);
        const double A = 0.25 * (st.N - 2.0 * st.s);
        for (int k = 1; k <= 100; ++k) {
            largest = std::max(largest, h_ell_second(make_reduced(st.N, st.s, st.ell, A * k / 101.0)));
        }
    }
    return {largest < 0.0, "max h_l'' " + fmt(largest) + " (< 0) over 50 x 100 points"};
}

// 7. no critical exponent for N <= 7, l = 0
Outcome subcritical_everywhere(double tol) {
    std::vector<std::pair<int, double>> cases;
    for (double s : {0.1, 0.3, 0.45}) cases.emplace_back(1, s);
    for (int N = 2; N <= 7; ++N) {
        for (double s : {0.1, 0.5, 0.9}) cases.emplace_back(N, s);
    }
    for (const auto& [N, s] : cases) {
        const CriticalSet set = jl_critical_set(N, s, 0.0, {4096, tol});
        if (!set.all_subcritical()) {
            return {false, "crossing found at N=" + std::to_string(N) + " s=" + fmt(s)};
        }
        const double A = 0.25 * (N - 2.0 * s);
        for (int k = 0; k < 100; ++k) {
            const double p = from_reduced(make_reduced(N, s, 0.0, A * (k + 0.5) / 100.0)).value();
            const Classification c = classify(ProblemParams{N, s, 0.0, p}, tol);
            if (c.label != Label::Subcritical) {
                return {false, "p=" + fmt(p) + " not Subcritical at N=" + std::to_string(N) + " s=" + fmt(s)};
            }
        }
    }
    return {true, std::to_string(cases.size()) + " settings: empty critical set, 100 p-values Subcritical"};
}

// 8. s_N and the trichotomy at p_JL
Outcome s_N_trichotomy(double tol) {
    std::string detail;
    for (int N : {8, 9}) {
        const double sN = s_threshold(N);
        detail += "s_" + std::to_string(N) + "=" + fmt(sN) + " ";
        if (!(sN > 0.0 && sN < 1.0)) return {false, detail + "outside (0,1)"};
        const double s_lo = 0.8 * sN;
        const double s_hi = sN + 0.5 * (1.0 - sN);
        const Exponent p_lo = p_joseph_lundgren(N, s_lo, 0.0);
        const Exponent p_hi = p_joseph_lundgren(N, s_hi, 0.0);
        if (!p_lo.is_finite()) return {false, detail + "p_JL infinite at 0.8 s_N"};
        if (p_hi.is_finite()) return {false, detail + "p_JL finite above s_N: " + p_hi.to_string()};
        const double p = p_lo.value();
        const auto label_at = [&](double q) { return classify(ProblemParams{N, s_lo, 0.0, q}, tol).label; };
        const Label at = label_at(p);
        const Label below = label_at(p * (1.0 - 1e-3));
        const Label above = label_at(p * (1.0 + 1e-3));
        detail += "p_JL=" + fmt(p) + " [" + std::string(to_string(below)) + "/" + std::string(to_string(at)) +
                  "/" + std::string(to_string(above)) + "] ";
        if (at != Label::Critical || below != Label::Subcritical || above != Label::Supercritical) {
            return {false, detail + "expected Subcritical/Critical/Supercritical around p_JL"};
        }
    }
    return {true, detail};
}

// 9. s -> 1 recovers the classical exponent and lambda
Outcome classical_recovery() {
    double worst_p = 0.0;
    for (int N : {11, 12, 15}) {
        const Exponent p = p_joseph_lundgren(N, 1.0 - 1e-7, 0.0);
        if (!p.is_finite()) return {false, "p_JL infinite at N=" + std::to_string(N)};
        worst_p = std::max(worst_p, std::abs(p.value() / p_c_classical(N).value() - 1.0));
    }
    std::mt19937_64 rng(1009);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst_l = 0.0;
    const double s = 1.0 - 1e-9;
    const int dims[] = {11, 12, 15};
    for (int i = 0; i < 1000; ++i) {
        const int N = dims[i % 3];
        const double alpha = 0.99 * u(rng) * 0.5 * (N - 2.0 * s);
        const double expect = 0.25 * (N - 2.0) * (N - 2.0) - alpha * alpha;
        worst_l = std::max(worst_l, std::abs(lambda(alpha, N, s) - expect));
    }
    return {worst_p <= 1e-4 && worst_l <= 1e-6,
            "max rel |p_JL/p_c - 1| " + fmt(worst_p) + " (<= 1e-4); max |lambda - ((N-2)^2/4 - a^2)| " +
                fmt(worst_l) + " (<= 1e-6)"};
}

// 10. Sub -> Super -> Sub window for small l > 0 at N = 8
Outcome positive_ell_window(double tol) {
    const auto t0 = Clock::now();
    const int N = 8;
    const double s = 0.05;
    const EllThresholds t = ell_thresholds(N, s);
    std::string detail = "s=0.05: l1=" + fmt(t.ell1) + " l2=" + fmt(t.ell2) + " l3=" + fmt(t.ell3) + "; ";
    if (!t.window_open()) return {false, detail + "window (l1, l2) empty"};

    const double ell = 0.5 * (t.ell1 + t.ell2);
    const CriticalSet set = jl_critical_set(N, s, ell, {4096, tol});
    const std::vector<Label> pattern{Label::Subcritical, Label::Supercritical, Label::Subcritical};
    if (set.intervals != pattern) return {false, detail + "interval pattern is not Sub/Super/Sub"};
    const auto win = supercritical_window(set);
    if (!win) return {false, detail + "no bounded supercritical window"};
    const auto& w = *win;
    for (const auto& e : w) {
        if (!e.is_finite()) return {false, detail + "infinite exponent in window"};
    }
    const bool ordered = set.p_sobolev < w[0].value() && w[0].value() <= w[1].value() &&
                         w[1].value() < w[2].value() && w[2].value() <= w[3].value();
    detail += std::to_string(set.crossings.size()) + " sign changes, p1..p4 = " + fmt(w[0].value()) + ", " +
              fmt(w[1].value()) + ", " + fmt(w[2].value()) + ", " + fmt(w[3].value()) + "; ";
    if (!ordered) return {false, detail + "p_S < p1 <= p2 < p3 <= p4 violated"};

    for (double f : {1.0, 1.5, 4.0}) {
        if (!jl_critical_set(N, s, f * t.ell3, {4096, tol}).all_subcritical()) {
            return {false, detail + "critical set not empty at l=" + fmt(f) + " l3"};
        }
    }
    const double dt = seconds_since(t0);
    return {dt < 5.0, detail + "empty for l >= l3; " + fmt(dt) + " s (< 5 s)"};
}

// 11. small negative l keeps p_JL finite below s_N
Outcome negative_ell_finite() {
    std::string detail;
    for (int N : {8, 9}) {
        const double sN = s_threshold(N);
        const double s = 0.5 * sN;
        const double lo = std::max(-2.0 * s, 0.25 * N - 2.5);
        for (double ell : {-1e-3, -1e-2, 0.5 * lo}) {
            if (!p_joseph_lundgren(N, s, ell).is_finite()) {
                return {false, "p_JL infinite at N=" + std::to_string(N) + " l=" + fmt(ell)};
            }
            const double s_lower = s_thresholds_neg_ell(N, ell).lower;
            if (s_lower < sN - 1e-9) {
                return {false, "s_{N,l}=" + fmt(s_lower) + " < s_N=" + fmt(sN) + " at l=" + fmt(ell)};
            }
        }
        detail += "N=" + std::to_string(N) + ": p_JL finite for l in {-1e-3, -1e-2, " + fmt(0.5 * lo) +
                  "}, s_{N,l} >= s_N; ";
    }
    return {true, detail};
}

// 12. Riesz-potential amplitude and the Hardy constant
Outcome amplitude_identity() {
    std::mt19937_64 rng(1012);
    std::uniform_real_distribution<double> dec(-3.0, 2.0);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const Setting st = random_setting(rng, 0.99, 4.0);
        const double p_min = (st.N + st.ell) / (st.N - 2.0 * st.s);
        const double p = std::max(p_min, 1.0) * (1.0 + std::pow(10.0, dec(rng)));
        worst = std::max(worst, verify_amplitude_identity(ProblemParams{st.N, st.s, st.ell, p}));
    }
    const double hardy_err = std::abs(hardy_constant(3, 0.5) - 2.0 / std::numbers::pi);
    return {worst <= 1e-10 && hardy_err <= 1e-12,
            "max residual " + fmt(worst) + " (<= 1e-10) over 1e3 points; |Lambda(3,1/2) - 2/pi| " +
                fmt(hardy_err) + " (<= 1e-12)"};
}

// 13. truncation profile properties
Outcome truncation_suite() {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(1013);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst_jump = 0.0;
    for (int i = 0; i < 50; ++i) {
        const double mu = 0.02 + 0.96 * u(rng);
        const double p = 1.05 + 14.0 * u(rng);
        const double M0 = 0.1 + 5.0 * u(rng);
        const TruncationProfile prof = build_truncation(mu, p, build_phi0(M0));
        const std::vector<double> grid = default_grid(prof);
        const TruncationReport rep = verify_truncation(prof, grid, 1e-10);
        if (!rep.ok) {
            return {false, "mu=" + fmt(mu) + " p=" + fmt(p) + " M0=" + fmt(M0) + ": " + rep.violated +
                               " at u=" + fmt(rep.location.value_or(NAN))};
        }
        worst_jump = std::max(worst_jump, rep.c1_jump);
    }
    const double dt = seconds_since(t0);
    return {dt < 2.0, "50 profiles pass; max C1 jump " + fmt(worst_jump) + " (<= 1e-10); " + fmt(dt) +
                          " s (< 2 s)"};
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// 14. byte-identical scans
Outcome deterministic_scan(const SelftestOptions& opts, Clock::time_point suite_start) {
    namespace fs = std::filesystem;
    const fs::path dir = (opts.scratch_dir.empty() ? fs::temp_directory_path() : opts.scratch_dir) /
                         "jlcrit-selftest";
    fs::create_directories(dir);

    ScanSpec spec;
    spec.N = 8;
    spec.ell = 0.0;
    spec.axes = {{Axis::s, 0.05, 0.95, 200}, {Axis::p, 1.5, 20.0, 200}};
    spec.tol = opts.tol;

    bool same = true;
    for (Format f : {Format::csv, Format::json}) {
        spec.format = f;
        const std::string ext = f == Format::csv ? ".csv" : ".json";
        const fs::path a = dir / ("scan_a" + ext);
        const fs::path b = dir / ("scan_b" + ext);
        write_file_atomically(a, render(run_scan(spec, opts.threads)));
        write_file_atomically(b, render(run_scan(spec, opts.threads)));
        same = same && slurp(a) == slurp(b) && !slurp(a).empty();
        fs::remove(a);
        fs::remove(b);
    }
    const double total = seconds_since(suite_start);
    return {same && total < 60.0, std::string(same ? "200x200 CSV and JSON scans byte-identical"
                                                   : "scan outputs differ") +
                                      "; selftest wall-clock " + fmt(total) + " s (< 60 s)"};
}

}  // namespace

std::vector<CheckResult> run_selftest(const SelftestOptions& opts) {
    const auto suite_start = Clock::now();
    const double tol = opts.tol;
    const std::vector<std::pair<std::string, std::function<Outcome()>>> checks{
        {"equivalence identity", equivalence_identity},
        {"closed-form endpoint H_l(1,N)", closed_form_endpoint},
        {"digamma anchors of dH/ds", digamma_anchors},
        {"slope anchor of L'(A)", slope_anchor},
        {"turning point of h_0'", turning_point},
        {"concavity of h_l", concavity},
        {"subcritical-everywhere regimes", [tol] { return subcritical_everywhere(tol); }},
        {"s_N existence and trichotomy", [tol] { return s_N_trichotomy(tol); }},
        {"classical recovery", classical_recovery},
        {"positive-l window structure", [tol] { return positive_ell_window(tol); }},
        {"small negative l keeps p_JL finite", negative_ell_finite},
        {"amplitude identity and Hardy constant", amplitude_identity},
        {"truncation profile suite", truncation_suite},
        {"deterministic scan", [&] { return deterministic_scan(opts, suite_start); }},
    };

    std::vector<CheckResult> results;
    int id = 0;
    for (const auto& [name, run] : checks) {
        CheckResult r;
        r.id = ++id;
        r.name = name;
        const auto t0 = Clock::now();
        try {
            const Outcome o = run();
            r.pass = o.pass;
            r.detail = o.detail;
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = std::string("exception: ") + e.what();
        }
        r.seconds = seconds_since(t0);
        results.push_back(std::move(r));
    }
    return results;
}

std::string format_check(const CheckResult& r) {
    char head[32];
    std::snprintf(head, sizeof head, "%s %2d ", r.pass ? "PASS" : "FAIL", r.id);
    return head + r.name + ": " + r.detail;
}

}  // namespace jlcrit
