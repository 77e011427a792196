#include "jlcrit/truncation.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "jlcrit/errors.hpp"

namespace jlcrit {

SmoothstepCutoff::SmoothstepCutoff(double M0) : m0_(M0) {
    if (!std::isfinite(M0) || !(M0 > 0.0)) {
        throw DomainError("build_phi0: requires M0 > 0");
    }
}

double SmoothstepCutoff::value(double u) const {
    const double t = std::clamp(u - m0_, 0.0, 1.0);
    return 1.0 - t * t * (3.0 - 2.0 * t);
}

double SmoothstepCutoff::derivative(double u) const {
    const double t = std::clamp(u - m0_, 0.0, 1.0);
    return -6.0 * t * (1.0 - t);
}

double SmoothstepCutoff::integral(double u) const {
    if (u <= m0_) {
        return std::max(u, 0.0);
    }
    const double t = std::min(u - m0_, 1.0);
    // int_0^t (1 - 3r^2 + 2r^3) dr
    return m0_ + t - t * t * t + 0.5 * t * t * t * t;
}

std::shared_ptr<const CutoffProfile> build_phi0(double M0) {
    return std::make_shared<SmoothstepCutoff>(M0);
}

namespace {

void check_mu_p(double mu, double p) {
    if (!(mu > 0.0 && mu < 1.0)) {
        throw DomainError("truncation: requires 0 < mu < 1");
    }
    if (!std::isfinite(p) || !(p > 1.0)) {
        throw DomainError("truncation: requires p > 1");
    }
}

// sign of phi0(u) u^p - mu^{p-1} I(u)^p, evaluated in log form
double zeta_residual(double u, double mu, double p, const CutoffProfile& phi0) {
    const double v = phi0.value(u);
    if (!(v > 0.0)) {
        return -1.0;
    }
    return std::log(v) + p * std::log(u) - (p - 1.0) * std::log(mu) -
           p * std::log(phi0.integral(u));
}

}  // namespace

double solve_zeta(double mu, double p, const CutoffProfile& phi0) {
    check_mu_p(mu, p);
    const double m0 = phi0.M0();
    const auto F = [&](double u) { return zeta_residual(u, mu, p, phi0); };
    if (!(F(m0) > 0.0)) {
        throw NumericFailure("solve_zeta: residual not positive at M0");
    }
    constexpr int kScan = 1024;
    double lo = m0;
    double hi = m0 + 1.0;
    for (int i = 1; i <= kScan; ++i) {
        const double u = m0 + static_cast<double>(i) / kScan;
        if (!(F(u) > 0.0)) {
            hi = u;
            break;
        }
        lo = u;
    }
    if (F(hi) > 0.0) {
        throw NumericFailure("solve_zeta: no sign change on (M0, M0 + 1)");
    }
    // Keep lo on the positive side so the residual at zeta is >= 0.
    for (int it = 0; it < 200; ++it) {
        const double mid = lo + 0.5 * (hi - lo);
        if (mid <= lo || mid >= hi) break;
        (F(mid) > 0.0 ? lo : hi) = mid;
    }
    return lo;
}

TruncationProfile build_truncation(double mu, double p,
                                   std::shared_ptr<const CutoffProfile> phi0) {
    check_mu_p(mu, p);
    if (!phi0) {
        throw DomainError("build_truncation: cutoff profile is null");
    }
    TruncationProfile prof;
    prof.mu = mu;
    prof.p = p;
    prof.zeta = solve_zeta(mu, p, *phi0);
    prof.psi_at_zeta = phi0->integral(prof.zeta);
    prof.phi0 = std::move(phi0);
    if (!(prof.zeta > prof.M0() && prof.zeta < prof.M0() + 1.0)) {
        throw NumericFailure("build_truncation: joint point outside (M0, M0 + 1)");
    }
    if (!(prof.psi_at_zeta < prof.zeta)) {
        throw NumericFailure("build_truncation: int_0^zeta phi0 must stay below zeta");
    }
    return prof;
}

namespace {

// c = (mu a / zeta)^q with a = Psi(zeta), q = p - 1; c < 1.
double joint_ratio(const TruncationProfile& prof) {
    const double q = prof.p - 1.0;
    return std::pow(prof.mu * prof.psi_at_zeta / prof.zeta, q);
}

// B(u) = 1 + (mu a/u)^q - (mu a/zeta)^q, so that Psi(u) = a B(u)^{-1/q}.
double psi_base(double u, const TruncationProfile& prof) {
    const double q = prof.p - 1.0;
    return 1.0 + joint_ratio(prof) * std::expm1(q * std::log(prof.zeta / u));
}

void check_tail(double u, const TruncationProfile& prof, const char* fn) {
    if (!(u >= prof.zeta)) {
        throw DomainError(std::string(fn) + ": requires u >= zeta");
    }
}

}  // namespace

double psi_mu(double u, const TruncationProfile& prof) {
    check_tail(u, prof, "psi_mu");
    if (std::isinf(u)) return psi_mu_limit(prof);
    const double q = prof.p - 1.0;
    return prof.psi_at_zeta * std::exp(-std::log(psi_base(u, prof)) / q);
}

double psi_mu_prime(double u, const TruncationProfile& prof) {
    check_tail(u, prof, "psi_mu_prime");
    // d/du [a B^{-1/q}] = Psi (mu a / u)^q / (u B)
    const double q = prof.p - 1.0;
    const double a = prof.psi_at_zeta;
    return psi_mu(u, prof) * std::pow(prof.mu * a / u, q) / (u * psi_base(u, prof));
}

double psi_mu_second(double u, const TruncationProfile& prof) {
    check_tail(u, prof, "psi_mu_second");
    const double q = prof.p - 1.0;
    const double psi = psi_mu(u, prof);
    const double k = std::pow(prof.mu * psi / u, q);
    // p (Psi/u) (mu Psi/u)^q (1/u) ((mu Psi/u)^q - 1)
    return prof.p * (psi / u) * k / u * (k - 1.0);
}

double psi_mu_limit(const TruncationProfile& prof) {
    const double q = prof.p - 1.0;
    return prof.psi_at_zeta * std::exp(-std::log1p(-joint_ratio(prof)) / q);
}

double phi_mu(double u, const TruncationProfile& prof) {
    if (!(u >= 0.0)) {
        throw DomainError("phi_mu: requires u >= 0");
    }
    return u <= prof.zeta ? prof.phi0->integral(u) : psi_mu(u, prof);
}

double phi_mu_prime(double u, const TruncationProfile& prof) {
    if (!(u >= 0.0)) {
        throw DomainError("phi_mu_prime: requires u >= 0");
    }
    return u <= prof.zeta ? prof.phi0->value(u) : psi_mu_prime(u, prof);
}

std::vector<double> default_grid(const TruncationProfile& prof, int points) {
    points = std::max(points, 16);
    const double zeta = prof.zeta;
    const double q = prof.p - 1.0;
    const double u_max =
        std::max(zeta + 10.0 * (psi_mu_limit(prof) - prof.psi_at_zeta),
                 zeta * std::min(std::pow(1e3, 1.0 / q), 1e12));
    const int inner = points / 2;
    const int outer = points - inner;
    std::vector<double> grid;
    grid.reserve(points + 2);
    for (int i = 0; i <= inner; ++i) {
        grid.push_back(zeta * i / inner);
    }
    grid.push_back(prof.M0());
    const double ratio = std::log(u_max / zeta);
    for (int i = 1; i <= outer; ++i) {
        grid.push_back(zeta * std::exp(ratio * i / outer));
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

TruncationReport verify_truncation(const TruncationProfile& prof, std::span<const double> grid,
                                   double rel_tol) {
    TruncationReport rep;
    const auto fail = [&rep](const char* what, double where) {
        if (rep.ok) {
            rep.ok = false;
            rep.violated = what;
            rep.location = where;
        }
    };

    const double zeta = prof.zeta;
    const double m0 = prof.M0();
    const double q = prof.p - 1.0;

    rep.c1_jump = std::abs(prof.phi0->value(zeta) - psi_mu_prime(zeta, prof));
    if (rep.c1_jump > rel_tol) fail("C1 matching at zeta", zeta);

    rep.sup_value = psi_mu_limit(prof);
    if (!std::isfinite(rep.sup_value) || rep.sup_value < prof.psi_at_zeta) {
        fail("finite limit of Psi_mu", zeta);
    }
    if (!(prof.psi_at_zeta < zeta)) fail("Psi_mu(zeta) < zeta", zeta);

    double prev_slope = 1.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double u = grid[i];
        if (!(u >= 0.0)) {
            fail("grid point must be >= 0", u);
            continue;
        }
        const double val = phi_mu(u, prof);
        const double slope = phi_mu_prime(u, prof);

        if (u <= m0 && std::abs(val - u) > rel_tol * std::max(u, 1.0)) fail("identity on [0, M0]", u);
        if (!(slope > 0.0) || slope > 1.0) fail("0 < Phi' <= 1", u);
        if (slope > prev_slope * (1.0 + rel_tol)) fail("Phi' nonincreasing", u);
        prev_slope = slope;
        if (val > u * (1.0 + rel_tol)) fail("Phi(u) <= u", u);

        if (u > 0.0) {
            // Phi' u^p >= mu^{p-1} Phi^p, i.e. Phi' >= (Phi/u) (mu Phi/u)^q
            const double rhs = (val / u) * std::pow(prof.mu * val / u, q);
            if (u > zeta) {
                if (std::abs(slope - rhs) > rel_tol * rhs) fail("differential equality above zeta", u);
            } else if (u <= m0) {
                if (!(slope > rhs)) fail("strict differential inequality on (0, M0]", u);
            } else if (slope < rhs * (1.0 - rel_tol)) {
                fail("differential inequality on (M0, zeta]", u);
            }
        }

        const double second = u > zeta ? psi_mu_second(u, prof) : prof.phi0->derivative(u);
        if (!std::isfinite(second)) fail("bounded second derivative", u);
        rep.max_second_difference = std::max(rep.max_second_difference, std::abs(second));
        if (u > zeta && second > 0.0) fail("Psi_mu'' <= 0", u);
        if (u > zeta && val > rep.sup_value * (1.0 + rel_tol)) fail("Psi_mu bounded by its limit", u);

        // chord test: Psi lies above the chord through its neighbours
        if (i > 0 && i + 1 < grid.size() && grid[i - 1] > zeta) {
            const double u0 = grid[i - 1];
            const double u2 = grid[i + 1];
            const double w = (u - u0) / (u2 - u0);
            const double chord = (1.0 - w) * psi_mu(u0, prof) + w * psi_mu(u2, prof);
            if (chord - val > rel_tol) fail("concavity of Psi_mu (second differences)", u);
        }
    }
    return rep;
}

}  // namespace jlcrit
