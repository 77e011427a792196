#pragma once

// Bounded concave truncation Phi_mu of the identity, used to build bounded
// supersolutions. Phi_mu(u) = int_0^u phi0 up to a joint point zeta, then
// the closed-form solution Psi_mu of Psi' = mu^{p-1} Psi^p u^{-p}.

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace jlcrit {

/// C^1 cutoff on [0, M0 + 1]: 1 on [0, M0], nonincreasing, 0 at M0 + 1.
class CutoffProfile {
public:
    virtual ~CutoffProfile() = default;
    [[nodiscard]] virtual double M0() const noexcept = 0;
    [[nodiscard]] virtual double value(double u) const = 0;
    [[nodiscard]] virtual double derivative(double u) const = 0;
    /// int_0^u phi0
    [[nodiscard]] virtual double integral(double u) const = 0;
};

/// phi0(u) = 1 - 3t^2 + 2t^3 with t = u - M0 on [M0, M0 + 1].
class SmoothstepCutoff final : public CutoffProfile {
public:
    explicit SmoothstepCutoff(double M0);
    [[nodiscard]] double M0() const noexcept override { return m0_; }
    [[nodiscard]] double value(double u) const override;
    [[nodiscard]] double derivative(double u) const override;
    [[nodiscard]] double integral(double u) const override;

private:
    double m0_;
};

std::shared_ptr<const CutoffProfile> build_phi0(double M0);

struct TruncationProfile {
    double mu = 0.0;
    double p = 0.0;
    std::shared_ptr<const CutoffProfile> phi0;
    double zeta = 0.0;
    double psi_at_zeta = 0.0;  ///< int_0^zeta phi0

    [[nodiscard]] double M0() const { return phi0->M0(); }
};

/// Smallest root in (M0, M0+1) of phi0(u) u^p - mu^{p-1} (int_0^u phi0)^p.
double solve_zeta(double mu, double p, const CutoffProfile& phi0);

/// Requires mu in (0, 1), p > 1.
TruncationProfile build_truncation(double mu, double p, std::shared_ptr<const CutoffProfile> phi0);

double psi_mu(double u, const TruncationProfile& prof);
double psi_mu_prime(double u, const TruncationProfile& prof);
double psi_mu_second(double u, const TruncationProfile& prof);
/// lim_{u -> inf} Psi_mu(u), finite.
double psi_mu_limit(const TruncationProfile& prof);

double phi_mu(double u, const TruncationProfile& prof);
double phi_mu_prime(double u, const TruncationProfile& prof);

struct TruncationReport {
    bool ok = true;
    std::string violated;            ///< name of the first failing property
    std::optional<double> location;  ///< where it failed
    double c1_jump = 0.0;            ///< |Phi'(zeta-) - Phi'(zeta+)|
    double max_second_difference = 0.0;
    double sup_value = 0.0;  ///< Psi_mu(inf)
};

/// Default grid: dense on [0, zeta], then geometric out past the plateau.
std::vector<double> default_grid(const TruncationProfile& prof, int points = 2000);

/// Checks the identity region, C^1 joint, 0 < Phi' <= 1 and nonincreasing,
/// Phi(u) <= u, the differential inequality Phi' u^p >= mu^{p-1} Phi^p
/// (equality above zeta), concavity above zeta and bounded second differences.
TruncationReport verify_truncation(const TruncationProfile& prof, std::span<const double> grid,
                                   double rel_tol = 1e-10);

}  // namespace jlcrit
