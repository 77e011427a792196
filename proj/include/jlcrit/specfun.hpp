#pragma once

// Scalar special functions on the positive real axis.
//
// Every argument must be finite and strictly positive; poles are rejected
// with DomainError rather than continued analytically.

namespace jlcrit::specfun {

inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;

/// ln Gamma(z), z > 0.
double log_gamma(double z);

/// psi(z) = d/dz ln Gamma(z), z > 0.
double digamma(double z);

/// psi'(z) = sum_{n>=0} 1/(z+n)^2, z > 0.
double trigamma(double z);

struct NormalizationConstants {
    double C_Ns;     ///< singular-integral constant of the fractional Laplacian
    double kappa_s;  ///< extension-problem constant 2^{1-2s} Gamma(1-s)/Gamma(s)
};

/// Requires N >= 1, 0 < s < 1 and N > 2s.
NormalizationConstants normalization_constants(int N, double s);

}  // namespace jlcrit::specfun
