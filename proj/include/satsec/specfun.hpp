#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "satsec/params.hpp"

namespace satsec::specfun {

struct ToleranceConfig {
    double rel_tol = 1e-12;
    double abs_tol = 1e-300;
    std::size_t max_terms = 20000;
    /// Separation applied to b-parameters whose poles coincide.
    double pole_perturbation = 1e-6;

    void validate() const;
};

/// ln Gamma(x) for x > 0.
double ln_gamma(double x);

/// ln Gamma(z) for complex z off the non-positive real axis. Any branch;
/// only exp() of the result is meaningful.
std::complex<double> ln_gamma(std::complex<double> z);

/// Gamma(x) for real x, including negative non-integers.
double gamma_fn(double x);

/// 1 / Gamma(x); zero at the non-positive integers.
double recip_gamma(double x);

/// psi(x) = d/dx ln Gamma(x); x must not be a non-positive integer.
double digamma(double x);

/// Regularized lower incomplete gamma P(s, x) = gamma(s, x) / Gamma(s).
double reg_lower_inc_gamma(double s, double x, const ToleranceConfig& tol = {});

/// Gauss hypergeometric 2F1(a, b; c; z) for 0 <= z < 1.
double gauss_2f1(double a, double b, double c, double z, const ToleranceConfig& tol = {});

/// Index counts and parameter lists of G^{m,n}_{p,q}.
struct MeijerGSpec {
    int m = 0;
    int n = 0;
    std::vector<double> a;  // p entries
    std::vector<double> b;  // q entries

    int p() const { return static_cast<int>(a.size()); }
    int q() const { return static_cast<int>(b.size()); }
    void validate() const;
};

/// Which evaluation route produced a Meijer-G value.
enum class MeijerRoute { ResidueSeries, ContourIntegral };

struct MeijerGResult {
    double value = 0.0;
    MeijerRoute route = MeijerRoute::ResidueSeries;
    std::size_t terms = 0;
    bool perturbed = false;
};

/// Meijer G-function for the index families G^{1,0}_{0,1}, G^{3,0}_{1,3},
/// G^{3r,1}_{r+1,3r+1} and G^{3r,2}_{r+2,3r+2} (r = 1, 2) at real z > 0.
///
/// The residue series over the poles of Gamma(b_j - s), j <= m, is the
/// primary route. Coincident poles (b-parameters spaced by integers) are split
/// by +/- pole_perturbation and the two evaluations averaged, which cancels the
/// first-order perturbation error. The series terms of these families grow like
/// exp(c z^{1/(q-p)}) before the sum settles, so when the rounding error
/// estimate of the summed residues exceeds the tolerance the Mellin-Barnes
/// integral is evaluated instead with a fixed trapezoidal rule on a vertical
/// contour.
MeijerGResult meijer_g_detail(const MeijerGSpec& spec, double z, const ToleranceConfig& tol = {});

double meijer_g(const MeijerGSpec& spec, double z, const ToleranceConfig& tol = {});

/// Residue series only; throws NumericError if cancellation exceeds tolerance.
MeijerGResult meijer_g_residue(const MeijerGSpec& spec, double z, const ToleranceConfig& tol = {});

/// Mellin-Barnes contour route only.
MeijerGResult meijer_g_contour(const MeijerGSpec& spec, double z, const ToleranceConfig& tol = {});

/// Delta(k, a) = a/k, (a+1)/k, ..., (a+k-1)/k
std::vector<double> delta_params(int k, double a);

/// Parameter lists of the unified Gamma-Gamma SNR law.
MeijerGSpec gamma_gamma_pdf_spec(const FsoLinkParams& link);
MeijerGSpec gamma_gamma_cdf_spec(const FsoLinkParams& link);
/// Antiderivative of the CDF kernel: G^{3r,2}_{r+2,3r+2}(. | 1, 2, K1+1; K2+1, 0, 1).
MeijerGSpec gamma_gamma_cdf_integral_spec(const FsoLinkParams& link);

/// Prefactor I of the CDF.
double gamma_gamma_cdf_prefactor(const FsoLinkParams& link);
/// rho = (h a b)^r / (Omega_D r^{2r})
double gamma_gamma_cdf_scale(const FsoLinkParams& link, double omega_d);

/// Density of the instantaneous SNR at D with average electrical SNR omega_d.
double gamma_gamma_snr_pdf(double x, const FsoLinkParams& link, double omega_d,
                           const ToleranceConfig& tol = {});

/// CDF of the instantaneous SNR at D.
double gamma_gamma_snr_cdf(double x, const FsoLinkParams& link, double omega_d,
                           const ToleranceConfig& tol = {});

}  // namespace satsec::specfun
