#pragma once

#include "satsec/geometry.hpp"
#include "satsec/params.hpp"
#include "satsec/specfun.hpp"

namespace satsec::analytics {

/// H(rho, a, b, q, p) = int_rho^inf int_0^inf e^{-a x} x^q e^{-b x z} z^p dx dz
///   = rho^{p+1} Gamma(q+1) / ((q-p) (rho b + a)^{q+1}) 2F1(1, q+1; q-p+1; a/(rho b + a)).
/// Requires p < q so the outer integral converges.
double h_fun(double rho, double a, double b, double q, double p);

/// Which algebraically equal arrangement of the f-sum is used.
enum class SopGrouping {
    Split,     // B3 [H(rho_Z) - H(1)] + A H(1)
    Combined,  // B3 H(rho_Z) + (A - B3) H(1)
};

struct SopResult {
    double value = 0.0;  // clamped to [0, 1]
    double raw = 0.0;
    double clamp = 0.0;  // |raw - value|
};

/// Largest eavesdropper count accepted; the alternating binomial coefficients
/// lose all accuracy beyond it.
inline constexpr int kMaxEves = 20;

/// Lower bound of the S-R secrecy outage probability, P(gamma_R <= lambda gamma_E).
SopResult sop1_lower_detail(const SystemParams& sys, SopGrouping grouping = SopGrouping::Combined);
double sop1_lower(const SystemParams& sys);

/// epsilon of the R-D outage expression: the argument scale of the Meijer-G terms per unit d_D^2.
double op2_epsilon(const SystemParams& sys);

/// R-D outage probability for a relay at H_R = R_earth + h_R, satellite uniform on the dome.
double op2_fixed_relay(double H_R, const SystemParams& sys, const specfun::ToleranceConfig& tol = {});

/// Same expression evaluated at the median relay quantities.
double op2_median(const SystemParams& sys, const geometry::RelayMedians& medians,
                  const specfun::ToleranceConfig& tol = {});

/// Cache hit probability when the M most popular files are stored.
double zipf_phi_mpc(const CachingParams& cache);
/// Cache hit probability for uniform (popularity-blind) placement.
double zipf_phi_uc(const CachingParams& cache);
/// Hit probability for the configured scheme.
double cache_hit_probability(const CachingParams& cache);

/// phi OP2 + (1 - phi) [1 - (1 - SOP1)(1 - OP2)]
double end_to_end_sop(double phi, double sop1, double op2);

}  // namespace satsec::analytics
