#pragma once

#include "satsec/params.hpp"
#include "satsec/random.hpp"

namespace satsec::channels {

/// Nakagami-m channel power: Gamma with shape m and rate m / Omega.
double sample_gamma_power(double m, double Omega, Rng& rng);
double cdf_gamma_power(double x, double m, double Omega);

/// MRC combined power over L antennas, as the sum of L independent powers.
double sample_mrc_power(const RfLinkParams& link, Rng& rng);
/// Same law drawn in one step as Gamma(L m_R, lambda_R).
double sample_mrc_power_direct(const RfLinkParams& link, Rng& rng);
/// Finite-sum CDF of the combined power.
double cdf_mrc_power(double x, const RfLinkParams& link);

/// Average electrical SNR of the optical link at range d_D (m).
double avg_electrical_snr(const FsoLinkParams& link, double d_D);

/// Instantaneous SNR at D: omega_d (I_a V / h)^r with I_a the product of two
/// unit-mean Gamma variates and V = U^{1/xi^2} the pointing loss.
double sample_gamma_gamma_snr(const FsoLinkParams& link, double omega_d, Rng& rng);

}  // namespace satsec::channels
