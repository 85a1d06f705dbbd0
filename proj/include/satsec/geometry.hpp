#pragma once

#include <cstdint>
#include <vector>

#include "satsec/params.hpp"
#include "satsec/random.hpp"

namespace satsec::geometry {

/// Relay position in spherical coordinates centred on S.
struct RelayPosition {
    double r_R = 0.0;      // m
    double theta_R = 0.0;  // polar angle from the vertical
    double psi_R = 0.0;    // azimuth
    double height = 0.0;   // r_R cos(theta_R), m
};

/// Coefficients of the piecewise density of Z = d_R^eta1 / d_E^eta1, index f-1.
struct ZCoefficients {
    int K = 0;
    double eta1 = 2.0;
    std::vector<double> A, B1, B2, B3;
};

/// Volume of the relay region: the part of the radius-R_S hemisphere above H_min.
double cap_volume(const GeometryParams& g);

double cdf_d_r(double x, const GeometryParams& g);
double pdf_d_r(double x, const GeometryParams& g);

/// Distance to a single uniformly placed Eve: x^3 / R_S^3.
double cdf_d_e(double x, const GeometryParams& g);
/// Distance to the nearest of K Eves.
double cdf_d_e_min(double x, int K, const GeometryParams& g);
double pdf_d_e_min(double x, int K, const GeometryParams& g);
/// Density of (nearest Eve distance)^eta1, binomial form.
double pdf_d_e_pow_eta(double x, int K, const GeometryParams& g);

ZCoefficients z_coefficients(int K, const GeometryParams& g);
double pdf_z(double z, const ZCoefficients& c, const GeometryParams& g);

/// Minimum of K i.i.d. Eve distances.
double sample_eves(int K, const GeometryParams& g, Rng& rng);
/// Point uniform by volume in the relay region (exact inversion of the radial law).
RelayPosition sample_relay(const GeometryParams& g, Rng& rng);
/// d_D^2 for a satellite uniform on the dome of half-angle Psi_D; H_R = R_earth + h_R.
double sample_satellite_distance_sq(double H_R, const GeometryParams& g, Rng& rng);

/// Extremes of d_D^2 for a relay at H_R.
double d_d_sq_min(double H_R, const GeometryParams& g);
double d_d_sq_max(double H_R, const GeometryParams& g);

/// Beamwidth of R seen from the satellite.
double psi_r_from_psi_d(const GeometryParams& g);

struct RelayMedians {
    double H_R = 0.0;
    double d_sq_min = 0.0;
    double d_sq_max = 0.0;
};

/// Empirical medians over `draws` relay positions from a fixed seed.
RelayMedians median_relay_quantities(const GeometryParams& g, std::uint64_t seed = 20240607,
                                     std::size_t draws = 1'000'000);

/// (max - min) / min of H_R, d_D,min^2 and d_D,max^2 over the relay region.
struct RelativeRanges {
    double delta0 = 0.0;
    double delta1 = 0.0;
    double delta2 = 0.0;
};
RelativeRanges relay_relative_ranges(const GeometryParams& g);

}  // namespace satsec::geometry
