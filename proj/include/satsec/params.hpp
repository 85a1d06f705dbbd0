#pragma once

#include <cmath>
#include <cstdint>

namespace satsec {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

/// Nakagami-m S-R (per antenna) and S-Eve links.
struct RfLinkParams {
    int m_R = 2;
    int m_E = 2;
    double Omega_R = 1.9;
    double Omega_E = 0.5;
    int L = 8;            // relay antennas, MRC combined
    double N_R = 1.0;     // W
    double N_E = 1.0;     // W

    double lambda_R() const { return m_R / Omega_R; }
    double lambda_E() const { return m_E / Omega_E; }
    void validate() const;
};

/// Detection type at the satellite.
enum class Detection : int { Heterodyne = 1, IntensityModulation = 2 };

/// Gamma-Gamma turbulence with pointing error on the R-D optical link.
struct FsoLinkParams {
    double a = 15.47;
    double b = 14.6;
    double xi = 1.1;            // beam-radius to jitter ratio
    int r = 2;                  // 1 = HD, 2 = IM/DD
    double zeta = 0.5;          // optical-to-electrical conversion
    double L_r_dB = 81.0;       // aggregate gain/loss term
    double f_c = 193.4e12;      // Hz
    double sigma_d_sq = 1e-14;  // W
    double P_R = 1.0;           // W

    double xi_sq() const { return xi * xi; }
    /// h = xi^2 / (xi^2 + 1)
    double h() const { return xi_sq() / (xi_sq() + 1.0); }
    double L_r_linear() const { return db_to_linear(L_r_dB); }
    void validate() const;
};

/// Coverage hemisphere of S, relay cap, and satellite dome.
struct GeometryParams {
    double R_S = 300.0;              // m
    double H_min = 80.0;             // m
    double Psi_D = kPi / 12.0;       // rad
    double H_D = 550e3;              // m
    double R_earth = 6371e3;         // m
    double eta1 = 2.0;               // S-R / S-Eve path-loss exponent

    double r_D() const { return R_earth + H_D; }
    /// Lower edge of the support of d_R^eta1 / d_E^eta1.
    double rho_Z() const { return std::pow(H_min / R_S, eta1); }
    void validate() const;
};

/// Which files the relay keeps.
enum class CachingScheme {
    MostPopular,  // top-M files by Zipf rank
    Uniform,      // M files regardless of popularity, hit probability M/N
    None,
};

/// Zipf-popularity library and relay cache.
struct CachingParams {
    std::int64_t N = 1'000'000;
    std::int64_t M = 10;
    double alpha = 1.0;
    CachingScheme scheme = CachingScheme::MostPopular;

    void validate() const;
};

/// How the eavesdropper that determines gamma_E is chosen.
enum class EveRule { Nearest, MaxSnr };

struct SystemParams {
    double P_S = 10.0;         // W (10 dBW)
    double C_th = 0.01;        // bits/s/Hz
    double gamma_hold = 0.0;   // decode threshold at R
    double gamma_out = 1.0;    // outage threshold at D (0 dB)
    int K = 3;                 // eavesdroppers
    RfLinkParams rf;
    FsoLinkParams fso;
    GeometryParams geo;
    CachingParams cache;
    EveRule eve_rule = EveRule::Nearest;

    /// lambda = 2^C_th
    double lambda_th() const { return std::exp2(C_th); }
    void validate() const;
};

}  // namespace satsec
