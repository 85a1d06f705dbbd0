#include "satsec/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "satsec/errors.hpp"

namespace satsec::geometry {
namespace {

double binom(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

void check_K(int K) {
    if (K < 1) throw DomainError("K must be >= 1");
}

// 2x^3 - 3 H x^2 + H^3, proportional to the relay-distance CDF
double cap_poly(double x, double H) { return (2.0 * x - 3.0 * H) * x * x + H * H * H; }

}  // namespace

double cap_volume(const GeometryParams& g) {
    return kPi / 3.0 * cap_poly(g.R_S, g.H_min);
}

double cdf_d_r(double x, const GeometryParams& g) {
    if (x <= g.H_min) return 0.0;
    if (x >= g.R_S) return 1.0;
    return cap_poly(x, g.H_min) / cap_poly(g.R_S, g.H_min);
}

double pdf_d_r(double x, const GeometryParams& g) {
    if (x < g.H_min || x > g.R_S) return 0.0;
    return 2.0 * kPi / cap_volume(g) * (x * x - g.H_min * x);
}

double cdf_d_e(double x, const GeometryParams& g) {
    if (x <= 0.0) return 0.0;
    if (x >= g.R_S) return 1.0;
    return std::pow(x / g.R_S, 3);
}

double cdf_d_e_min(double x, int K, const GeometryParams& g) {
    check_K(K);
    return -std::expm1(K * std::log1p(-cdf_d_e(x, g)));
}

double pdf_d_e_min(double x, int K, const GeometryParams& g) {
    check_K(K);
    if (x < 0.0 || x > g.R_S) return 0.0;
    const double u = std::pow(x / g.R_S, 3);
    return K * std::pow(1.0 - u, K - 1) * 3.0 * x * x / std::pow(g.R_S, 3);
}

double pdf_d_e_pow_eta(double x, int K, const GeometryParams& g) {
    check_K(K);
    const double top = std::pow(g.R_S, g.eta1);
    if (!(x > 0.0) || x > top) return 0.0;
    // C(K,f) 3f (-1)^{f+1} / (eta R^{3f}) x^{3f/eta - 1}, with x^{3f/eta} / R^{3f} = (x^{1/eta}/R)^{3f}
    const double t = std::pow(x, 1.0 / g.eta1) / g.R_S;
    double sum = 0.0;
    for (int f = 1; f <= K; ++f) {
        const double sign = (f % 2 == 1) ? 1.0 : -1.0;
        sum += binom(K, f) * 3.0 * f * sign / g.eta1 * std::pow(t, 3.0 * f);
    }
    return sum / x;
}

ZCoefficients z_coefficients(int K, const GeometryParams& g) {
    check_K(K);
    const double R = g.R_S, H = g.H_min, eta = g.eta1;
    const double V = cap_volume(g);
    ZCoefficients c;
    c.K = K;
    c.eta1 = eta;
    for (int f = 1; f <= K; ++f) {
        const double sign = (f % 2 == 1) ? 1.0 : -1.0;  // (-1)^{f+1}
        const double ratio = std::pow(H / R, 3.0 * f);  // H^{3f} / R^{3f}
        const double base = binom(K, f) * 6.0 * kPi / (eta * V) * sign * f;
        c.B1.push_back(base * R * R * R / (3.0 * f + 3.0));
        c.B2.push_back(-base * H * R * R / (3.0 * f + 2.0));
        c.B3.push_back(base * H * H * H * ratio *
                       (f / (3.0 * f + 3.0) - 3.0 * f / (2.0 * (3.0 * f + 2.0)) + 1.0 / 6.0));
        const double a1 = binom(K, f) * kPi / (eta * V) * sign * f * cap_poly(R, H);
        const double a2 = binom(K, f) * kPi / (eta * V) * (-sign) * f * f *
                          (2.0 / (f + 1.0) * R * R * R - 9.0 / (3.0 * f + 2.0) * R * R * H + H * H * H / f +
                           (9.0 / (3.0 * f + 2.0) - 2.0 / (f + 1.0) - 1.0 / f) * H * H * H * ratio);
        c.A.push_back(a1 + a2);
    }
    return c;
}

double pdf_z(double z, const ZCoefficients& c, const GeometryParams& g) {
    const double eta = c.eta1;
    if (z > 1.0) {
        double s = 0.0;
        for (int f = 1; f <= c.K; ++f) s += c.A[f - 1] * std::pow(z, -3.0 * f / eta - 1.0);
        return s;
    }
    if (z < g.rho_Z() || !(z > 0.0)) return 0.0;
    double s = 0.0;
    for (int f = 1; f <= c.K; ++f) {
        s += c.B1[f - 1] * std::pow(z, 3.0 / eta - 1.0) + c.B2[f - 1] * std::pow(z, 2.0 / eta - 1.0) +
             c.B3[f - 1] * std::pow(z, -3.0 * f / eta - 1.0);
    }
    return s;
}

double sample_eves(int K, const GeometryParams& g, Rng& rng) {
    check_K(K);
    double u = 1.0;
    for (int i = 0; i < K; ++i) u = std::min(u, uniform_open(rng));
    return g.R_S * std::cbrt(u);
}

RelayPosition sample_relay(const GeometryParams& g, Rng& rng) {
    const double H = g.H_min, R = g.R_S;
    RelayPosition p;
    const double target = uniform_open(rng) * cap_poly(R, H);
    // Newton from the right end; cap_poly is increasing and convex on [H, R]
    double x = R, lo = H, hi = R;
    for (int it = 0; it < 100; ++it) {
        const double fx = cap_poly(x, H) - target;
        if (fx > 0.0) hi = x; else lo = x;
        const double d = 6.0 * x * (x - H);
        double nx = d > 0.0 ? x - fx / d : 0.5 * (lo + hi);
        if (!(nx > lo && nx < hi)) nx = 0.5 * (lo + hi);
        if (std::abs(nx - x) <= 1e-13 * R) {
            x = nx;
            break;
        }
        x = nx;
    }
    p.r_R = x;
    const double cos_min = std::min(1.0, H / x);
    const double ct = cos_min + (1.0 - cos_min) * uniform_open(rng);
    p.theta_R = std::acos(ct);
    p.psi_R = 2.0 * kPi * uniform_open(rng);
    p.height = std::clamp(x * ct, H, R);
    return p;
}

double d_d_sq_min(double H_R, const GeometryParams& g) {
    const double d = g.r_D() - H_R;
    return d * d;
}

double d_d_sq_max(double H_R, const GeometryParams& g) {
    const double rD = g.r_D();
    return rD * rD + H_R * H_R - 2.0 * rD * H_R * std::cos(g.Psi_D);
}

double sample_satellite_distance_sq(double H_R, const GeometryParams& g, Rng& rng) {
    // cos(theta_D) uniform on [cos Psi_D, 1]; written so the minimum is exact
    const double rD = g.r_D();
    const double one_minus_cos = uniform_open(rng) * (1.0 - std::cos(g.Psi_D));
    return d_d_sq_min(H_R, g) + 2.0 * rD * H_R * one_minus_cos;
}

double psi_r_from_psi_d(const GeometryParams& g) {
    return 2.0 * std::atan(g.r_D() / g.H_D * std::sin(g.Psi_D));
}

RelayMedians median_relay_quantities(const GeometryParams& g, std::uint64_t seed, std::size_t draws) {
    if (draws == 0) throw DomainError("median_relay_quantities: draws must be > 0");
    Rng rng = make_stream(seed, 0);
    std::vector<double> hr(draws), dmin(draws), dmax(draws);
    for (std::size_t i = 0; i < draws; ++i) {
        const double H_R = g.R_earth + sample_relay(g, rng).height;
        hr[i] = H_R;
        dmin[i] = d_d_sq_min(H_R, g);
        dmax[i] = d_d_sq_max(H_R, g);
    }
    auto median = [](std::vector<double>& v) {
        auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
        std::nth_element(v.begin(), mid, v.end());
        return *mid;
    };
    return {median(hr), median(dmin), median(dmax)};
}

RelativeRanges relay_relative_ranges(const GeometryParams& g) {
    const double lo = g.R_earth + g.H_min, hi = g.R_earth + g.R_S;
    RelativeRanges r;
    r.delta0 = (hi - lo) / lo;
    r.delta1 = (d_d_sq_min(lo, g) - d_d_sq_min(hi, g)) / d_d_sq_min(hi, g);
    const double a = d_d_sq_max(lo, g), b = d_d_sq_max(hi, g);
    r.delta2 = std::abs(a - b) / std::min(a, b);
    return r;
}

}  // namespace satsec::geometry
