#include "satsec/channels.hpp"

#include <cmath>
#include <limits>

#include "satsec/errors.hpp"
#include "satsec/specfun.hpp"

namespace satsec::channels {

double sample_gamma_power(double m, double Omega, Rng& rng) {
    if (!(m > 0.0) || !(Omega > 0.0)) throw DomainError("sample_gamma_power: m and Omega must be > 0");
    std::gamma_distribution<double> dist(m, Omega / m);
    double x = dist(rng);
    while (!(x > 0.0)) x = dist(rng);
    return x;
}

double cdf_gamma_power(double x, double m, double Omega) {
    if (x <= 0.0) return 0.0;
    return specfun::reg_lower_inc_gamma(m, m / Omega * x);
}

double sample_mrc_power(const RfLinkParams& link, Rng& rng) {
    if (link.L < 1) throw DomainError("sample_mrc_power: L must be >= 1");
    double s = 0.0;
    for (int i = 0; i < link.L; ++i) s += sample_gamma_power(link.m_R, link.Omega_R, rng);
    return s;
}

double sample_mrc_power_direct(const RfLinkParams& link, Rng& rng) {
    if (link.L < 1) throw DomainError("sample_mrc_power_direct: L must be >= 1");
    return sample_gamma_power(static_cast<double>(link.L) * link.m_R, link.Omega_R * link.L, rng);
}

double cdf_mrc_power(double x, const RfLinkParams& link) {
    if (x <= 0.0) return 0.0;
    // 1 - exp(-lambda x) sum_{k < L m} (lambda x)^k / k!
    const double t = link.lambda_R() * x;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < link.L * link.m_R; ++k) {
        term *= t / k;
        sum += term;
    }
    return 1.0 - std::exp(-t) * sum;
}

double avg_electrical_snr(const FsoLinkParams& link, double d_D) {
    if (!(d_D > 0.0)) throw DomainError("avg_electrical_snr: d_D must be > 0");
    const double fs = 4.0 * kPi * link.f_c * d_D / kSpeedOfLight;
    const double Lr = link.L_r_linear();
    return link.P_R * link.zeta * link.zeta * Lr * Lr / (fs * fs * link.sigma_d_sq);
}

double sample_gamma_gamma_snr(const FsoLinkParams& link, double omega_d, Rng& rng) {
    if (!(omega_d > 0.0)) throw DomainError("sample_gamma_gamma_snr: omega_d must be > 0");
    std::gamma_distribution<double> gx(link.a, 1.0 / link.a);
    std::gamma_distribution<double> gy(link.b, 1.0 / link.b);
    const double v = std::pow(uniform_open(rng), 1.0 / link.xi_sq());
    const double w = gx(rng) * gy(rng) * v / link.h();
    const double snr = omega_d * (link.r == 1 ? w : w * w);
    return snr > 0.0 ? snr : std::numeric_limits<double>::min();
}

}  // namespace satsec::channels
