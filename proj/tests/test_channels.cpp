#include <doctest.h>

#include <cmath>
#include <vector>

#include "satsec/channels.hpp"
#include "satsec/errors.hpp"
#include "satsec/specfun.hpp"
#include "support/ks.hpp"

using namespace satsec;
using namespace satsec::channels;

namespace {

constexpr int kDraws = 1'000'000;

// Finite-sum Gamma CDF for integer shape: 1 - e^{-y} sum_{k<n} y^k / k!
double erlang_cdf(double x, int n, double rate) {
    const double y = rate * x;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < n; ++k) {
        term *= y / k;
        sum += term;
    }
    return 1.0 - std::exp(-y) * sum;
}

}  // namespace

TEST_CASE("Nakagami power sampler") {
    Rng rng = make_stream(10, 0);
    std::vector<double> xs(kDraws);
    const double Omega = 0.5;
    for (auto& x : xs) x = sample_gamma_power(1.0, Omega, rng);
    CHECK(oracle::ks_statistic(xs, [&](double x) { return -std::expm1(-x / Omega); }) < 0.002);

    const double m = 2.0, W = 1.9;
    double mean = 0.0;
    bool positive = true;
    for (auto& x : xs) {
        x = sample_gamma_power(m, W, rng);
        mean += x;
        positive = positive && x > 0.0;
    }
    mean /= kDraws;
    CHECK(positive);
    CHECK(std::abs(mean - W) < 4.0 * W / std::sqrt(m * kDraws));
    CHECK(oracle::ks_statistic(xs, [&](double x) { return cdf_gamma_power(x, m, W); }) < 0.002);
    for (double x : {0.1, 1.0, 4.0})
        CHECK(cdf_gamma_power(x, m, W) == doctest::Approx(erlang_cdf(x, 2, m / W)).epsilon(1e-13));
    CHECK_THROWS_AS(sample_gamma_power(0.0, 1.0, rng), DomainError);
}

TEST_CASE("MRC combined power") {
    RfLinkParams link;
    link.L = 8;
    link.m_R = 2;
    link.Omega_R = 1.9;
    Rng rng = make_stream(11, 0);
    std::vector<double> sum(kDraws), direct(kDraws);
    double mean = 0.0;
    for (int i = 0; i < kDraws; ++i) {
        sum[i] = sample_mrc_power(link, rng);
        direct[i] = sample_mrc_power_direct(link, rng);
        mean += sum[i];
    }
    mean /= kDraws;
    const double shape = link.L * link.m_R;
    CHECK(std::abs(mean - link.L * link.Omega_R) < 4.0 * link.L * link.Omega_R / std::sqrt(shape * kDraws));
    for (double x : {2.0, 15.2, 30.0})
        CHECK(cdf_mrc_power(x, link) == doctest::Approx(erlang_cdf(x, 16, link.lambda_R())).epsilon(1e-12));
    std::vector<double> copy = sum;
    CHECK(oracle::ks_statistic(copy, [&](double x) { return cdf_mrc_power(x, link); }) < 0.002);
    CHECK(oracle::ks_two_sample(sum, direct) < 0.003);

    // one antenna draws exactly one Nakagami power from the stream
    link.L = 1;
    Rng a = make_stream(12, 0), b = make_stream(12, 0);
    for (int i = 0; i < 100; ++i) CHECK(sample_mrc_power(link, a) == sample_gamma_power(link.m_R, link.Omega_R, b));
}

TEST_CASE("average electrical SNR") {
    FsoLinkParams link;
    link.P_R = 1.0;
    const double d = 550e3;
    const double w = avg_electrical_snr(link, d);
    CHECK(avg_electrical_snr(link, 2 * d) == doctest::Approx(w / 4).epsilon(1e-14));
    link.P_R = 2.0;
    CHECK(avg_electrical_snr(link, d) == doctest::Approx(2 * w).epsilon(1e-14));

    // the same link budget in dB
    const double fs_db = 20 * std::log10(4 * kPi * link.f_c * d / kSpeedOfLight);
    const double want_db = 10 * std::log10(1.0) + 20 * std::log10(link.zeta) + 2 * link.L_r_dB - fs_db -
                           10 * std::log10(link.sigma_d_sq);
    CHECK(10 * std::log10(w) == doctest::Approx(want_db).epsilon(1e-12));
    CHECK_THROWS_AS(avg_electrical_snr(link, 0.0), DomainError);
}

TEST_CASE("gamma-gamma SNR sampler") {
    struct Case {
        double a, b, xi;
        int r;
        double omega;
    };
    for (const Case c : {Case{15.47, 14.6, 1.1, 2, 10.0}, Case{3.62, 3.29, 1.1, 1, 10.0}}) {
        FsoLinkParams link;
        link.a = c.a;
        link.b = c.b;
        link.xi = c.xi;
        link.r = c.r;
        Rng rng = make_stream(13, static_cast<std::uint64_t>(c.r));
        std::vector<double> xs(kDraws);
        bool positive = true;
        for (auto& x : xs) {
            x = sample_gamma_gamma_snr(link, c.omega, rng);
            positive = positive && x > 0.0;
        }
        CHECK(positive);
        const double d = oracle::ks_upper_bound(
            xs, [&](double x) { return specfun::gamma_gamma_snr_cdf(x, link, c.omega); });
        INFO("a=" << c.a << " r=" << c.r);
        CHECK(d < 0.002);
    }
}
