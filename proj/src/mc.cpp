#include "satsec/mc.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <thread>
#include <vector>

#include "satsec/analytics.hpp"
#include "satsec/channels.hpp"
#include "satsec/errors.hpp"
#include "satsec/geometry.hpp"

namespace satsec::mc {

void TrialConfig::validate() const {
    if (trials < 1) throw DomainError("trials must be >= 1");
    if (batch_size < 1) throw DomainError("batch_size must be >= 1");
}

// Rejection-inversion after Hormann and Derflinger (1996).
ZipfSampler::ZipfSampler(std::int64_t N, double alpha) : N_(N), alpha_(alpha) {
    if (N < 1) throw DomainError("ZipfSampler: N must be >= 1");
    if (!(alpha >= 0.0)) throw DomainError("ZipfSampler: alpha must be >= 0");
    hx1_ = h_integral(1.5) - 1.0;
    hxn_ = h_integral(static_cast<double>(N) + 0.5);
    s_ = 2.0 - h_integral_inverse(h_integral(2.5) - h(2.0));
}

double ZipfSampler::h(double x) const { return std::exp(-alpha_ * std::log(x)); }

double ZipfSampler::h_integral(double x) const {
    // (x^{1-alpha} - 1) / (1 - alpha), continuous at alpha = 1
    const double lx = std::log(x);
    const double t = (1.0 - alpha_) * lx;
    const double helper = std::abs(t) > 1e-8 ? std::expm1(t) / t : 1.0 + 0.5 * t;
    return helper * lx;
}

double ZipfSampler::h_integral_inverse(double x) const {
    double t = x * (1.0 - alpha_);
    if (t < -1.0) t = -1.0;
    const double helper = std::abs(t) > 1e-8 ? std::log1p(t) / t : 1.0 - 0.5 * t;
    return std::exp(helper * x);
}

std::int64_t ZipfSampler::operator()(Rng& rng) const {
    if (N_ == 1) return 1;
    for (;;) {
        const double u = hxn_ + uniform_open(rng) * (hx1_ - hxn_);
        const double x = h_integral_inverse(u);
        auto k = static_cast<std::int64_t>(x + 0.5);
        k = std::clamp<std::int64_t>(k, 1, N_);
        const double dk = static_cast<double>(k);
        if (dk - x <= s_ || u >= h_integral(dk + 0.5) - h(dk)) return k;
    }
}

Estimate run(const TrialConfig& cfg, const std::function<bool(Rng&)>& event) {
    cfg.validate();
    const auto start = std::chrono::steady_clock::now();
    const std::uint64_t batches = (cfg.trials + cfg.batch_size - 1) / cfg.batch_size;
    std::vector<std::uint64_t> hits(batches, 0);
    std::atomic<std::uint64_t> next{0};

    auto worker = [&] {
        for (;;) {
            const std::uint64_t b = next.fetch_add(1);
            if (b >= batches) return;
            Rng rng = make_stream(cfg.seed, b);
            const std::uint64_t n = std::min(cfg.batch_size, cfg.trials - b * cfg.batch_size);
            std::uint64_t c = 0;
            for (std::uint64_t i = 0; i < n; ++i) c += event(rng) ? 1 : 0;
            hits[b] = c;
        }
    };
    unsigned workers = cfg.workers ? cfg.workers : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, batches));
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    std::uint64_t total = 0;
    for (auto h : hits) total += h;
    Estimate e;
    e.n = cfg.trials;
    e.p_hat = static_cast<double>(total) / static_cast<double>(cfg.trials);
    e.std_error = std::sqrt(e.p_hat * (1.0 - e.p_hat) / static_cast<double>(cfg.trials));
    e.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return e;
}

namespace {

struct SrDraw {
    double gamma_R;
    double gamma_E;
};

// One S-R trial: relay at r_R, eavesdropper chosen by the configured rule.
SrDraw draw_sr(const SystemParams& sys, double r_R, Rng& rng) {
    const RfLinkParams& rf = sys.rf;
    const GeometryParams& g = sys.geo;
    SrDraw d;
    d.gamma_R = sys.P_S * channels::sample_mrc_power(rf, rng) / (std::pow(r_R, g.eta1) * rf.N_R);
    if (sys.eve_rule == EveRule::Nearest) {
        const double dE = geometry::sample_eves(sys.K, g, rng);
        d.gamma_E = sys.P_S * channels::sample_gamma_power(rf.m_E, rf.Omega_E, rng) / (std::pow(dE, g.eta1) * rf.N_E);
    } else {
        d.gamma_E = 0.0;
        for (int i = 0; i < sys.K; ++i) {
            const double dE = geometry::sample_eves(1, g, rng);
            const double pw = channels::sample_gamma_power(rf.m_E, rf.Omega_E, rng);
            d.gamma_E = std::max(d.gamma_E, sys.P_S * pw / (std::pow(dE, g.eta1) * rf.N_E));
        }
    }
    return d;
}

bool rd_outage(const SystemParams& sys, double height, Rng& rng) {
    const double H_R = sys.geo.R_earth + height;
    const double d_sq = geometry::sample_satellite_distance_sq(H_R, sys.geo, rng);
    const double omega = channels::avg_electrical_snr(sys.fso, std::sqrt(d_sq));
    return channels::sample_gamma_gamma_snr(sys.fso, omega, rng) < sys.gamma_out;
}

}  // namespace

Estimate estimate_sop1_lower(const SystemParams& sys, const TrialConfig& cfg) {
    sys.validate();
    const double lam = sys.lambda_th();
    return run(cfg, [&sys, lam](Rng& rng) {
        const auto relay = geometry::sample_relay(sys.geo, rng);
        const SrDraw d = draw_sr(sys, relay.r_R, rng);
        return d.gamma_R <= lam * d.gamma_E;
    });
}

Estimate estimate_sop1_exact(const SystemParams& sys, const TrialConfig& cfg) {
    sys.validate();
    const double lam = sys.lambda_th();
    return run(cfg, [&sys, lam](Rng& rng) {
        const auto relay = geometry::sample_relay(sys.geo, rng);
        const SrDraw d = draw_sr(sys, relay.r_R, rng);
        if (sys.gamma_hold > 0.0 && d.gamma_R <= sys.gamma_hold) return true;
        return d.gamma_R <= lam * d.gamma_E + lam - 1.0;
    });
}

Estimate estimate_op2(const SystemParams& sys, const TrialConfig& cfg) {
    sys.validate();
    if (sys.gamma_out == 0.0) {
        // gamma_D < 0 never happens; skip the sampling
        Estimate e;
        e.n = cfg.trials;
        return e;
    }
    return run(cfg, [&sys](Rng& rng) {
        const auto relay = geometry::sample_relay(sys.geo, rng);
        return rd_outage(sys, relay.height, rng);
    });
}

Estimate estimate_end_to_end(const SystemParams& sys, const TrialConfig& cfg) {
    sys.validate();
    const double lam = sys.lambda_th();
    const ZipfSampler zipf(sys.cache.N, sys.cache.alpha);
    const double uc_hit = static_cast<double>(sys.cache.M) / static_cast<double>(sys.cache.N);
    return run(cfg, [&sys, &zipf, lam, uc_hit](Rng& rng) {
        const std::int64_t rank = zipf(rng);
        bool hit = false;
        switch (sys.cache.scheme) {
            case CachingScheme::MostPopular: hit = rank <= sys.cache.M; break;
            // popularity-blind placement: the requested file is cached with probability M/N
            case CachingScheme::Uniform: hit = uniform_open(rng) < uc_hit; break;
            case CachingScheme::None: hit = false; break;
        }
        const auto relay = geometry::sample_relay(sys.geo, rng);
        const bool rd = rd_outage(sys, relay.height, rng);
        if (hit) return rd;
        const SrDraw d = draw_sr(sys, relay.r_R, rng);
        return rd || d.gamma_R <= lam * d.gamma_E;
    });
}

Comparison compare(double analytic, const Estimate& est, double threshold) {
    double se = est.std_error;
    if (est.p_hat == 0.0 || est.p_hat == 1.0) se = est.n ? 1.0 / static_cast<double>(est.n) : 1.0;
    Comparison c;
    c.z = (analytic - est.p_hat) / se;
    c.pass = std::abs(c.z) <= threshold;
    return c;
}

}  // namespace satsec::mc
