#include <doctest.h>

#include <cmath>
#include <vector>

#include "satsec/analytics.hpp"
#include "satsec/errors.hpp"
#include "satsec/geometry.hpp"
#include "satsec/mc.hpp"

using namespace satsec;
using namespace satsec::mc;

namespace {

TrialConfig cfg(std::uint64_t trials, std::uint64_t seed, unsigned workers = 0) {
    TrialConfig c;
    c.trials = trials;
    c.seed = seed;
    c.workers = workers;
    return c;
}

SystemParams at_power(double dbw) {
    SystemParams s;
    s.fso.P_R = db_to_linear(dbw);
    return s;
}

double combined_se(const Estimate& a, const Estimate& b) { return std::hypot(a.std_error, b.std_error); }

}  // namespace

TEST_CASE("results do not depend on the worker count") {
    const SystemParams sys;
    const auto one = estimate_sop1_lower(sys, cfg(300'000, 9, 1));
    const auto four = estimate_sop1_lower(sys, cfg(300'000, 9, 4));
    CHECK(one.p_hat == four.p_hat);
    CHECK(one.std_error == four.std_error);
    const auto e1 = estimate_end_to_end(sys, cfg(200'000, 4, 1));
    const auto e4 = estimate_end_to_end(sys, cfg(200'000, 4, 4));
    CHECK(e1.p_hat == e4.p_hat);
    CHECK(estimate_sop1_lower(sys, cfg(300'000, 10, 1)).p_hat != one.p_hat);
}

TEST_CASE("run counts a predicate") {
    const auto e = run(cfg(100'000, 1), [](Rng& rng) { return uniform_open(rng) < 0.25; });
    CHECK(e.n == 100'000);
    CHECK(std::abs(e.p_hat - 0.25) < 4 * e.std_error);
    CHECK(e.std_error == doctest::Approx(std::sqrt(e.p_hat * (1 - e.p_hat) / 1e5)).epsilon(1e-12));
    const auto one = run(cfg(1, 3), [](Rng& rng) { return uniform_open(rng) < 0.5; });
    CHECK((one.p_hat == 0.0 || one.p_hat == 1.0));
    TrialConfig bad;
    bad.trials = 0;
    CHECK_THROWS_AS(bad.validate(), DomainError);
    bad = {};
    bad.batch_size = 0;
    CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("sop1 estimators") {
    SystemParams sys;
    const auto lower = estimate_sop1_lower(sys, cfg(1'000'000, 21));
    CHECK(compare(analytics::sop1_lower(sys), lower).pass);
    const auto exact = estimate_sop1_exact(sys, cfg(1'000'000, 22));
    CHECK(exact.p_hat >= lower.p_hat - 4 * combined_se(exact, lower));

    SystemParams tiny = sys;
    tiny.C_th = 1e-9;
    const auto tl = estimate_sop1_lower(tiny, cfg(200'000, 23));
    const auto te = estimate_sop1_exact(tiny, cfg(200'000, 23));
    CHECK(std::abs(tl.p_hat - te.p_hat) < 4 * combined_se(tl, te) + 1e-5);

    SystemParams hold = sys;
    hold.gamma_hold = 1e12;
    CHECK(estimate_sop1_exact(hold, cfg(20'000, 24)).p_hat == 1.0);

    SystemParams huge = sys;
    huge.C_th = 60.0;
    CHECK(estimate_sop1_lower(huge, cfg(20'000, 25)).p_hat == 1.0);

    SystemParams maxsnr = sys;
    maxsnr.eve_rule = EveRule::MaxSnr;
    // the strongest of K Eves beats the nearest one's draw at least as often
    const auto m = estimate_sop1_lower(maxsnr, cfg(400'000, 26));
    CHECK(m.p_hat >= lower.p_hat - 4 * combined_se(m, lower));
}

TEST_CASE("op2 estimator") {
    SystemParams sys = at_power(-20.0);
    const auto med = geometry::median_relay_quantities(sys.geo);
    const auto e = estimate_op2(sys, cfg(1'000'000, 31));
    CHECK(compare(analytics::op2_median(sys, med), e).pass);

    sys.gamma_out = 0.0;
    CHECK(estimate_op2(sys, cfg(1000, 32)).p_hat == 0.0);

    double prev = 1.0, prev_se = 0.0;
    for (double dbw : {-35.0, -25.0, -15.0, -5.0}) {
        const auto v = estimate_op2(at_power(dbw), cfg(100'000, 33));
        CHECK(v.p_hat <= prev + 4 * std::hypot(v.std_error, prev_se));
        prev = v.p_hat;
        prev_se = v.std_error;
    }
}

TEST_CASE("end-to-end estimator") {
    SystemParams sys = at_power(-20.0);
    const auto med = geometry::median_relay_quantities(sys.geo);
    const double phi = analytics::cache_hit_probability(sys.cache);
    const double closed = analytics::end_to_end_sop(phi, analytics::sop1_lower(sys), analytics::op2_median(sys, med));
    const auto e = estimate_end_to_end(sys, cfg(1'000'000, 41));
    CHECK(std::abs(e.p_hat - closed) <= std::max(3 * e.std_error, 1e-3));

    SystemParams full = sys;
    full.cache.N = full.cache.M = 1000;
    const auto f = estimate_end_to_end(full, cfg(300'000, 42));
    const auto o = estimate_op2(full, cfg(300'000, 43));
    CHECK(std::abs(f.p_hat - o.p_hat) < 4 * combined_se(f, o));

    // more skewed popularity, more hits, lower outage
    double prev = 1.0;
    for (double a : {0.5, 1.0, 1.5}) {
        SystemParams s = at_power(0.0);
        s.cache.alpha = a;
        const auto v = estimate_end_to_end(s, cfg(300'000, 44));
        CHECK(v.p_hat < prev);
        prev = v.p_hat;
    }
}

TEST_CASE("Zipf sampler frequencies") {
    const ZipfSampler z(1'000'000, 1.0);
    Rng rng = make_stream(50, 0);
    const int n = 1'000'000;
    std::vector<double> counts(12, 0.0);
    bool in_range = true;
    for (int i = 0; i < n; ++i) {
        const auto k = z(rng);
        in_range = in_range && k >= 1 && k <= 1'000'000;
        if (k <= 10) counts[static_cast<std::size_t>(k)] += 1.0;
        else counts[11] += 1.0;
    }
    CHECK(in_range);
    CachingParams c;
    c.N = 1'000'000;
    c.alpha = 1.0;
    double head = 0.0;
    for (int k = 1; k <= 10; ++k) {
        c.M = k;
        const double p = analytics::zipf_phi_mpc(c) - head;
        head += p;
        CHECK(std::abs(counts[static_cast<std::size_t>(k)] - n * p) < 4 * std::sqrt(n * p * (1 - p)));
    }
    CHECK(std::abs(counts[11] - n * (1 - head)) < 4 * std::sqrt(n * head * (1 - head)));

    const ZipfSampler flat(5, 0.0);
    std::vector<int> seen(6, 0);
    for (int i = 0; i < 50'000; ++i) ++seen[static_cast<std::size_t>(flat(rng))];
    for (int k = 1; k <= 5; ++k) CHECK(std::abs(seen[static_cast<std::size_t>(k)] - 10'000) < 4 * std::sqrt(8000.0));
    CHECK(ZipfSampler(1, 1.0)(rng) == 1);
    CHECK_THROWS_AS(ZipfSampler(0, 1.0), DomainError);
}

TEST_CASE("compare") {
    Estimate e;
    e.p_hat = 0.1;
    e.std_error = 0.01;
    e.n = 900;
    CHECK(compare(0.1, e).z == 0.0);
    CHECK(compare(0.1, e).pass);
    CHECK_FALSE(compare(0.15, e).pass);
    Estimate zero;
    zero.n = 1'000'000;
    CHECK(compare(1e-8, zero).pass);
    CHECK_FALSE(compare(1e-5, zero).pass);
}
