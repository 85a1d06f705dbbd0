#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "satsec/params.hpp"
#include "satsec/random.hpp"

namespace satsec::mc {

struct TrialConfig {
    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 1;
    std::uint64_t batch_size = 1u << 16;
    unsigned workers = 0;  // 0 = hardware concurrency

    void validate() const;
};

struct Estimate {
    double p_hat = 0.0;
    double std_error = 0.0;  // sqrt(p (1 - p) / n); `stderr` is a macro in <cstdio>
    std::uint64_t n = 0;
    double wall_time = 0.0;  // s
};

/// Exact sampler of Zipf ranks 1..N with P(n) proportional to n^-alpha
/// (rejection-inversion, constant memory).
class ZipfSampler {
public:
    ZipfSampler(std::int64_t N, double alpha);
    std::int64_t operator()(Rng& rng) const;

private:
    double h(double x) const;
    double h_integral(double x) const;
    double h_integral_inverse(double x) const;

    std::int64_t N_;
    double alpha_;
    double hx1_ = 0.0, hxn_ = 0.0, s_ = 0.0;
};

/// Counts of trials for which the per-trial predicate fired, aggregated over
/// independently seeded batches. The result does not depend on the worker count.
Estimate run(const TrialConfig& cfg, const std::function<bool(Rng&)>& event);

/// gamma_R <= lambda gamma_E
Estimate estimate_sop1_lower(const SystemParams& sys, const TrialConfig& cfg);
/// gamma_R <= lambda gamma_E + lambda - 1; decode failure (gamma_R <= gamma_hold) also counts.
Estimate estimate_sop1_exact(const SystemParams& sys, const TrialConfig& cfg);
/// gamma_D < gamma_out with random relay and satellite positions.
Estimate estimate_op2(const SystemParams& sys, const TrialConfig& cfg);
/// Requested file from the Zipf library; hits depend only on R-D, misses on both hops.
Estimate estimate_end_to_end(const SystemParams& sys, const TrialConfig& cfg);

struct Comparison {
    double z = 0.0;
    bool pass = true;
};

/// (analytic - p_hat) / stderr, pass when |z| <= threshold; stderr is floored at 1/n.
Comparison compare(double analytic, const Estimate& est, double threshold = 3.0);

}  // namespace satsec::mc
