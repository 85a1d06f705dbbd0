#include "satsec/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "satsec/errors.hpp"

namespace satsec::analytics {
namespace {

// Neumaier compensated sum.
struct Accumulator {
    double sum = 0.0;
    double comp = 0.0;

    void add(double x) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x)) comp += (sum - t) + x;
        else comp += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

void check_h_args(double rho, double a, double b, double q, double p) {
    if (!(rho > 0.0) || !(a > 0.0) || !(b > 0.0))
        throw DomainError("h_fun: rho, a and b must be > 0");
    if (!(q > -1.0)) throw DomainError("h_fun: q must be > -1");
    if (!(p < q)) throw DomainError("h_fun: need p < q for the outer integral to converge");
}

// log of the elementary prefactor and the 2F1 factor, H = exp(log_scale) * f
struct HParts {
    double log_scale;
    double f;
};

HParts h_parts(double rho, double a, double b, double q, double p) {
    check_h_args(rho, a, b, q, p);
    const double s = rho * b + a;
    HParts h;
    h.log_scale = (p + 1.0) * std::log(rho) + specfun::ln_gamma(q + 1.0) - (q + 1.0) * std::log(s) -
                  std::log(q - p);
    h.f = specfun::gauss_2f1(1.0, q + 1.0, q - p + 1.0, a / s);
    return h;
}

}  // namespace

double h_fun(double rho, double a, double b, double q, double p) {
    const HParts h = h_parts(rho, a, b, q, p);
    return std::exp(h.log_scale) * h.f;
}

SopResult sop1_lower_detail(const SystemParams& sys, SopGrouping grouping) {
    sys.validate();
    const int K = sys.K;
    if (K > kMaxEves)
        throw NumericError("sop1_lower: K = " + std::to_string(K) + " exceeds the supported maximum of " +
                           std::to_string(kMaxEves));
    const RfLinkParams& rf = sys.rf;
    const GeometryParams& g = sys.geo;
    const double eta = g.eta1;
    if (!(3.0 / eta < rf.m_E))
        throw DomainError("sop1_lower: need 3/eta1 < m_E for the bound to be finite");

    const geometry::ZCoefficients zc = geometry::z_coefficients(K, g);
    const double lamE = rf.lambda_E();
    const double a0 = sys.lambda_th() * rf.lambda_R() * rf.N_R / rf.N_E;
    const double rhoZ = g.rho_Z();
    const double log_front = rf.m_E * std::log(lamE) - specfun::ln_gamma(rf.m_E);

    Accumulator acc;
    auto H = [&](double rho, double q, double p, double log_w) {
        const HParts h = h_parts(rho, lamE, a0, q, p);
        return std::exp(log_w + h.log_scale) * h.f;
    };
    for (int k = 0; k < rf.L * rf.m_R; ++k) {
        const double q = k + rf.m_E - 1.0;
        const double log_w = log_front + k * std::log(a0) - specfun::ln_gamma(k + 1.0);
        const double p1 = k + 3.0 / eta - 1.0;
        const double p2 = k + 2.0 / eta - 1.0;
        const double h1_rho = H(rhoZ, q, p1, log_w), h1_one = H(1.0, q, p1, log_w);
        const double h2_rho = H(rhoZ, q, p2, log_w), h2_one = H(1.0, q, p2, log_w);
        for (int f = 1; f <= K; ++f) {
            const double p3 = k - 3.0 * f / eta - 1.0;
            const double h3_rho = H(rhoZ, q, p3, log_w), h3_one = H(1.0, q, p3, log_w);
            const double B1 = zc.B1[f - 1], B2 = zc.B2[f - 1], B3 = zc.B3[f - 1], A = zc.A[f - 1];
            acc.add(-B1 * (h1_rho - h1_one));
            acc.add(-B2 * (h2_rho - h2_one));
            if (grouping == SopGrouping::Split) {
                acc.add(-B3 * (h3_rho - h3_one));
                acc.add(-A * h3_one);
            } else {
                acc.add(-B3 * h3_rho);
                acc.add(-(A - B3) * h3_one);
            }
        }
    }
    acc.add(1.0);
    SopResult res;
    res.raw = acc.value();
    if (!std::isfinite(res.raw)) throw NumericError("sop1_lower: non-finite result, coefficients overflowed");
    res.value = std::clamp(res.raw, 0.0, 1.0);
    res.clamp = std::abs(res.raw - res.value);
    return res;
}

double sop1_lower(const SystemParams& sys) { return sop1_lower_detail(sys).value; }

double op2_epsilon(const SystemParams& sys) {
    const FsoLinkParams& f = sys.fso;
    const double r = f.r;
    const double Lr = f.L_r_linear();
    const double num = std::pow(4.0 * kPi * f.f_c, 2) * f.sigma_d_sq * std::pow(f.h() * f.a * f.b, r);
    const double den = f.P_R * kSpeedOfLight * kSpeedOfLight * f.zeta * f.zeta * Lr * Lr * std::pow(r, 2.0 * r);
    return num / den * sys.gamma_out;
}

namespace {

double op2_expression(double H_R, double dmin_sq, double dmax_sq, const SystemParams& sys,
                      const specfun::ToleranceConfig& tol) {
    if (sys.gamma_out == 0.0) return 0.0;
    const double eps = op2_epsilon(sys);
    const specfun::MeijerGSpec spec = specfun::gamma_gamma_cdf_integral_spec(sys.fso);
    const double I = specfun::gamma_gamma_cdf_prefactor(sys.fso);
    const double width = 2.0 * eps * sys.geo.r_D() * H_R * (1.0 - std::cos(sys.geo.Psi_D));
    const double v = I / width *
                     (specfun::meijer_g(spec, eps * dmax_sq, tol) - specfun::meijer_g(spec, eps * dmin_sq, tol));
    return std::clamp(v, 0.0, 1.0);
}

}  // namespace

double op2_fixed_relay(double H_R, const SystemParams& sys, const specfun::ToleranceConfig& tol) {
    sys.validate();
    const GeometryParams& g = sys.geo;
    const double lo = g.R_earth + g.H_min, hi = g.R_earth + g.R_S;
    if (H_R < lo * (1.0 - 1e-15) || H_R > hi * (1.0 + 1e-15))
        throw DomainError("op2_fixed_relay: H_R outside [R_earth + H_min, R_earth + R_S]");
    return op2_expression(H_R, geometry::d_d_sq_min(H_R, g), geometry::d_d_sq_max(H_R, g), sys, tol);
}

double op2_median(const SystemParams& sys, const geometry::RelayMedians& medians,
                  const specfun::ToleranceConfig& tol) {
    sys.validate();
    if (!(medians.H_R > 0.0) || !(medians.d_sq_max > medians.d_sq_min))
        throw DomainError("op2_median: medians are inconsistent");
    return op2_expression(medians.H_R, medians.d_sq_min, medians.d_sq_max, sys, tol);
}

double zipf_phi_mpc(const CachingParams& cache) {
    cache.validate();
    const double alpha = cache.alpha;
    if (alpha == 0.0) return static_cast<double>(cache.M) / static_cast<double>(cache.N);
    auto w = [alpha](std::int64_t n) {
        const double x = static_cast<double>(n);
        return alpha == 1.0 ? 1.0 / x : std::pow(x, -alpha);
    };
    // smallest weights first
    Accumulator tail, head;
    for (std::int64_t n = cache.N; n > cache.M; --n) tail.add(w(n));
    for (std::int64_t n = cache.M; n >= 1; --n) head.add(w(n));
    const double h = head.value();
    return h / (h + tail.value());
}

double zipf_phi_uc(const CachingParams& cache) {
    cache.validate();
    return static_cast<double>(cache.M) / static_cast<double>(cache.N);
}

double cache_hit_probability(const CachingParams& cache) {
    switch (cache.scheme) {
        case CachingScheme::MostPopular: return zipf_phi_mpc(cache);
        case CachingScheme::Uniform: return zipf_phi_uc(cache);
        case CachingScheme::None: return 0.0;
    }
    return 0.0;
}

double end_to_end_sop(double phi, double sop1, double op2) {
    auto check = [](double v, const char* name) {
        if (!(v >= 0.0 && v <= 1.0)) throw DomainError(std::string("end_to_end_sop: ") + name + " must lie in [0, 1]");
    };
    check(phi, "phi");
    check(sop1, "sop1");
    check(op2, "op2");
    return phi * op2 + (1.0 - phi) * (1.0 - (1.0 - sop1) * (1.0 - op2));
}

}  // namespace satsec::analytics
