#include <algorithm>
#include <cmath>

#include "satsec/errors.hpp"
#include "satsec/specfun.hpp"

namespace satsec::specfun {
namespace {

void check_link(const FsoLinkParams& link) {
    if (!(link.a > 0.0) || !(link.b > 0.0)) throw DomainError("gamma-gamma: a and b must be > 0");
    if (!(link.xi > 0.0)) throw DomainError("gamma-gamma: xi must be > 0");
    if (link.r != 1 && link.r != 2) throw DomainError("gamma-gamma: r must be 1 or 2");
}

void check_omega(double omega_d) {
    if (!(omega_d > 0.0) || !std::isfinite(omega_d)) throw DomainError("gamma-gamma: omega_d must be > 0");
}

void append(std::vector<double>& v, const std::vector<double>& w, double shift = 0.0) {
    for (double x : w) v.push_back(x + shift);
}

}  // namespace

MeijerGSpec gamma_gamma_pdf_spec(const FsoLinkParams& link) {
    check_link(link);
    const double x2 = link.xi_sq();
    return MeijerGSpec{3, 0, {x2 + 1.0}, {x2, link.a, link.b}};
}

MeijerGSpec gamma_gamma_cdf_spec(const FsoLinkParams& link) {
    check_link(link);
    const int r = link.r;
    const double x2 = link.xi_sq();
    MeijerGSpec g;
    g.m = 3 * r;
    g.n = 1;
    g.a = {1.0};
    append(g.a, delta_params(r, x2 + 1.0));
    append(g.b, delta_params(r, x2));
    append(g.b, delta_params(r, link.a));
    append(g.b, delta_params(r, link.b));
    g.b.push_back(0.0);
    return g;
}

MeijerGSpec gamma_gamma_cdf_integral_spec(const FsoLinkParams& link) {
    check_link(link);
    const int r = link.r;
    const double x2 = link.xi_sq();
    MeijerGSpec g;
    g.m = 3 * r;
    g.n = 2;
    g.a = {1.0, 2.0};
    append(g.a, delta_params(r, x2 + 1.0), 1.0);
    append(g.b, delta_params(r, x2), 1.0);
    append(g.b, delta_params(r, link.a), 1.0);
    append(g.b, delta_params(r, link.b), 1.0);
    g.b.push_back(0.0);
    g.b.push_back(1.0);
    return g;
}

double gamma_gamma_cdf_prefactor(const FsoLinkParams& link) {
    check_link(link);
    const double r = link.r;
    return std::exp(std::log(link.xi_sq()) + (link.a + link.b - 2.0) * std::log(r) -
                    (r - 1.0) * std::log(2.0 * kPi) - ln_gamma(link.a) - ln_gamma(link.b));
}

double gamma_gamma_cdf_scale(const FsoLinkParams& link, double omega_d) {
    check_link(link);
    check_omega(omega_d);
    const double r = link.r;
    return std::pow(link.h() * link.a * link.b, r) / (omega_d * std::pow(r, 2.0 * r));
}

double gamma_gamma_snr_pdf(double x, const FsoLinkParams& link, double omega_d, const ToleranceConfig& tol) {
    check_link(link);
    check_omega(omega_d);
    if (!(x > 0.0)) throw DomainError("gamma_gamma_snr_pdf: x must be > 0");
    const double r = link.r;
    const double A = link.xi_sq() / (r * std::exp(ln_gamma(link.a) + ln_gamma(link.b)));
    const double B = link.h() * link.a * link.b / std::pow(omega_d, 1.0 / r);
    return A / x * meijer_g(gamma_gamma_pdf_spec(link), B * std::pow(x, 1.0 / r), tol);
}

double gamma_gamma_snr_cdf(double x, const FsoLinkParams& link, double omega_d, const ToleranceConfig& tol) {
    check_link(link);
    check_omega(omega_d);
    if (std::isnan(x)) throw DomainError("gamma_gamma_snr_cdf: x is NaN");
    if (x <= 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    const double v = gamma_gamma_cdf_prefactor(link) *
                     meijer_g(gamma_gamma_cdf_spec(link), gamma_gamma_cdf_scale(link, omega_d) * x, tol);
    return std::clamp(v, 0.0, 1.0);
}

}  // namespace satsec::specfun
