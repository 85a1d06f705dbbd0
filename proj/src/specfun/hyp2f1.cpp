#include <cmath>
#include <limits>
#include <string>

#include "satsec/errors.hpp"
#include "satsec/specfun.hpp"
#include "gamma_detail.hpp"

namespace satsec::specfun {
namespace {

using detail::gamma_ratio;
using detail::is_nonpositive_integer;

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Plain Gauss series. Stops once the terms are past their peak and negligible.
double series_2f1(double a, double b, double c, double z, const ToleranceConfig& tol) {
    double term = 1.0;
    double sum = 1.0;
    for (std::size_t n = 0; n < tol.max_terms; ++n) {
        const double dn = static_cast<double>(n);
        const double ratio = (a + dn) * (b + dn) / ((c + dn) * (dn + 1.0)) * z;
        term *= ratio;
        sum += term;
        if (term == 0.0) return sum;
        if (std::abs(ratio) < 1.0 && std::abs(term) <= 0.5 * kEps * std::abs(sum)) return sum;
    }
    throw NumericError("gauss_2f1: series did not converge", tol.max_terms);
}

// c - a - b = m, a non-negative integer; z close to 1. Abramowitz-Stegun 15.3.10/15.3.11.
double log_case(double a, double b, int m, double z, const ToleranceConfig& tol) {
    const double w = 1.0 - z;
    const double c = a + b + m;
    double finite = 0.0;
    if (m > 0) {
        double t = 1.0;
        double acc = 1.0;
        for (int n = 0; n + 1 < m; ++n) {
            t *= (a + n) * (b + n) / ((n + 1.0) * (1.0 - m + n)) * w;
            acc += t;
        }
        finite = gamma_ratio({static_cast<double>(m), c}, {a + m, b + m}) * acc;
    }

    const double lw = std::log(w);
    double coef = 1.0;
    for (int j = 1; j <= m; ++j) coef /= j;  // 1 / m!
    double psi_n1 = digamma(1.0);
    double psi_nm1 = digamma(m + 1.0);
    double sum = 0.0;
    for (std::size_t n = 0; n < tol.max_terms; ++n) {
        const double dn = static_cast<double>(n);
        const double bracket = lw - psi_n1 - psi_nm1 + digamma(a + dn + m) + digamma(b + dn + m);
        const double term = coef * bracket;
        sum += term;
        const double ratio = (a + m + dn) * (b + m + dn) / ((dn + 1.0) * (dn + m + 1.0)) * w;
        if (std::abs(ratio) < 1.0 && std::abs(term) <= 0.5 * kEps * std::abs(sum)) {
            const double sign = (m % 2 == 0) ? 1.0 : -1.0;  // (z - 1)^m = (-1)^m w^m
            return finite - sign * std::pow(w, m) * gamma_ratio({c}, {a, b}) * sum;
        }
        coef *= ratio;
        psi_n1 += 1.0 / (dn + 1.0);
        psi_nm1 += 1.0 / (dn + m + 1.0);
    }
    throw NumericError("gauss_2f1: logarithmic series did not converge", tol.max_terms);
}

}  // namespace

double gauss_2f1(double a, double b, double c, double z, const ToleranceConfig& tol) {
    if (!(z >= 0.0 && z < 1.0)) throw DomainError("gauss_2f1: z must lie in [0, 1), got " + std::to_string(z));
    if (is_nonpositive_integer(c)) throw DomainError("gauss_2f1: c is a non-positive integer");
    if (z == 0.0) return 1.0;
    if (z < 0.8 || is_nonpositive_integer(a) || is_nonpositive_integer(b)) return series_2f1(a, b, c, z, tol);

    const double s = c - a - b;
    const double s_round = std::nearbyint(s);
    if (s == s_round) {
        if (s < 0.0) {
            // Euler: F(a,b;c;z) = (1-z)^{c-a-b} F(c-a,c-b;c;z)
            return std::pow(1.0 - z, s) * gauss_2f1(c - a, c - b, c, z, tol);
        }
        return log_case(a, b, static_cast<int>(s), z, tol);
    }
    if (std::abs(s - s_round) < 1e-4) {
        // too close to the logarithmic case for the connection formula
        return series_2f1(a, b, c, z, tol);
    }
    const double w = 1.0 - z;
    const double t1 = gamma_ratio({c, s}, {c - a, c - b});
    const double t2 = gamma_ratio({c, -s}, {a, b});
    double f1 = 0.0;
    double f2 = 0.0;
    if (t1 != 0.0) f1 = series_2f1(a, b, 1.0 - s, w, tol);
    if (t2 != 0.0) f2 = series_2f1(c - a, c - b, s + 1.0, w, tol);
    return t1 * f1 + t2 * std::pow(w, s) * f2;
}

}  // namespace satsec::specfun
