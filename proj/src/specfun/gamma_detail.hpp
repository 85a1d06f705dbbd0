#pragma once

#include <cmath>
#include <initializer_list>

#include "satsec/errors.hpp"
#include "satsec/specfun.hpp"

namespace satsec::specfun::detail {

inline bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::nearbyint(x); }

// sin(pi x) with the argument reduced first, so it stays accurate next to the integers
inline double sin_pi(double x) {
    const double n = std::nearbyint(x);
    const double v = std::sin(kPi * (x - n));
    return std::fmod(n, 2.0) == 0.0 ? v : -v;
}

// ln|Gamma(x)| with the sign returned separately; x off the poles.
inline double log_abs_gamma(double x, int& sign) {
    if (x > 0.0) {
        sign = 1;
        return ln_gamma(x);
    }
    if (is_nonpositive_integer(x)) throw DomainError("log_abs_gamma: pole at non-positive integer");
    const double s = sin_pi(x);
    sign = s > 0.0 ? 1 : -1;
    return std::log(kPi / std::abs(s)) - ln_gamma(1.0 - x);
}

// prod Gamma(num) / prod Gamma(den). A pole in the denominator gives 0.
inline double gamma_ratio(std::initializer_list<double> num, std::initializer_list<double> den) {
    double log_mag = 0.0;
    int sign = 1;
    for (double x : den) {
        if (is_nonpositive_integer(x)) return 0.0;
        int s = 1;
        log_mag -= log_abs_gamma(x, s);
        sign *= s;
    }
    for (double x : num) {
        int s = 1;
        log_mag += log_abs_gamma(x, s);
        sign *= s;
    }
    return sign * std::exp(log_mag);
}

}  // namespace satsec::specfun::detail
