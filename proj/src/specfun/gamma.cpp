#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "satsec/errors.hpp"
#include "satsec/specfun.hpp"
#include "gamma_detail.hpp"

namespace satsec::specfun {
namespace {

// Lanczos approximation, g = 671/128, 14 terms.
constexpr double kLanczosG = 5.24218750000000000;
constexpr double kLanczosC0 = 0.999999999999997092;
constexpr std::array<double, 14> kLanczos = {
    57.1562356658629235,     -59.5979603554754912,    14.1360979747417471,
    -0.491913816097620199,   .339946499848118887e-4,  .465236289270485756e-4,
    -.983744753048795646e-4, .158088703224912494e-3,  -.210264441724104883e-3,
    .217439618115212643e-3,  -.164318106536763890e-3, .844182239838527433e-4,
    -.261908384015814087e-4, .368991826595316234e-5};
constexpr double kSqrt2Pi = 2.5066282746310005;

template <class T>
T lanczos_ln_gamma(T x) {
    T y = x;
    T tmp = x + kLanczosG;
    tmp = (x + 0.5) * std::log(tmp) - tmp;
    T ser = kLanczosC0;
    for (double c : kLanczos) {
        y += 1.0;
        ser += c / y;
    }
    return tmp + std::log(kSqrt2Pi * ser / x);
}

using detail::is_nonpositive_integer;

// log(sin(pi z)) without overflow for large |Im z|.
std::complex<double> log_sin_pi(std::complex<double> z) {
    using namespace std::complex_literals;
    if (z.imag() < 0.0) return std::conj(log_sin_pi(std::conj(z)));
    // sin(pi (z - n)) = (-1)^n sin(pi z); any branch of the log will do
    const double n = std::nearbyint(z.real());
    if (n != 0.0) return log_sin_pi(z - n) + std::complex<double>(0.0, std::fmod(n, 2.0) == 0.0 ? 0.0 : kPi);
    // sin(pi z) = exp(-i pi z) (1 - exp(2 i pi z)) / (-2i)
    const std::complex<double> e = std::exp(2.0i * kPi * z);
    return -1.0i * kPi * z + std::log(1.0 - e) - std::complex<double>(std::log(2.0), -kPi / 2);
}

}  // namespace

void ToleranceConfig::validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw DomainError("tolerance: rel_tol and abs_tol must be > 0");
    if (!(pole_perturbation > 0.0 && pole_perturbation < 1e-4))
        throw DomainError("tolerance: pole_perturbation must lie in (0, 1e-4)");
    if (max_terms < 100) throw DomainError("tolerance: max_terms must be >= 100");
}

double ln_gamma(double x) {
    if (!(x > 0.0)) throw DomainError("ln_gamma: x must be > 0, got " + std::to_string(x));
    if (std::isinf(x)) return x;
    return lanczos_ln_gamma(x);
}

std::complex<double> ln_gamma(std::complex<double> z) {
    if (z.imag() == 0.0 && is_nonpositive_integer(z.real()))
        throw DomainError("ln_gamma: pole at non-positive integer");
    if (z.real() < 0.5) {
        // Gamma(z) Gamma(1 - z) = pi / sin(pi z)
        return std::log(kPi) - log_sin_pi(z) - lanczos_ln_gamma(1.0 - z);
    }
    return lanczos_ln_gamma(z);
}

double gamma_fn(double x) {
    if (is_nonpositive_integer(x)) throw DomainError("gamma_fn: pole at non-positive integer");
    if (x > 0.0) return std::exp(ln_gamma(x));
    // reflection: Gamma(x) = pi / (sin(pi x) Gamma(1 - x))
    return kPi / (detail::sin_pi(x) * std::exp(ln_gamma(1.0 - x)));
}

double recip_gamma(double x) {
    if (is_nonpositive_integer(x)) return 0.0;
    if (x > 0.0) return std::exp(-ln_gamma(x));
    return detail::sin_pi(x) * std::exp(ln_gamma(1.0 - x)) / kPi;
}

double digamma(double x) {
    if (is_nonpositive_integer(x)) throw DomainError("digamma: pole at non-positive integer");
    if (x < 0.0) return digamma(1.0 - x) - kPi / std::tan(kPi * (x - std::nearbyint(x)));
    double acc = 0.0;
    while (x < 10.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    // Bernoulli terms B_2k / (2k x^2k)
    const double series =
        inv2 * (1.0 / 12 - inv2 * (1.0 / 120 - inv2 * (1.0 / 252 - inv2 * (1.0 / 240 - inv2 * (1.0 / 132)))));
    return acc + std::log(x) - 0.5 * inv - series;
}

double reg_lower_inc_gamma(double s, double x, const ToleranceConfig& tol) {
    if (!(s > 0.0) || !(x >= 0.0) || std::isnan(x))
        throw DomainError("reg_lower_inc_gamma: need s > 0 and x >= 0");
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    const double eps = std::numeric_limits<double>::epsilon();
    const double log_prefix = s * std::log(x) - x - ln_gamma(s);

    if (x < s + 1.0) {
        // x^s e^-x / Gamma(s+1) * sum x^k / (s+1)_k
        double ap = s;
        double term = 1.0 / s;
        double sum = term;
        for (std::size_t k = 0; k < tol.max_terms; ++k) {
            ap += 1.0;
            term *= x / ap;
            sum += term;
            if (std::abs(term) < std::abs(sum) * eps) {
                return std::min(1.0, sum * std::exp(log_prefix));
            }
        }
        throw NumericError("reg_lower_inc_gamma: series did not converge", tol.max_terms);
    }

    // Continued fraction for Q(s, x), modified Lentz.
    const double tiny = std::numeric_limits<double>::min() / eps;
    double b = x + 1.0 - s;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (std::size_t i = 1; i < tol.max_terms; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - s);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) <= eps) {
            return std::max(0.0, 1.0 - std::exp(log_prefix) * h);
        }
    }
    throw NumericError("reg_lower_inc_gamma: continued fraction did not converge", tol.max_terms);
}

}  // namespace satsec::specfun
