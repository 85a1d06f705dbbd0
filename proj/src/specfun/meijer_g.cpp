#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <string>

#include "satsec/errors.hpp"
#include "satsec/specfun.hpp"
#include "gamma_detail.hpp"

namespace satsec::specfun {
namespace {

using cd = std::complex<double>;
using detail::is_nonpositive_integer;

constexpr double kEps = std::numeric_limits<double>::epsilon();
// relative accuracy assumed for a single Gamma-product coefficient
constexpr double kCoefAccuracy = 1e-15;

double dist_to_int(double x) { return std::abs(x - std::nearbyint(x)); }

bool supported(int m, int n, int p, int q) {
    static constexpr std::array<std::array<int, 4>, 6> kFamilies = {{
        {1, 0, 0, 1}, {3, 0, 1, 3}, {3, 1, 2, 4}, {6, 1, 3, 7}, {3, 2, 3, 5}, {6, 2, 4, 8},
    }};
    return std::any_of(kFamilies.begin(), kFamilies.end(), [&](const auto& f) {
        return f[0] == m && f[1] == n && f[2] == p && f[3] == q;
    });
}

void check_args(const MeijerGSpec& spec, double z, const ToleranceConfig& tol) {
    spec.validate();
    tol.validate();
    if (!(z > 0.0) || !std::isfinite(z)) throw DomainError("meijer_g: z must be finite and > 0");
}

struct SeriesOut {
    double value = 0.0;
    double err = 0.0;  // rounding error estimate
    std::size_t terms = 0;
};

// Residue sum with all poles of Gamma(b_j - s), j <= m, assumed simple.
SeriesOut residue_sum(const MeijerGSpec& g, double z, const ToleranceConfig& tol) {
    const int m = g.m, n = g.n, p = g.p(), q = g.q();
    const double x = ((p - m - n) % 2 == 0) ? z : -z;
    const double logz = std::log(z);
    SeriesOut out;
    double abs_total = 0.0;
    for (int h = 0; h < m; ++h) {
        const double bh = g.b[h];
        // coefficient: product of Gammas as logs with a running sign
        double log_mag = 0.0;
        int sign = 1;
        bool zero = false;
        auto mul = [&](double arg, bool numerator) {
            if (is_nonpositive_integer(arg)) {
                if (numerator) throw NumericError("meijer_g: unresolved coincident poles", out.terms);
                zero = true;
                return;
            }
            int s = 1;
            const double l = detail::log_abs_gamma(arg, s);
            log_mag += numerator ? l : -l;
            sign *= s;
        };
        for (int j = 0; j < m; ++j)
            if (j != h) mul(g.b[j] - bh, true);
        for (int j = 0; j < n; ++j) mul(1.0 + bh - g.a[j], true);
        for (int j = m; j < q; ++j) mul(1.0 + bh - g.b[j], false);
        for (int j = n; j < p; ++j) mul(g.a[j] - bh, false);
        if (zero) continue;
        const double scale = sign * std::exp(log_mag + bh * logz);

        // pF_{q-1}(1 + b_h - a; 1 + b_h - b_{j != h}; x)
        double term = 1.0;
        double sum = 1.0;
        double abs_sum = 1.0;
        bool done = false;
        for (std::size_t k = 0; k < tol.max_terms; ++k) {
            const double dk = static_cast<double>(k);
            double ratio = x / (dk + 1.0);
            for (int i = 0; i < p; ++i) ratio *= 1.0 + bh - g.a[i] + dk;
            for (int j = 0; j < q; ++j)
                if (j != h) ratio /= 1.0 + bh - g.b[j] + dk;
            term *= ratio;
            sum += term;
            abs_sum += std::abs(term);
            ++out.terms;
            if (!std::isfinite(abs_sum)) {
                out.value = sum;
                out.err = std::numeric_limits<double>::infinity();
                return out;
            }
            if (term == 0.0 || (std::abs(ratio) < 0.5 && std::abs(term) <= 0.25 * kEps * std::abs(sum))) {
                done = true;
                break;
            }
        }
        if (!done) throw NumericError("meijer_g: residue series did not converge", out.terms);
        out.value += scale * sum;
        abs_total += std::abs(scale) * abs_sum;
    }
    out.err = kCoefAccuracy * abs_total + kEps * std::abs(out.value);
    return out;
}

// Clusters of the first m b-parameters whose differences are (nearly) integers.
// Returns the per-index rank inside its cluster; all zero when nothing coincides.
std::vector<int> coincidence_ranks(const MeijerGSpec& g, double eps) {
    std::vector<int> rank(g.b.size(), 0);
    std::vector<int> cluster(g.m, -1);
    int next = 0;
    for (int i = 0; i < g.m; ++i) {
        if (cluster[i] >= 0) continue;
        cluster[i] = next;
        int r = 0;
        for (int j = i + 1; j < g.m; ++j) {
            if (cluster[j] < 0 && dist_to_int(g.b[j] - g.b[i]) < 0.25 * eps) {
                cluster[j] = next;
                rank[j] = ++r;
            }
        }
        ++next;
    }
    return rank;
}

bool tolerable(const SeriesOut& s, const ToleranceConfig& tol) {
    return std::isfinite(s.err) && s.err <= std::max(tol.rel_tol * std::abs(s.value), tol.abs_tol);
}

// ln Phi(s) + s ln z along the contour.
cd log_integrand(const MeijerGSpec& g, cd s, double logz) {
    cd acc = s * logz;
    for (int j = 0; j < g.m; ++j) acc += ln_gamma(g.b[j] - s);
    for (int j = 0; j < g.n; ++j) acc += ln_gamma(1.0 - g.a[j] + s);
    for (int j = g.m; j < g.q(); ++j) acc -= ln_gamma(1.0 - g.b[j] + s);
    for (int j = g.n; j < g.p(); ++j) acc -= ln_gamma(g.a[j] - s);
    return acc;
}

// ln|Phi(c)| + c ln z on the real axis.
double log_real(const MeijerGSpec& g, double c, double logz) {
    double acc = c * logz;
    int s = 1;
    auto add = [&](double arg, double w) {
        if (is_nonpositive_integer(arg)) {
            acc += w > 0 ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
            return;
        }
        acc += w * detail::log_abs_gamma(arg, s);
    };
    for (int j = 0; j < g.m; ++j) add(g.b[j] - c, 1.0);
    for (int j = 0; j < g.n; ++j) add(1.0 - g.a[j] + c, 1.0);
    for (int j = g.m; j < g.q(); ++j) add(1.0 - g.b[j] + c, -1.0);
    for (int j = g.n; j < g.p(); ++j) add(g.a[j] - c, -1.0);
    return acc;
}

}  // namespace

void MeijerGSpec::validate() const {
    if (m < 0 || n < 0) throw DomainError("meijer_g: negative index");
    if (m > q() || n > p()) throw DomainError("meijer_g: need m <= q and n <= p");
    for (double v : a)
        if (!std::isfinite(v)) throw DomainError("meijer_g: non-finite a-parameter");
    for (double v : b)
        if (!std::isfinite(v)) throw DomainError("meijer_g: non-finite b-parameter");
    if (!supported(m, n, p(), q()))
        throw UnsupportedError("meijer_g: index family G^{" + std::to_string(m) + "," + std::to_string(n) + "}_{" +
                               std::to_string(p()) + "," + std::to_string(q()) + "} is not supported");
    for (int j = 0; j < n; ++j) {
        for (int h = 0; h < m; ++h) {
            const double d = a[j] - b[h];
            if (d > 0.0 && d == std::nearbyint(d))
                throw DomainError("meijer_g: a_j - b_h is a positive integer, the function is undefined");
        }
    }
}

std::vector<double> delta_params(int k, double a) {
    if (k < 1) throw DomainError("delta_params: k must be >= 1");
    std::vector<double> out(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) out[static_cast<std::size_t>(i)] = (a + i) / k;
    return out;
}

MeijerGResult meijer_g_residue(const MeijerGSpec& spec, double z, const ToleranceConfig& tol) {
    check_args(spec, z, tol);
    MeijerGResult res;
    res.route = MeijerRoute::ResidueSeries;

    const std::vector<int> rank = coincidence_ranks(spec, tol.pole_perturbation);
    const bool coincide = std::any_of(rank.begin(), rank.end(), [](int r) { return r != 0; });
    SeriesOut s;
    if (!coincide) {
        s = residue_sum(spec, z, tol);
    } else {
        // split the coincident poles both ways; the average cancels the O(eps) error
        MeijerGSpec up = spec, down = spec;
        for (std::size_t j = 0; j < rank.size(); ++j) {
            up.b[j] += rank[j] * tol.pole_perturbation;
            down.b[j] -= rank[j] * tol.pole_perturbation;
        }
        const SeriesOut su = residue_sum(up, z, tol);
        const SeriesOut sd = residue_sum(down, z, tol);
        s.value = 0.5 * (su.value + sd.value);
        s.err = 0.5 * (su.err + sd.err);
        s.terms = su.terms + sd.terms;
        res.perturbed = true;
    }
    res.terms = s.terms;
    if (!tolerable(s, tol))
        throw NumericError("meijer_g: residue series lost too many digits to cancellation", s.terms);
    res.value = s.value;
    return res;
}

MeijerGResult meijer_g_contour(const MeijerGSpec& spec, double z, const ToleranceConfig& tol) {
    check_args(spec, z, tol);
    const double logz = std::log(z);

    // admissible strip: right of the poles of Gamma(1 - a_j + s), left of those of Gamma(b_j - s)
    double hi = std::numeric_limits<double>::infinity();
    for (int j = 0; j < spec.m; ++j) hi = std::min(hi, spec.b[j]);
    double lo = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < spec.n; ++j) lo = std::max(lo, spec.a[j] - 1.0);
    if (!(lo < hi)) throw NumericError("meijer_g: no contour separates the pole sequences", 0);

    // Place the line at the minimum of the real-axis log-integrand (the saddle).
    auto f = [&](double c) { return log_real(spec, c, logz); };
    double left = std::isfinite(lo) ? lo : hi - 1.0;
    if (!std::isfinite(lo)) {
        // walk left until the function turns upward
        double step = 1.0;
        while (f(left - step) < f(left) && left > hi - 1e6) {
            left -= step;
            step *= 2.0;
        }
        left -= step;
    }
    double x0 = left, x1 = hi;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double c1 = x1 - gr * (x1 - x0), c2 = x0 + gr * (x1 - x0);
    double f1 = f(c1), f2 = f(c2);
    for (int it = 0; it < 200 && (x1 - x0) > 1e-10 * (1.0 + std::abs(x0)); ++it) {
        if (f1 < f2) {
            x1 = c2;
            c2 = c1;
            f2 = f1;
            c1 = x1 - gr * (x1 - x0);
            f1 = f(c1);
        } else {
            x0 = c1;
            c1 = c2;
            f1 = f2;
            c2 = x0 + gr * (x1 - x0);
            f2 = f(c2);
        }
    }
    const double c = 0.5 * (x0 + x1);
    const double fc = f(c);
    if (!std::isfinite(fc)) throw NumericError("meijer_g: contour placement failed", 0);

    // Trapezoidal step from the strip of analyticity: the discretisation error is about
    // exp(g(y) - 2 pi y / h), with g the growth of the integrand when the line moves by y.
    const double dmax = 0.5 * std::min(hi - c, c - lo);
    const double target = std::log(1.0 / kEps) + 4.0;
    double h = 0.0;
    for (int k = 0; k < 40; ++k) {
        const double y = dmax * std::pow(0.8, k);
        const double grow = std::max({f(c - y) - fc, f(c + y) - fc, 0.0});
        h = std::max(h, 2.0 * kPi * y / (target + grow));
    }

    // integrate t in [0, inf): G = (1/pi) int Re[Phi(c+it) z^{c+it}] dt
    double sum = 0.5 * std::exp(log_integrand(spec, cd(c, 0.0), logz) - fc).real();
    double abs_sum = std::abs(sum);
    double peak = abs_sum;
    std::size_t terms = 1;
    int quiet = 0;
    for (; terms < tol.max_terms * 10; ++terms) {
        const double t = static_cast<double>(terms) * h;
        const cd v = std::exp(log_integrand(spec, cd(c, t), logz) - fc);
        sum += v.real();
        const double mag = std::abs(v);
        abs_sum += mag;
        peak = std::max(peak, mag);
        quiet = (mag < kEps * 1e-3 * peak) ? quiet + 1 : 0;
        if (quiet >= 8) break;
    }
    if (quiet < 8) throw NumericError("meijer_g: contour integral did not decay", terms);

    MeijerGResult res;
    res.route = MeijerRoute::ContourIntegral;
    res.terms = terms;
    res.value = std::exp(fc) * h * sum / kPi;
    return res;
}

MeijerGResult meijer_g_detail(const MeijerGSpec& spec, double z, const ToleranceConfig& tol) {
    check_args(spec, z, tol);
    // The residue terms peak near exp((q - p) z^{1/(q-p)}); far beyond double range
    // of cancellation the series is not even attempted.
    const int d = spec.q() - spec.p();
    const double growth = d * std::pow(z, 1.0 / d);
    if (growth < 40.0) {
        try {
            return meijer_g_residue(spec, z, tol);
        } catch (const NumericError&) {
            // fall through to the contour
        }
    }
    return meijer_g_contour(spec, z, tol);
}

double meijer_g(const MeijerGSpec& spec, double z, const ToleranceConfig& tol) {
    return meijer_g_detail(spec, z, tol).value;
}

}  // namespace satsec::specfun
