#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <tuple>

#include "satsec/analytics.hpp"
#include "satsec/cli.hpp"
#include "satsec/errors.hpp"
#include "satsec/geometry.hpp"

namespace satsec::cli {

using nlohmann::json;

namespace {

// Medians only depend on the relay/satellite geometry; computing them is the slow part.
class MedianCache {
public:
    const geometry::RelayMedians& get(const GeometryParams& g) {
        const auto key = std::make_tuple(g.R_S, g.H_min, g.Psi_D, g.H_D, g.R_earth);
        auto it = cache_.find(key);
        if (it == cache_.end()) it = cache_.emplace(key, geometry::median_relay_quantities(g)).first;
        return it->second;
    }

private:
    std::map<std::tuple<double, double, double, double, double>, geometry::RelayMedians> cache_;
};

struct Point {
    double value;
    SystemParams sys;
};

std::vector<Point> expand(const ExperimentConfig& cfg) {
    std::vector<Point> pts;
    if (!cfg.sweep) {
        pts.push_back({std::nan(""), cfg.sys});
        return pts;
    }
    for (double v : cfg.sweep->values) pts.push_back({v, system_from_json(with_field(cfg.doc, cfg.sweep->path, v))});
    return pts;
}

AnalyticRow analytic_row(double value, const SystemParams& sys, MedianCache& medians) {
    AnalyticRow r;
    r.sweep_value = value;
    r.sop1_lower = analytics::sop1_lower(sys);
    r.op2 = analytics::op2_median(sys, medians.get(sys.geo));
    r.phi = analytics::cache_hit_probability(sys.cache);
    r.sop_end_to_end = analytics::end_to_end_sop(r.phi, r.sop1_lower, r.op2);
    return r;
}

mc::TrialConfig trial_cfg(const mc::TrialConfig& base, std::uint64_t seed) {
    mc::TrialConfig t = base;
    t.seed = seed;
    return t;
}

void write_text(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write \"" + path + "\"");
    out << body;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t point, std::uint64_t estimator) {
    // splitmix64 finaliser over the packed inputs
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (point * 16 + estimator + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

std::vector<AnalyticRow> run_analytic(const ExperimentConfig& cfg) {
    MedianCache medians;
    std::vector<AnalyticRow> rows;
    for (const Point& p : expand(cfg)) rows.push_back(analytic_row(p.value, p.sys, medians));
    return rows;
}

void write_analytic_csv(std::ostream& os, const std::vector<AnalyticRow>& rows, int precision) {
    os << "sweep_value,sop1_lower,op2,phi,sop_end_to_end\n";
    for (const auto& r : rows) {
        os << format_number(r.sweep_value, precision) << ',' << format_number(r.sop1_lower, precision) << ','
           << format_number(r.op2, precision) << ',' << format_number(r.phi, precision) << ','
           << format_number(r.sop_end_to_end, precision) << '\n';
    }
}

std::vector<SimulateRow> run_simulate(const ExperimentConfig& cfg) {
    std::vector<SimulateRow> rows;
    const auto pts = expand(cfg);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const SystemParams& sys = pts[i].sys;
        const std::pair<const char*, mc::Estimate (*)(const SystemParams&, const mc::TrialConfig&)> est[] = {
            {"sop1_lower", mc::estimate_sop1_lower},
            {"sop1_exact", mc::estimate_sop1_exact},
            {"op2", mc::estimate_op2},
            {"end_to_end", mc::estimate_end_to_end},
        };
        for (std::size_t e = 0; e < std::size(est); ++e) {
            const std::uint64_t seed = derive_seed(cfg.trials.seed, i, e);
            rows.push_back({pts[i].value, est[e].first, est[e].second(sys, trial_cfg(cfg.trials, seed)), seed});
        }
    }
    return rows;
}

void write_simulate_csv(std::ostream& os, const std::vector<SimulateRow>& rows, int precision) {
    os << "sweep_value,estimator,p_hat,stderr,n,seed\n";
    for (const auto& r : rows) {
        os << format_number(r.sweep_value, precision) << ',' << r.estimator << ','
           << format_number(r.est.p_hat, precision) << ',' << format_number(r.est.std_error, precision) << ','
           << r.est.n << ',' << r.seed << '\n';
    }
}

std::vector<ValidatePoint> run_validate(const ExperimentConfig& cfg, double lambda_r_fault) {
    MedianCache medians;
    std::vector<ValidatePoint> out;
    const auto pts = expand(cfg);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        const SystemParams& sys = pts[i].sys;
        SystemParams analytic_sys = sys;
        analytic_sys.rf.Omega_R /= lambda_r_fault;  // lambda_R = m_R / Omega_R

        ValidatePoint v;
        v.sweep_value = pts[i].value;
        v.sop1_analytic = analytics::sop1_lower(analytic_sys);
        v.sop1_mc = mc::estimate_sop1_lower(sys, trial_cfg(cfg.trials, derive_seed(cfg.trials.seed, i, 0)));
        v.sop1_cmp = mc::compare(v.sop1_analytic, v.sop1_mc);
        v.sop1_exact_mc = mc::estimate_sop1_exact(sys, trial_cfg(cfg.trials, derive_seed(cfg.trials.seed, i, 1)));
        const double se = std::hypot(v.sop1_mc.std_error, v.sop1_exact_mc.std_error);
        v.bound_ok = v.sop1_exact_mc.p_hat >= v.sop1_mc.p_hat - 4.0 * se;
        v.op2_analytic = analytics::op2_median(analytic_sys, medians.get(sys.geo));
        v.op2_mc = mc::estimate_op2(sys, trial_cfg(cfg.trials, derive_seed(cfg.trials.seed, i, 2)));
        v.op2_cmp = mc::compare(v.op2_analytic, v.op2_mc);
        v.runtime = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        out.push_back(v);
    }
    return out;
}

void write_validate_report(std::ostream& os, const std::vector<ValidatePoint>& pts) {
    std::ostringstream ss;
    ss.imbue(std::locale::classic());
    ss << std::setprecision(6);
    bool all = true;
    for (const auto& p : pts) {
        ss << "point " << p.sweep_value << ": sop1_lower analytic=" << p.sop1_analytic
           << " mc=" << p.sop1_mc.p_hat << " se=" << p.sop1_mc.std_error << " z=" << p.sop1_cmp.z
           << " | op2 analytic=" << p.op2_analytic << " mc=" << p.op2_mc.p_hat << " se=" << p.op2_mc.std_error
           << " z=" << p.op2_cmp.z << " | sop1_exact mc=" << p.sop1_exact_mc.p_hat
           << " bound=" << (p.bound_ok ? "ok" : "violated") << " | trials=" << p.sop1_mc.n
           << " runtime=" << p.runtime << "s -> " << (p.pass() ? "PASS" : "FAIL") << '\n';
        all = all && p.pass();
    }
    ss << (all ? "overall: PASS" : "overall: FAIL") << '\n';
    os << ss.str();
}

std::vector<double> preset_power_sweep() {
    std::vector<double> v;
    for (int p = -35; p <= 40; p += 5) v.push_back(p);
    return v;
}

FigurePreset figure_preset(int id) {
    FigurePreset f;
    f.id = id;
    f.sweep = {"fso.P_R_dBW", preset_power_sweep()};
    f.notes = {
        "sigma_d_sq, f_c and gamma_out are not given for the figures; defaults 1e-14 W, 193.4 THz, 1 (0 dB)",
        "curves target shape and ordering, not absolute P_R alignment",
    };
    const json base = default_system_json();
    auto curve = [&](std::string name, std::initializer_list<std::pair<const char*, json>> fields) {
        json doc = base;
        for (const auto& [path, v] : fields) {
            const std::string p(path);
            const auto dot = p.find('.');
            doc[p.substr(0, dot)][p.substr(dot + 1)] = v;
        }
        f.curves.push_back({std::move(name), std::move(doc)});
    };
    std::ostringstream nm;
    switch (id) {
        case 4:
            f.title = "SOP versus P_R for turbulence (a, b) and detection r";
            f.notes.push_back("weak-turbulence pair taken from the caption (15.47, 14.6); the text says (15.4, 14.67)");
            for (auto [a, b] : {std::pair{15.47, 14.6}, std::pair{3.62, 3.29}})
                for (int r : {1, 2}) {
                    nm.str("");
                    nm << "a" << a << "_b" << b << "_r" << r;
                    curve(nm.str(), {{"fso.a", a}, {"fso.b", b}, {"fso.r", r}});
                }
            break;
        case 5:
            f.title = "SOP versus P_R for pointing ratio xi and cache size M";
            for (double xi : {1.1, 1.5})
                for (int M : {10, 100}) {
                    nm.str("");
                    nm << "xi" << xi << "_M" << M;
                    curve(nm.str(), {{"fso.xi", xi}, {"cache.M", M}});
                }
            break;
        case 6:
            f.title = "SOP versus P_R for relay antenna count L";
            for (int L : {2, 4, 8, 16}) curve("L" + std::to_string(L), {{"rf.L", L}});
            break;
        case 7:
            f.title = "SOP versus P_R for minimum relay height and Zipf skewness";
            for (int h : {50, 100})
                for (double alpha : {0.5, 1.5}) {
                    nm.str("");
                    nm << "Hmin" << h << "_alpha" << alpha;
                    curve(nm.str(), {{"geometry.H_min_m", h}, {"cache.alpha", alpha}});
                }
            break;
        case 8:
            f.title = "SOP versus P_R for caching scheme and eavesdropper count K";
            for (const char* scheme : {"mpc", "uc", "none"})
                for (int K : {3, 6})
                    curve(std::string(scheme) + "_K" + std::to_string(K),
                          {{"cache.scheme", scheme}, {"system.K", K}, {"cache.M", 100}, {"cache.N", 10000}});
            break;
        default:
            throw ConfigError("unknown figure id " + std::to_string(id) + " (expected 4..8)");
    }
    return f;
}

std::vector<std::string> run_figures(int id, const FigureOptions& opt) {
    const FigurePreset preset = figure_preset(id);
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(opt.out_dir, ec);
    if (ec) throw ConfigError("cannot create output directory \"" + opt.out_dir + "\": " + ec.message());

    MedianCache medians;
    std::vector<std::string> paths;
    for (std::size_t c = 0; c < preset.curves.size(); ++c) {
        const Curve& curve = preset.curves[c];
        std::ostringstream csv;
        csv << "sweep_value,sop1_lower,op2,phi,sop_end_to_end,mc_p_hat,mc_stderr,mc_n,mc_seed\n";
        for (std::size_t i = 0; i < preset.sweep.values.size(); ++i) {
            const double v = preset.sweep.values[i];
            const SystemParams sys = system_from_json(with_field(curve.doc, preset.sweep.path, v));
            const AnalyticRow r = analytic_row(v, sys, medians);
            csv << format_number(v) << ',' << format_number(r.sop1_lower) << ',' << format_number(r.op2) << ','
                << format_number(r.phi) << ',' << format_number(r.sop_end_to_end);
            if (opt.with_mc) {
                mc::TrialConfig t;
                t.trials = opt.trials;
                t.workers = opt.workers;
                t.seed = derive_seed(opt.seed, c * 1000 + i, 3);
                const mc::Estimate e = mc::estimate_end_to_end(sys, t);
                csv << ',' << format_number(e.p_hat) << ',' << format_number(e.std_error) << ',' << e.n << ','
                    << t.seed;
            } else {
                csv << ",nan,nan,0,0";
            }
            csv << '\n';
        }
        const std::string stem = (fs::path(opt.out_dir) / ("fig" + std::to_string(id) + "_" + curve.name)).string();
        write_text(stem + ".csv", csv.str());

        json meta = {
            {"figure", id},
            {"title", preset.title},
            {"curve", curve.name},
            {"parameters", curve.doc},
            {"sweep", {{"path", preset.sweep.path}, {"values", preset.sweep.values}}},
            {"monte_carlo", {{"enabled", opt.with_mc}, {"trials", opt.trials}, {"seed", opt.seed},
                             {"estimator", "end_to_end"}}},
            {"notes", preset.notes},
        };
        write_text(stem + ".meta.json", meta.dump(2) + "\n");
        paths.push_back(stem + ".csv");
    }
    return paths;
}

}  // namespace satsec::cli
