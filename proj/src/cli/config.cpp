#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "satsec/cli.hpp"
#include "satsec/errors.hpp"

namespace satsec::cli {

using nlohmann::json;

namespace {

double num(const json& doc, const char* sec, const char* key) {
    const json& v = doc.at(sec).at(key);
    if (!v.is_number()) throw ConfigError(std::string(sec) + "." + key + ": expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError(std::string(sec) + "." + key + ": must be finite");
    return d;
}

template <class Int>
Int integer(const json& doc, const char* sec, const char* key) {
    const double d = num(doc, sec, key);
    if (d != std::nearbyint(d)) throw ConfigError(std::string(sec) + "." + key + ": expected an integer");
    return static_cast<Int>(d);
}

std::string text(const json& doc, const char* sec, const char* key) {
    const json& v = doc.at(sec).at(key);
    if (!v.is_string()) throw ConfigError(std::string(sec) + "." + key + ": expected a string");
    return v.get<std::string>();
}

// Overlay `src` onto `dst`; every key of src must already exist in dst with the same kind.
void overlay(json& dst, const json& src, const std::string& where) {
    if (!src.is_object()) throw ConfigError(where + ": expected an object");
    for (auto it = src.begin(); it != src.end(); ++it) {
        const std::string path = where + "." + it.key();
        if (!dst.contains(it.key())) throw ConfigError(path + ": unknown field");
        json& slot = dst[it.key()];
        if (slot.is_number() != it.value().is_number() || slot.is_string() != it.value().is_string())
            throw ConfigError(path + ": wrong type");
        slot = it.value();
    }
}

}  // namespace

json default_system_json() {
    return json{
        {"system",
         {{"P_S_dBW", 10.0},
          {"C_th_bps_Hz", 0.01},
          {"gamma_hold_linear", 0.0},
          {"gamma_out_linear", 1.0},
          {"K", 3},
          {"eve_rule", "nearest"}}},
        {"rf",
         {{"m_R", 2}, {"m_E", 2}, {"Omega_R", 1.9}, {"Omega_E", 0.5}, {"L", 8}, {"N_R_W", 1.0}, {"N_E_W", 1.0}}},
        {"fso",
         {{"a", 15.47},
          {"b", 14.6},
          {"xi", 1.1},
          {"r", 2},
          {"zeta", 0.5},
          {"L_r_dB", 81.0},
          {"f_c_Hz", 193.4e12},
          {"sigma_d_sq_W", 1e-14},
          {"P_R_dBW", 0.0}}},
        {"geometry",
         {{"R_S_m", 300.0},
          {"H_min_m", 80.0},
          {"Psi_D_rad", kPi / 12.0},
          {"H_D_m", 550e3},
          {"R_earth_m", 6371e3},
          {"eta1", 2.0}}},
        {"cache", {{"N", 1000000}, {"M", 10}, {"alpha", 1.0}, {"scheme", "mpc"}}},
    };
}

SystemParams system_from_json(const json& doc) {
    SystemParams s;
    try {
        s.P_S = db_to_linear(num(doc, "system", "P_S_dBW"));
        s.C_th = num(doc, "system", "C_th_bps_Hz");
        s.gamma_hold = num(doc, "system", "gamma_hold_linear");
        s.gamma_out = num(doc, "system", "gamma_out_linear");
        s.K = integer<int>(doc, "system", "K");
        const std::string rule = text(doc, "system", "eve_rule");
        if (rule == "nearest") s.eve_rule = EveRule::Nearest;
        else if (rule == "max_snr") s.eve_rule = EveRule::MaxSnr;
        else throw ConfigError("system.eve_rule: expected \"nearest\" or \"max_snr\"");

        s.rf.m_R = integer<int>(doc, "rf", "m_R");
        s.rf.m_E = integer<int>(doc, "rf", "m_E");
        s.rf.Omega_R = num(doc, "rf", "Omega_R");
        s.rf.Omega_E = num(doc, "rf", "Omega_E");
        s.rf.L = integer<int>(doc, "rf", "L");
        s.rf.N_R = num(doc, "rf", "N_R_W");
        s.rf.N_E = num(doc, "rf", "N_E_W");

        s.fso.a = num(doc, "fso", "a");
        s.fso.b = num(doc, "fso", "b");
        s.fso.xi = num(doc, "fso", "xi");
        s.fso.r = integer<int>(doc, "fso", "r");
        s.fso.zeta = num(doc, "fso", "zeta");
        s.fso.L_r_dB = num(doc, "fso", "L_r_dB");
        s.fso.f_c = num(doc, "fso", "f_c_Hz");
        s.fso.sigma_d_sq = num(doc, "fso", "sigma_d_sq_W");
        s.fso.P_R = db_to_linear(num(doc, "fso", "P_R_dBW"));

        s.geo.R_S = num(doc, "geometry", "R_S_m");
        s.geo.H_min = num(doc, "geometry", "H_min_m");
        s.geo.Psi_D = num(doc, "geometry", "Psi_D_rad");
        s.geo.H_D = num(doc, "geometry", "H_D_m");
        s.geo.R_earth = num(doc, "geometry", "R_earth_m");
        s.geo.eta1 = num(doc, "geometry", "eta1");

        s.cache.N = integer<std::int64_t>(doc, "cache", "N");
        s.cache.M = integer<std::int64_t>(doc, "cache", "M");
        s.cache.alpha = num(doc, "cache", "alpha");
        const std::string scheme = text(doc, "cache", "scheme");
        if (scheme == "mpc") s.cache.scheme = CachingScheme::MostPopular;
        else if (scheme == "uc") s.cache.scheme = CachingScheme::Uniform;
        else if (scheme == "none") s.cache.scheme = CachingScheme::None;
        else throw ConfigError("cache.scheme: expected \"mpc\", \"uc\" or \"none\"");
    } catch (const json::exception& e) {
        throw ConfigError(std::string("missing field: ") + e.what());
    }
    try {
        s.validate();
    } catch (const DomainError& e) {
        throw ConfigError(std::string("invalid parameters: ") + e.what());
    }
    return s;
}

json with_field(const json& doc, const std::string& path, double value) {
    const auto dot = path.find('.');
    if (dot == std::string::npos) throw ConfigError("sweep path must be <section>.<field>, got \"" + path + "\"");
    const std::string sec = path.substr(0, dot), key = path.substr(dot + 1);
    if (!doc.contains(sec) || !doc.at(sec).is_object() || !doc.at(sec).contains(key))
        throw ConfigError("sweep path \"" + path + "\" does not name a field");
    if (!doc.at(sec).at(key).is_number()) throw ConfigError("sweep path \"" + path + "\" is not numeric");
    if (!std::isfinite(value)) throw ConfigError("sweep value for \"" + path + "\" is not finite");
    json out = doc;
    out[sec][key] = value;
    return out;
}

ExperimentConfig parse_config(const json& j) {
    if (!j.is_object()) throw ConfigError("config: top level must be an object");
    ExperimentConfig cfg;
    cfg.doc = default_system_json();
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& key = it.key();
        if (cfg.doc.contains(key)) {
            overlay(cfg.doc[key], it.value(), key);
        } else if (key == "sweep") {
            const json& s = it.value();
            if (!s.is_object() || !s.contains("path") || !s.at("path").is_string() || !s.contains("values") ||
                !s.at("values").is_array())
                throw ConfigError("sweep: expected {\"path\": string, \"values\": [numbers]}");
            Sweep sw;
            sw.path = s.at("path").get<std::string>();
            for (const json& v : s.at("values")) {
                if (!v.is_number()) throw ConfigError("sweep.values: expected numbers");
                sw.values.push_back(v.get<double>());
            }
            if (!sw.values.empty()) cfg.sweep = sw;
        } else if (key == "trials") {
            const json& t = it.value();
            if (!t.is_object()) throw ConfigError("trials: expected an object");
            for (auto f = t.begin(); f != t.end(); ++f) {
                const json& x = f.value();
                if (!x.is_number() || x.get<double>() < 0.0 || x.get<double>() != std::nearbyint(x.get<double>()))
                    throw ConfigError("trials." + f.key() + ": expected a non-negative integer");
                const auto v = x.is_number_unsigned() ? x.get<std::uint64_t>()
                                                      : static_cast<std::uint64_t>(x.get<double>());
                if (f.key() == "trials") cfg.trials.trials = v;
                else if (f.key() == "seed") cfg.trials.seed = v;
                else if (f.key() == "batch_size") cfg.trials.batch_size = v;
                else if (f.key() == "workers") cfg.trials.workers = static_cast<unsigned>(v);
                else throw ConfigError("trials." + f.key() + ": unknown field");
            }
        } else if (key == "output") {
            const json& o = it.value();
            if (!o.is_object()) throw ConfigError("output: expected an object");
            for (auto f = o.begin(); f != o.end(); ++f) {
                if (f.key() == "csv_path" && f.value().is_string()) cfg.csv_path = f.value().get<std::string>();
                else if (f.key() == "precision" && f.value().is_number_integer()) cfg.precision = f.value().get<int>();
                else throw ConfigError("output." + f.key() + ": unknown field or wrong type");
            }
            if (cfg.precision < 1 || cfg.precision > 17) throw ConfigError("output.precision: must lie in [1, 17]");
        } else {
            throw ConfigError(key + ": unknown section");
        }
    }
    cfg.sys = system_from_json(cfg.doc);
    if (cfg.sweep) {
        for (double v : cfg.sweep->values) system_from_json(with_field(cfg.doc, cfg.sweep->path, v));
    }
    try {
        cfg.trials.validate();
    } catch (const DomainError& e) {
        throw ConfigError(std::string("trials: ") + e.what());
    }
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file \"" + path + "\"");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError("config \"" + path + "\": " + e.what());
    }
    return parse_config(j);
}

Sweep parse_sweep_arg(const std::string& arg) {
    const auto eq = arg.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("--sweep expects <field>=<v1,v2,...>");
    Sweep s;
    s.path = arg.substr(0, eq);
    std::stringstream ss(arg.substr(eq + 1));
    ss.imbue(std::locale::classic());
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::istringstream is(item);
        is.imbue(std::locale::classic());
        double v = 0.0;
        if (!(is >> v) || !(is >> std::ws).eof()) throw ConfigError("--sweep: cannot parse value \"" + item + "\"");
        s.values.push_back(v);
    }
    if (s.values.empty()) throw ConfigError("--sweep: no values given");
    return s;
}

std::string format_number(double v, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*e", precision, v);
    return buf;
}

}  // namespace satsec::cli
