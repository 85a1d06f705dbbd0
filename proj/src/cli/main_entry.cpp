#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "satsec/cli.hpp"
#include "satsec/errors.hpp"

namespace satsec::cli {

namespace {

template <class Write>
void emit(const std::string& path, Write write) {
    if (path.empty() || path == "-") {
        write(std::cout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write \"" + path + "\"");
    write(out);
}

}  // namespace

int main_entry(int argc, char** argv) {
    CLI::App app{"Secrecy outage of a cache-enabled satellite-relay-ground link"};
    app.require_subcommand(1);

    std::string config_path, sweep_arg, out_path;
    std::uint64_t trials = 0, seed = 0;
    unsigned workers = 0;
    double fault = 1.0;

    auto* analytic = app.add_subcommand("analytic", "closed-form SOP and OP at each sweep point");
    analytic->add_option("--config", config_path, "JSON configuration")->required();
    analytic->add_option("--sweep", sweep_arg, "override sweep, e.g. fso.P_R_dBW=-10,0,10");
    analytic->add_option("--out", out_path, "CSV output path (default stdout)");

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimates at each sweep point");
    simulate->add_option("--config", config_path, "JSON configuration")->required();
    simulate->add_option("--sweep", sweep_arg, "override sweep");
    simulate->add_option("--trials", trials, "trials per estimator and point");
    simulate->add_option("--seed", seed, "master seed");
    simulate->add_option("--workers", workers, "worker threads (0 = all cores)");
    simulate->add_option("--out", out_path, "CSV output path (default stdout)");

    auto* validate = app.add_subcommand("validate", "compare closed forms against Monte Carlo");
    validate->add_option("--config", config_path, "JSON configuration")->required();
    validate->add_option("--sweep", sweep_arg, "override sweep");
    validate->add_option("--trials", trials, "trials per estimator and point");
    validate->add_option("--seed", seed, "master seed");
    validate->add_option("--workers", workers, "worker threads (0 = all cores)");
    validate->add_option("--inject-lambda-r-fault", fault, "scale analytic lambda_R")->group("");

    FigureOptions fopt;
    int fig_id = 0;
    bool no_mc = false;
    auto* figures = app.add_subcommand("figures", "write CSV series for a figure preset");
    figures->add_option("--id", fig_id, "preset id, 4..8")->required();
    figures->add_option("--out", fopt.out_dir, "output directory")->required();
    figures->add_option("--trials", fopt.trials, "Monte Carlo trials per point");
    figures->add_option("--seed", fopt.seed, "master seed");
    figures->add_option("--workers", fopt.workers, "worker threads (0 = all cores)");
    figures->add_flag("--no-mc", no_mc, "skip the Monte Carlo columns");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kConfigError;
    }

    try {
        if (figures->parsed()) {
            fopt.with_mc = !no_mc;
            if (fopt.trials < 1) throw ConfigError("--trials must be >= 1");
            for (const auto& p : run_figures(fig_id, fopt)) std::cout << p << '\n';
            return kOk;
        }

        ExperimentConfig cfg = load_config(config_path);
        if (!sweep_arg.empty()) {
            cfg.sweep = parse_sweep_arg(sweep_arg);
            for (double v : cfg.sweep->values) system_from_json(with_field(cfg.doc, cfg.sweep->path, v));
        }
        if (trials) cfg.trials.trials = trials;
        if (seed) cfg.trials.seed = seed;
        if (workers) cfg.trials.workers = workers;
        if (!out_path.empty()) cfg.csv_path = out_path;

        if (analytic->parsed()) {
            const auto rows = run_analytic(cfg);
            emit(cfg.csv_path, [&](std::ostream& os) { write_analytic_csv(os, rows, cfg.precision); });
            return kOk;
        }
        if (simulate->parsed()) {
            const auto rows = run_simulate(cfg);
            emit(cfg.csv_path, [&](std::ostream& os) { write_simulate_csv(os, rows, cfg.precision); });
            return kOk;
        }
        if (!(fault > 0.0)) throw ConfigError("--inject-lambda-r-fault must be positive");
        const auto pts = run_validate(cfg, fault);
        write_validate_report(std::cout, pts);
        for (const auto& p : pts)
            if (!p.pass()) return kValidationFailed;
        return kOk;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return kConfigError;
    } catch (const UnsupportedError& e) {
        std::cerr << "unsupported: " << e.what() << '\n';
        return kConfigError;
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return kNumericError;
    }
}

}  // namespace satsec::cli
