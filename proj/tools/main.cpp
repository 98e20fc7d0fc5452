#include <CLI11.hpp>

#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "dronecell/capacity.hpp"
#include "dronecell/errors.hpp"
#include "dronecell/scenario.hpp"
#include "dronecell/simulate.hpp"
#include "dronecell/units.hpp"

using namespace dronecell;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidationFail = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitInfeasible = 3;

constexpr const char* kSweepHeader =
    "variable,value,option,height_m,rho,n_serving,mean_se_bps_hz,network_capacity_bps,"
    "user_capacity_bps,status";

std::string fmt(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

struct CommonArgs {
    std::string config_path;
    std::vector<std::string> overrides;
    std::string option = "both";
    std::string height = "auto";
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "scenario config file (defaults when omitted)");
    cmd->add_option("--set", args.overrides, "override a config key, e.g. --set fleet.n_drones=6")
        ->take_all();
    cmd->add_option("--option", args.option, "airborne|landed|both")
        ->check(CLI::IsMember({"airborne", "landed", "both"}));
    cmd->add_option("--height", args.height, "service height: auto, config, or meters");
}

// Feasibility violations exit with their own code so sweeps can script on it.
ScenarioConfig load_scenario(const CommonArgs& args) {
    ScenarioConfig config;
    if (!args.config_path.empty()) {
        std::ifstream in(args.config_path, std::ios::binary);
        if (!in) throw ConfigError("cannot open config file '" + args.config_path + "'");
        std::ostringstream buf;
        buf << in.rdbuf();
        config = parse_config(buf.str());
    }
    for (const auto& o : args.overrides) apply_override(config, o);
    auto violations = validate(config);
    if (!violations.empty()) {
        bool only_feasibility = true;
        std::string msg = "invalid scenario:";
        for (const auto& v : violations) {
            msg += "\n  " + v.field + ": " + v.rule + " violated";
            if (v.rule.find("infeasible cycle") == std::string::npos) only_feasibility = false;
        }
        if (only_feasibility) throw InfeasibleCycleError(msg);
        throw ValidationError(msg);
    }
    return config;
}

std::vector<DeploymentOption> selected_options(const std::string& opt) {
    if (opt == "airborne") return {DeploymentOption::Airborne};
    if (opt == "landed") return {DeploymentOption::Landed};
    return {DeploymentOption::Airborne, DeploymentOption::Landed};
}

HeightSpec height_spec_for(const std::string& height, DeploymentOption option,
                           const ScenarioConfig& config) {
    if (height == "auto") return HeightSpec::automatic();
    if (height == "config") {
        return HeightSpec::fixed(option == DeploymentOption::Airborne
                                     ? config.fleet.airborne_height_m
                                     : config.fleet.landed_height_m);
    }
    double v = 0.0;
    auto res = std::from_chars(height.data(), height.data() + height.size(), v);
    if (res.ec != std::errc() || res.ptr != height.data() + height.size()) {
        throw ConfigError("--height expects 'auto', 'config', or a number, got '" + height + "'");
    }
    return HeightSpec::fixed(v);
}

CapacityReport analyze_forced_m(DeploymentOption option, const ScenarioConfig& config,
                                HeightSpec height, int forced_m) {
    CycleResult cycle = serving_fraction(option, config.fleet, config.area.station_distance_m);
    CapacityReport report;
    report.option = option;
    report.rho = cycle.rho;
    report.m_serving = forced_m;
    report.height_m = resolve_height(option, forced_m, config, height);
    report.mean_se_bps_hz = mean_se(option, forced_m, config, report.height_m);
    report.network_capacity_bps =
        forced_m * config.radio.bandwidth_hz * report.mean_se_bps_hz;
    if (config.area.user_density_per_m2 > 0.0) {
        report.user_capacity_bps =
            user_capacity_at(option, forced_m, config, report.height_m);
    }
    return report;
}

std::string csv_row(const std::string& variable, const std::string& value,
                    const CapacityReport& r) {
    std::string status = "ok";
    if (r.no_coverage) status = "no_coverage";
    if (r.serving_capped) status = "serving_capped";
    std::string user = r.user_capacity_bps ? fmt(*r.user_capacity_bps) : "";
    if (r.no_coverage) {
        return variable + "," + value + "," + to_string(r.option) + ",," + fmt(r.rho) +
               ",0,,0,," + status;
    }
    return variable + "," + value + "," + to_string(r.option) + "," + fmt(r.height_m) + "," +
           fmt(r.rho) + "," + std::to_string(r.m_serving) + "," + fmt(r.mean_se_bps_hz) + "," +
           fmt(r.network_capacity_bps) + "," + user + "," + status;
}

std::string infeasible_row(const std::string& variable, const std::string& value,
                           DeploymentOption option) {
    return variable + "," + value + "," + std::string(to_string(option)) + ",,,,,,,infeasible";
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + path + "'");
    out << text;
}

int run_evaluate(const CommonArgs& common, const std::string& out_path,
                 const std::string& dump_pdf_path, int forced_m) {
    ScenarioConfig config = load_scenario(common);
    auto options = selected_options(common.option);

    if (!dump_pdf_path.empty() && options.size() != 1) {
        throw ConfigError("--dump-pdf needs --option airborne or landed");
    }

    std::string csv = std::string(kSweepHeader) + "\n";
    for (auto option : options) {
        HeightSpec hs = height_spec_for(common.height, option, config);
        CapacityReport r = forced_m > 0 ? analyze_forced_m(option, config, hs, forced_m)
                                        : analyze(option, config, hs);
        std::cout << "option=" << to_string(option) << " height_m=" << fmt(r.height_m)
                  << " rho=" << fmt(r.rho) << " n_serving=" << r.m_serving
                  << " mean_se_bps_hz=" << fmt(r.mean_se_bps_hz)
                  << " network_capacity_bps=" << fmt(r.network_capacity_bps)
                  << " user_capacity_bps="
                  << (r.user_capacity_bps ? fmt(*r.user_capacity_bps) : std::string("n/a"));
        if (r.no_coverage) std::cout << " status=no_guaranteed_coverage";
        if (r.serving_capped) std::cout << " status=serving_capped_at_6";
        std::cout << "\n";
        csv += csv_row("", "", r) + "\n";

        if (!dump_pdf_path.empty()) {
            int m = forced_m > 0 ? forced_m : r.m_serving;
            if (m < 1) throw InfeasibleCycleError("no serving APs to dump a pdf for");
            auto pdf = pdf_numeric(option, m, config.area.radius_m);
            std::string dump = "x,f_x\n";
            for (std::size_t i = 0; i < pdf.grid_x().size(); ++i) {
                dump += fmt(pdf.grid_x()[i]) + "," + fmt(pdf.grid_f()[i]) + "\n";
            }
            write_text(dump_pdf_path, dump);
        }
    }
    if (!out_path.empty()) write_text(out_path, csv);
    return kExitOk;
}

struct SweepArgs {
    std::string variable;
    double from = 0.0, to = 0.0;
    int steps = 0;
    std::string out_path;
    int forced_m = 0;
    int threads = 2;
};

int run_sweep(const CommonArgs& common, const SweepArgs& sweep) {
    ScenarioConfig base = load_scenario(common);
    if (sweep.steps < 2) throw ConfigError("--steps must be at least 2");
    if (!(sweep.from < sweep.to)) throw ConfigError("--from must be below --to");

    static const std::vector<std::string> kVars = {"height", "m", "ell", "lambda", "t", "n"};
    std::string var = sweep.variable;
    for (auto& ch : var) ch = static_cast<char>(std::tolower(ch));
    if (std::find(kVars.begin(), kVars.end(), var) == kVars.end()) {
        throw ConfigError("--sweep variable must be one of height|M|ell|lambda|T|N");
    }

    auto options = selected_options(common.option);
    std::vector<double> grid(sweep.steps);
    for (int i = 0; i < sweep.steps; ++i) {
        grid[i] = sweep.from + (sweep.to - sweep.from) * i / (sweep.steps - 1);
    }

    struct Job {
        double value;
        DeploymentOption option;
    };
    std::vector<Job> jobs;
    for (double v : grid) {
        for (auto o : options) jobs.push_back({v, o});
    }
    std::vector<std::string> rows(jobs.size());

    auto run_job = [&](std::size_t idx) {
        const Job& job = jobs[idx];
        ScenarioConfig config = base;
        HeightSpec hs = height_spec_for(common.height, job.option, config);
        int forced_m = sweep.forced_m;
        std::string value = fmt(job.value);
        if (var == "height") {
            hs = HeightSpec::fixed(job.value);
        } else if (var == "m") {
            forced_m = static_cast<int>(std::lround(job.value));
            value = std::to_string(forced_m);
        } else if (var == "ell") {
            config.area.station_distance_m = job.value;
        } else if (var == "lambda") {
            config.area.user_density_per_m2 = job.value;
        } else if (var == "t") {
            config.fleet.flight_time_h = job.value;
        } else {
            config.fleet.n_drones = static_cast<int>(std::lround(job.value));
            value = std::to_string(config.fleet.n_drones);
        }
        try {
            CapacityReport r = forced_m > 0 ? analyze_forced_m(job.option, config, hs, forced_m)
                                            : analyze(job.option, config, hs);
            rows[idx] = csv_row(var, value, r);
        } catch (const InfeasibleCycleError&) {
            rows[idx] = infeasible_row(var, value, job.option);
        }
    };

    std::atomic<std::size_t> next{0};
    int n_threads = std::max(1, sweep.threads);
    std::vector<std::thread> workers;
    for (int t = 0; t < n_threads; ++t) {
        workers.emplace_back([&] {
            for (;;) {
                std::size_t idx = next.fetch_add(1);
                if (idx >= jobs.size()) return;
                run_job(idx);
            }
        });
    }
    for (auto& w : workers) w.join();

    std::string csv = std::string(kSweepHeader) + "\n";
    for (const auto& row : rows) csv += row + "\n";
    if (!sweep.out_path.empty()) {
        write_text(sweep.out_path, csv);
    } else {
        std::cout << csv;
    }
    return kExitOk;
}

int run_boundary(const CommonArgs& common, double t_from, double t_to, int t_steps,
                 double ell_from, double ell_to, int n_drones, const std::string& out_path) {
    ScenarioConfig config = load_scenario(common);
    if (t_steps < 2) throw ConfigError("--t-steps must be at least 2");
    if (!(t_from < t_to)) throw ConfigError("--t-from must be below --t-to");
    if (n_drones <= 0) n_drones = config.fleet.n_drones;

    std::vector<double> t_grid(t_steps);
    for (int i = 0; i < t_steps; ++i) {
        t_grid[i] = t_from + (t_to - t_from) * i / (t_steps - 1);
    }
    auto rows = tradeoff_boundary(config, t_grid, ell_from, ell_to, n_drones);

    std::string csv = "T_h,ell_star_m,status\n";
    for (const auto& row : rows) {
        csv += fmt(row.flight_time_h) + ",";
        if (row.status == BoundaryPoint::Status::Crossing) csv += fmt(row.ell_star_m);
        csv += std::string(",") + to_string(row.status) + "\n";
    }
    if (!out_path.empty()) {
        write_text(out_path, csv);
    } else {
        std::cout << csv;
    }
    return kExitOk;
}

int run_validate(const CommonArgs& common, std::uint64_t seed, int reps, long long drops,
                 bool corrupt_attenuation) {
    ScenarioConfig config = load_scenario(common);

    // Test hook: perturb the attenuation constant seen by the simulator only.
    ScenarioConfig sim_config = config;
    if (corrupt_attenuation) sim_config.radio.f_c_ghz *= 1.2;

    SimConfig sim{reps, seed, drops};

    struct Line {
        std::string name;
        double analytic;
        SimEstimate mc;
        double tolerance;
    };
    std::vector<Line> lines;

    for (auto option : selected_options(common.option)) {
        CycleResult cycle =
            serving_fraction(option, config.fleet, config.area.station_distance_m);
        int m = std::min(cycle.n_serving, kMaxServingAps);
        if (m < 1) continue;
        HeightSpec hs = height_spec_for(common.height, option, config);
        double h = resolve_height(option, m, config, hs);

        lines.push_back({std::string("mean_se_") + to_string(option),
                         mean_se(option, m, config, h),
                         simulate_mean_se(option, m, sim_config, h, sim), 0.02});
        if (config.area.user_density_per_m2 > 0.0) {
            lines.push_back({std::string("user_capacity_") + to_string(option),
                             user_capacity_at(option, m, config, h),
                             simulate_user_capacity(option, sim_config, h, sim), 0.03});
        }
        if (option == DeploymentOption::Airborne) {
            auto geom = BlockageGeometry::from(config.body, h);
            for (int k = 1; k <= 5; ++k) {
                double x = config.area.radius_m * k / 6.0;
                SimConfig psim{reps, seed + k, std::max<long long>(drops / 5, 2000)};
                lines.push_back({"p_block_x" + std::to_string(static_cast<int>(x)),
                                 blockage_probability(geom, x, config.area.user_density_per_m2),
                                 simulate_blockage(sim_config, psim, x, h), 0.02});
            }
        }
    }

    bool all_ok = true;
    std::cout << "metric,analytic,mc,rel_err,ci95,n_samples,verdict\n";
    for (const auto& line : lines) {
        double rel = std::fabs(line.mc.mean - line.analytic) / std::fabs(line.analytic);
        bool ok = rel <= line.tolerance;
        all_ok = all_ok && ok;
        std::cout << line.name << "," << fmt(line.analytic) << "," << fmt(line.mc.mean) << ","
                  << fmt(rel) << "," << fmt(line.mc.ci95_halfwidth) << "," << line.mc.n_samples
                  << "," << (ok ? "ok" : "FAIL") << "\n";
    }
    if (!all_ok) {
        std::cerr << "validation failed: analytic and simulated results disagree\n";
        return kExitValidationFail;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"UAV-mounted mmWave access-point capacity analysis"};
    app.require_subcommand(1);

    CommonArgs ev_common, sw_common, bd_common, va_common;
    std::string ev_out, ev_dump;
    int ev_forced_m = 0;

    auto* evaluate = app.add_subcommand("evaluate", "single-point capacity report");
    add_common(evaluate, ev_common);
    evaluate->add_option("--out", ev_out, "also write the report as CSV");
    evaluate->add_option("--dump-pdf", ev_dump, "write the link-distance pdf grid as CSV");
    evaluate->add_option("--m-serving", ev_forced_m, "force the serving AP count (1..6)");

    SweepArgs sweep;
    auto* sw = app.add_subcommand("sweep", "grid sweep over one variable, CSV out");
    add_common(sw, sw_common);
    sw->add_option("--sweep", sweep.variable, "height|M|ell|lambda|T|N")->required();
    sw->add_option("--from", sweep.from, "grid start")->required();
    sw->add_option("--to", sweep.to, "grid end")->required();
    sw->add_option("--steps", sweep.steps, "grid points (endpoints included)")->required();
    sw->add_option("--out", sweep.out_path, "output CSV path (stdout when omitted)");
    sw->add_option("--m-serving", sweep.forced_m, "force the serving AP count (1..6)");
    sw->add_option("--threads", sweep.threads, "worker threads");

    double t_from = 1.0, t_to = 6.0, ell_from = 0.0, ell_to = 15000.0;
    int t_steps = 11, bd_n = 0;
    std::string bd_out;
    auto* bd = app.add_subcommand("boundary", "airborne-vs-landed decision boundary CSV");
    add_common(bd, bd_common);
    bd->add_option("--t-from", t_from, "battery life grid start, hours");
    bd->add_option("--t-to", t_to, "battery life grid end, hours");
    bd->add_option("--t-steps", t_steps, "battery life grid points");
    bd->add_option("--ell-from", ell_from, "station distance window start, m");
    bd->add_option("--ell-to", ell_to, "station distance window end, m");
    bd->add_option("--n", bd_n, "total drones (config value when omitted)");
    bd->add_option("--out", bd_out, "output CSV path (stdout when omitted)");

    std::uint64_t va_seed = 42;
    int va_reps = 20;
    long long va_drops = 50000;
    bool va_corrupt = false;
    auto* va = app.add_subcommand("validate", "analytic vs Monte Carlo cross-check");
    add_common(va, va_common);
    va->add_option("--seed", va_seed, "simulation seed");
    va->add_option("--reps", va_reps, "replications");
    va->add_option("--drops", va_drops, "drops per replication");
    va->add_flag("--corrupt-an", va_corrupt,
                 "test hook: perturb the simulated attenuation constant");

    CLI11_PARSE(app, argc, argv);

    try {
        if (evaluate->parsed()) return run_evaluate(ev_common, ev_out, ev_dump, ev_forced_m);
        if (sw->parsed()) return run_sweep(sw_common, sweep);
        if (bd->parsed()) {
            return run_boundary(bd_common, t_from, t_to, t_steps, ell_from, ell_to, bd_n, bd_out);
        }
        if (va->parsed()) return run_validate(va_common, va_seed, va_reps, va_drops, va_corrupt);
    } catch (const InfeasibleCycleError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const UnsupportedLayoutError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    }
    return kExitOk;
}
