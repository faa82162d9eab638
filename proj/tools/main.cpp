// Command-line front end: evolve / figure / check-bounds / random-audit.
//
// Exit codes: 0 success, 1 numeric or audit failure, 2 usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "xyzt/analysis.hpp"
#include "xyzt/io.hpp"
#include "xyzt/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace xyzt;

namespace {

struct CommonFlags {
    double jx = 0.5;
    double jy = 0.3;
    double jz = 0.8;
    double chi = 0.0;
    double gamma = 0.0;
    double p = 1.0;
    double t_end = 10.0;
    int nodes = 1000;
    double dt = 1e-3;
    std::string route = "analytic";
    std::uint64_t seed = 0;
};

Route parse_route(const std::string& name) {
    if (name == "analytic") return Route::analytic;
    if (name == "integrator") return Route::integrator;
    if (name == "propagator") return Route::propagator;
    throw CLI::ValidationError("--route", "unknown route '" + name + "'");
}

void add_model_flags(CLI::App* cmd, CommonFlags& f, bool with_state) {
    cmd->add_option("--jx", f.jx, "coupling along x")->capture_default_str();
    cmd->add_option("--jy", f.jy, "coupling along y")->capture_default_str();
    cmd->add_option("--jz", f.jz, "coupling along z")->capture_default_str();
    cmd->add_option("--chi", f.chi, "z-axis antisymmetric exchange strength")->capture_default_str();
    cmd->add_option("--gamma", f.gamma, "phase-damping rate")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    if (with_state)
        cmd->add_option("--p", f.p, "initial-state purity parameter")
            ->check(CLI::Range(0.0, 1.0))
            ->capture_default_str();
    cmd->add_option("--t-end", f.t_end, "final time")->check(CLI::NonNegativeNumber)->capture_default_str();
    cmd->add_option("--nodes", f.nodes, "number of time nodes")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--dt", f.dt, "integrator step")->check(CLI::PositiveNumber)->capture_default_str();
    cmd->add_option("--route", f.route, "trajectory route")
        ->check(CLI::IsMember({"analytic", "integrator", "propagator"}))
        ->capture_default_str();
    cmd->add_option("--seed", f.seed, "rng seed, recorded in outputs")->capture_default_str();
}

void validate_grid(const CommonFlags& f) {
    if (f.nodes == 1 && f.t_end != 0.0)
        throw CLI::ValidationError("--nodes", "a single node requires --t-end 0");
    if (parse_route(f.route) == Route::propagator && f.gamma != 0.0)
        throw CLI::ValidationError("--route", "the propagator route requires --gamma 0");
}

json config_json(const CommonFlags& f) {
    json cfg;
    cfg["Jx"] = f.jx;
    cfg["Jy"] = f.jy;
    cfg["Jz"] = f.jz;
    cfg["chi"] = f.chi;
    cfg["gamma"] = f.gamma;
    cfg["t_end"] = f.t_end;
    cfg["nodes"] = f.nodes;
    cfg["dt"] = f.dt;
    cfg["route"] = f.route;
    return cfg;
}

json row_to_json(const OutputRow& row) {
    json j;
    j["t"] = row.t;
    j["p"] = row.p;
    j["chi"] = row.chi;
    j["gamma"] = row.gamma;
    j["Jx"] = row.Jx;
    j["Jy"] = row.Jy;
    j["Jz"] = row.Jz;
    j["route"] = route_name(row.route);
    j["C"] = row.C;
    j["IC"] = row.IC;
    j["F"] = row.F;
    j["F_A"] = row.F_A;
    j["F_B"] = row.F_B;
    j["purity"] = row.purity;
    j["upper_bound"] = row.upper_bound;
    j["residual"] = row.residual;
    return j;
}

std::vector<double> linspace01(int count) {
    std::vector<double> out(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i)
        out[static_cast<size_t>(i)] =
            count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
    return out;
}

int cmd_evolve(const CommonFlags& f, const std::string& format) {
    validate_grid(f);
    const ModelParams params{f.jx, f.jy, f.jz, f.chi, f.gamma, f.p};
    const TimeGrid grid{f.t_end, f.nodes};
    const Route route = parse_route(f.route);
    const auto records = measure_trajectory(make_trajectory(params, grid, route, f.dt));

    std::vector<OutputRow> rows;
    rows.reserve(records.size());
    for (const MeasureRecord& rec : records) rows.push_back(to_output_row(SweepRow{params, route, rec}));

    if (format == "json") {
        json arr = json::array();
        for (const OutputRow& row : rows) arr.push_back(row_to_json(row));
        std::cout << arr.dump(2) << '\n';
    } else {
        write_csv(std::cout, rows);
    }
    return 0;
}

struct Panel {
    std::string filename;
    std::vector<OutputRow> rows;
};

int cmd_figure(const std::string& name, const CommonFlags& f, const std::string& out_dir) {
    validate_grid(f);
    SweepConfig config;
    config.Jx = f.jx;
    config.Jy = f.jy;
    config.Jz = f.jz;
    config.grid = TimeGrid{f.t_end, f.nodes};
    config.dt = f.dt;
    config.seed = f.seed;
    config.routes = {parse_route(f.route)};

    bool panel_per_p = true;
    if (name == "fig2") {
        config.p_values = linspace01(101);
        config.chi_values = {1.0};
        config.gamma_values = {0.0, 0.25};
        panel_per_p = false;  // one surface file per gamma
    } else if (name == "fig3") {
        config.p_values = {0.0, 0.33, 0.66, 1.0};
        config.chi_values = {0.0, 0.5, 1.0};
        config.gamma_values = {0.0};
    } else if (name == "fig4") {
        config.p_values = {0.0, 0.33, 0.66, 1.0};
        config.chi_values = {0.0, 0.5, 1.0};
        config.gamma_values = {0.25};
    } else {
        throw CLI::ValidationError("figure", "unknown figure '" + name + "' (expected fig2|fig3|fig4)");
    }

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    {
        std::ofstream probe(fs::path(out_dir) / ".write_probe");
        if (!probe) {
            std::cerr << "figure: output directory '" << out_dir << "' is not writable\n";
            return 2;
        }
    }
    fs::remove(fs::path(out_dir) / ".write_probe", ec);

    const auto sweep = run_sweep(config);

    // partition rows into panels, preserving sweep order inside each panel
    std::map<std::string, Panel> panels;
    std::vector<std::string> order;
    for (const SweepRow& srow : sweep) {
        std::string key = name;
        if (panel_per_p) key += "_p" + format_compact(srow.params.p);
        key += "_chi" + format_compact(srow.params.chi);
        key += "_gamma" + format_compact(srow.params.gamma);
        key += ".csv";
        auto [it, inserted] = panels.try_emplace(key);
        if (inserted) {
            it->second.filename = key;
            order.push_back(key);
        }
        it->second.rows.push_back(to_output_row(srow));
    }

    json manifest;
    manifest["schema"] = 1;
    manifest["version"] = kVersion;
    manifest["figure"] = name;
    manifest["seed"] = f.seed;
    manifest["config"] = config_json(f);
    manifest["config"]["p_values"] = config.p_values;
    manifest["config"]["chi_values"] = config.chi_values;
    manifest["config"]["gamma_values"] = config.gamma_values;
    manifest["files"] = json::array();

    for (const std::string& key : order) {
        const Panel& panel = panels.at(key);
        std::ofstream file(fs::path(out_dir) / panel.filename, std::ios::binary);
        if (!file) {
            std::cerr << "figure: cannot open '" << panel.filename << "' for writing\n";
            return 2;
        }
        write_csv(file, panel.rows);
        manifest["files"].push_back(panel.filename);
    }

    std::ofstream mf(fs::path(out_dir) / (name + "_manifest.json"), std::ios::binary);
    if (!mf) {
        std::cerr << "figure: cannot write manifest\n";
        return 2;
    }
    mf << manifest.dump(2) << '\n';
    std::cout << "wrote " << order.size() << " panel files and " << name << "_manifest.json to "
              << out_dir << '\n';
    return 0;
}

int cmd_check_bounds(const CommonFlags& f, int p_nodes, int random_rank, int samples) {
    validate_grid(f);
    json report;
    report["schema"] = 1;
    report["version"] = kVersion;
    report["seed"] = f.seed;
    report["threshold"] = kViolationThreshold;

    if (random_rank > 0) {
        SplitMix64 rng = SplitMix64(f.seed).split(static_cast<std::uint64_t>(random_rank));
        int count = 0;
        double max_excess = -1.0;
        for (int i = 0; i < samples; ++i) {
            const DensityMatrix rho = random_density(random_rank, rng);
            const double excess = intrinsic_concurrence(rho) - ic_upper_bound(concurrence(rho));
            max_excess = std::max(max_excess, excess);
            if (excess > kViolationThreshold) ++count;
        }
        report["mode"] = "random";
        report["rank"] = random_rank;
        report["samples"] = samples;
        report["violation_count"] = count;
        report["max_excess_observed"] = max_excess;
        report["violations"] = json::array();
        std::cout << report.dump(2) << '\n';
        return 0;
    }

    const std::vector<double> ps = linspace01(p_nodes);
    const TimeGrid grid{f.t_end, f.nodes};
    const Route route = parse_route(f.route);

    json violations = json::array();
    double max_excess = -1.0;
    for (double p : ps) {
        const ModelParams params{f.jx, f.jy, f.jz, f.chi, f.gamma, p};
        const auto records = measure_trajectory(make_trajectory(params, grid, route, f.dt));
        for (const MeasureRecord& rec : records)
            max_excess = std::max(max_excess, rec.IC - rec.upper_bound);
        for (const ViolationInterval& iv : find_violations(records, params)) {
            json j;
            j["p"] = p;
            j["t_start"] = iv.t_start;
            j["t_end"] = iv.t_end;
            j["max_excess"] = iv.max_excess;
            violations.push_back(j);
        }
    }
    report["mode"] = "grid";
    report["config"] = config_json(f);
    report["config"]["p_nodes"] = p_nodes;
    report["violation_count"] = violations.size();
    report["violations"] = violations;
    report["max_excess_observed"] = max_excess;
    std::cout << report.dump(2) << '\n';
    return 0;
}

int cmd_random_audit(std::uint64_t seed, int rank, int samples) {
    json ranks;
    bool invariants_ok = true;
    double overall_residual = 0.0, overall_cic = -1.0;
    int overall_violations = 0;

    std::vector<int> rank_list;
    if (rank == 0)
        rank_list = {1, 2, 3, 4};
    else
        rank_list = {rank};

    for (int r : rank_list) {
        SplitMix64 rng = SplitMix64(seed).split(static_cast<std::uint64_t>(r));
        double max_residual = 0.0;
        double max_c_minus_ic = -1.0;
        int ub_violations = 0;
        for (int i = 0; i < samples; ++i) {
            const DensityMatrix rho = random_density(r, rng);
            const MeasureRecord rec = measure_state(rho, 0.0);
            max_residual = std::max(max_residual, std::abs(rec.residual));
            max_c_minus_ic = std::max(max_c_minus_ic, rec.C - rec.IC);
            if (rec.IC - rec.upper_bound > kViolationThreshold) ++ub_violations;
        }
        json entry;
        entry["max_residual"] = max_residual;
        entry["max_c_minus_ic"] = max_c_minus_ic;
        entry["upper_bound_violations"] = ub_violations;
        ranks[std::to_string(r)] = entry;

        overall_residual = std::max(overall_residual, max_residual);
        overall_cic = std::max(overall_cic, max_c_minus_ic);
        overall_violations += ub_violations;
        if (max_residual > 1e-10 || max_c_minus_ic > 1e-12) invariants_ok = false;
    }

    json report;
    report["schema"] = 1;
    report["version"] = kVersion;
    report["seed"] = seed;
    report["samples"] = samples;
    report["ranks"] = ranks;
    report["overall"]["max_residual"] = overall_residual;
    report["overall"]["max_c_minus_ic"] = overall_cic;
    report["overall"]["upper_bound_violations"] = overall_violations;
    report["invariants_ok"] = invariants_ok;
    std::cout << report.dump(2) << '\n';
    return invariants_ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-qubit XYZ spin simulator with trade-off diagnostics"};
    app.set_version_flag("--version", kVersion);
    app.set_config("--config", "", "flat key=value config file mirroring the flags");
    app.require_subcommand(1);

    CommonFlags evolve_flags;
    std::string evolve_format = "csv";
    CLI::App* evolve = app.add_subcommand("evolve", "emit one trajectory's measure records");
    add_model_flags(evolve, evolve_flags, true);
    evolve->add_option("--format", evolve_format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();

    CommonFlags figure_flags;
    std::string figure_name;
    std::string figure_out = "figure_out";
    CLI::App* figure = app.add_subcommand("figure", "regenerate figure panel data");
    figure->add_option("name", figure_name, "fig2 | fig3 | fig4")->required();
    add_model_flags(figure, figure_flags, false);
    figure->add_option("--out", figure_out, "output directory")->capture_default_str();

    CommonFlags check_flags;
    int p_nodes = 101;
    int random_rank = 0;
    int check_samples = 10000;
    CLI::App* check = app.add_subcommand("check-bounds", "search for restriction-bound violations");
    add_model_flags(check, check_flags, false);
    check->add_option("--p-nodes", p_nodes, "p-grid size over [0,1]")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    check->add_option("--random-rank", random_rank, "audit random states of this rank instead")
        ->check(CLI::Range(1, 4));
    check->add_option("--samples", check_samples, "random-state sample count")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    std::uint64_t audit_seed = 0;
    int audit_rank = 0;
    int audit_samples = 10000;
    CLI::App* audit = app.add_subcommand("random-audit", "verify measure identities on random states");
    audit->add_option("--samples", audit_samples, "samples per rank")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    audit->add_option("--rank", audit_rank, "restrict to one rank (default: all)")
        ->check(CLI::Range(0, 4))
        ->capture_default_str();
    audit->add_option("--seed", audit_seed, "rng seed, recorded in the report")->capture_default_str();

    try {
        app.parse(argc, argv);

        if (evolve->parsed()) return cmd_evolve(evolve_flags, evolve_format);
        if (figure->parsed()) return cmd_figure(figure_name, figure_flags, figure_out);
        if (check->parsed()) return cmd_check_bounds(check_flags, p_nodes, random_rank, check_samples);
        if (audit->parsed()) return cmd_random_audit(audit_seed, audit_rank, audit_samples);
        return 2;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
