#include "xyzt/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace xyzt {

std::vector<double> TimeGrid::times() const {
    if (nodes < 1) throw std::invalid_argument("TimeGrid: nodes must be >= 1");
    if (nodes == 1) {
        if (t_end != 0.0)
            throw std::invalid_argument("TimeGrid: a single node requires t_end = 0");
        return {0.0};
    }
    if (!(t_end > 0.0)) throw std::invalid_argument("TimeGrid: t_end must be > 0");
    std::vector<double> out(static_cast<size_t>(nodes));
    for (int i = 0; i < nodes; ++i)
        out[static_cast<size_t>(i)] = t_end * static_cast<double>(i) / static_cast<double>(nodes - 1);
    out.back() = t_end;
    return out;
}

Trajectory make_trajectory(const ModelParams& params, const TimeGrid& grid, Route route, double dt) {
    params.validate();
    const std::vector<double> times = grid.times();
    switch (route) {
        case Route::integrator:
            return integrate_at(horodecki_state(params.p), params, times, dt);
        case Route::analytic: {
            Trajectory traj{times, {}, Route::analytic, params};
            traj.states.reserve(times.size());
            for (double t : times) traj.states.push_back(analytic_state(params, t));
            return traj;
        }
        case Route::propagator: {
            const ComplexMatrix rho0 = horodecki_state(params.p).matrix();
            Trajectory traj{times, {}, Route::propagator, params};
            traj.states.reserve(times.size());
            for (double t : times) {
                const ComplexMatrix u = propagator(params, t);
                traj.states.push_back(
                    DensityMatrix::relaxed(multiply(multiply(u, rho0), u.adjoint())));
            }
            return traj;
        }
    }
    throw std::invalid_argument("make_trajectory: unknown route");
}

std::vector<MeasureRecord> measure_trajectory(const Trajectory& traj) {
    if (traj.times.size() != traj.states.size())
        throw std::invalid_argument("measure_trajectory: times/states size mismatch");
    std::vector<MeasureRecord> out;
    out.reserve(traj.times.size());
    for (size_t i = 0; i < traj.times.size(); ++i)
        out.push_back(measure_state(traj.states[i], traj.times[i]));
    return out;
}

namespace {

// maximal index runs where flag holds, merged across single-node gaps
std::vector<std::pair<size_t, size_t>> flagged_runs(const std::vector<bool>& flag, bool merge_gaps) {
    std::vector<std::pair<size_t, size_t>> runs;
    const size_t n = flag.size();
    size_t i = 0;
    while (i < n) {
        if (!flag[i]) {
            ++i;
            continue;
        }
        size_t j = i;
        while (j + 1 < n) {
            if (flag[j + 1]) {
                ++j;
            } else if (merge_gaps && j + 2 < n && flag[j + 2]) {
                j += 2;  // bridge a single non-flagged node
            } else {
                break;
            }
        }
        runs.emplace_back(i, j);
        i = j + 1;
    }
    return runs;
}

} // namespace

std::vector<ViolationInterval> find_violations(std::span<const MeasureRecord> records,
                                               const ModelParams& params) {
    for (size_t i = 1; i < records.size(); ++i)
        if (!(records[i].t > records[i - 1].t))
            throw std::invalid_argument("find_violations: records must be time-ordered");
    std::vector<bool> flag(records.size());
    for (size_t i = 0; i < records.size(); ++i)
        flag[i] = records[i].IC - records[i].upper_bound > kViolationThreshold;
    std::vector<ViolationInterval> out;
    for (auto [a, b] : flagged_runs(flag, true)) {
        ViolationInterval iv{records[a].t, records[b].t, 0.0, params};
        for (size_t k = a; k <= b; ++k)
            iv.max_excess = std::max(iv.max_excess, records[k].IC - records[k].upper_bound);
        out.push_back(iv);
    }
    return out;
}

std::vector<std::pair<double, double>> death_intervals(std::span<const MeasureRecord> records) {
    for (size_t i = 1; i < records.size(); ++i)
        if (!(records[i].t > records[i - 1].t))
            throw std::invalid_argument("death_intervals: records must be time-ordered");
    std::vector<bool> flag(records.size());
    for (size_t i = 0; i < records.size(); ++i) flag[i] = records[i].C <= kDeathThreshold;
    std::vector<std::pair<double, double>> out;
    for (auto [a, b] : flagged_runs(flag, false))
        out.emplace_back(records[a].t, records[b].t);
    return out;
}

RouteComparison compare_routes(const ModelParams& params, double t_end, double dt, int nodes) {
    const TimeGrid grid{t_end, nodes};
    const Trajectory analytic = make_trajectory(params, grid, Route::analytic, dt);
    const Trajectory numeric = make_trajectory(params, grid, Route::integrator, dt);

    RouteComparison cmp;
    cmp.per_node.reserve(analytic.times.size());
    for (size_t i = 0; i < analytic.times.size(); ++i) {
        const ComplexMatrix& a = analytic.states[i].matrix();
        const ComplexMatrix& b = numeric.states[i].matrix();
        double node_max = 0.0;
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) {
                const double d = std::abs(a(r, c) - b(r, c));
                node_max = std::max(node_max, d);
                auto& cell = cmp.per_element_max[static_cast<size_t>(r)][static_cast<size_t>(c)];
                cell = std::max(cell, d);
            }
        cmp.per_node.emplace_back(analytic.times[i], node_max);
        cmp.max_analytic_vs_integrator = std::max(cmp.max_analytic_vs_integrator, node_max);
    }

    if (params.gamma == 0.0) {
        cmp.propagator_compared = true;
        const Trajectory unitary = make_trajectory(params, grid, Route::propagator, dt);
        for (size_t i = 0; i < unitary.times.size(); ++i) {
            cmp.max_analytic_vs_propagator =
                std::max(cmp.max_analytic_vs_propagator,
                         max_abs_diff(analytic.states[i].matrix(), unitary.states[i].matrix()));
            cmp.max_propagator_vs_integrator =
                std::max(cmp.max_propagator_vs_integrator,
                         max_abs_diff(unitary.states[i].matrix(), numeric.states[i].matrix()));
        }
    }
    return cmp;
}

void SweepConfig::validate() const {
    if (p_values.empty() || chi_values.empty() || gamma_values.empty())
        throw std::invalid_argument("SweepConfig: value grids must be non-empty");
    if (grid.nodes < 2 || !(grid.t_end > 0.0))
        throw std::invalid_argument("SweepConfig: need t_end > 0 and at least 2 nodes");
    if (!(dt > 0.0)) throw std::invalid_argument("SweepConfig: dt must be > 0");
    if (routes.empty()) throw std::invalid_argument("SweepConfig: no routes selected");
}

int worker_count() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("XYZ_TRADEOFF_THREADS")) {
        char* end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (end != env && cap >= 1 && cap < 1024) hw = std::min<unsigned>(hw, static_cast<unsigned>(cap));
    }
    return static_cast<int>(hw);
}

std::vector<SweepRow> run_sweep(const SweepConfig& config) {
    config.validate();

    struct Combo {
        ModelParams params;
        std::vector<std::vector<MeasureRecord>> per_route;  // indexed like config.routes
    };

    std::vector<Route> routes = config.routes;
    std::sort(routes.begin(), routes.end());  // analytic < integrator < propagator
    routes.erase(std::unique(routes.begin(), routes.end()), routes.end());

    std::vector<Combo> combos;
    for (double gamma : config.gamma_values)
        for (double chi : config.chi_values)
            for (double p : config.p_values) {
                Combo c;
                c.params = ModelParams{config.Jx, config.Jy, config.Jz, chi, gamma, p};
                c.params.validate();
                combos.push_back(std::move(c));
            }

    const auto evaluate = [&](Combo& combo) {
        combo.per_route.resize(routes.size());
        for (size_t r = 0; r < routes.size(); ++r) {
            if (routes[r] == Route::propagator && combo.params.gamma != 0.0)
                throw std::invalid_argument("run_sweep: propagator route requires gamma = 0");
            combo.per_route[r] =
                measure_trajectory(make_trajectory(combo.params, config.grid, routes[r], config.dt));
        }
    };

    const int workers = std::min<int>(worker_count(), static_cast<int>(combos.size()));
    if (workers <= 1) {
        for (auto& combo : combos) evaluate(combo);
    } else {
        std::atomic<size_t> cursor{0};
        std::exception_ptr error;
        std::mutex error_mutex;
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(workers));
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (;;) {
                    const size_t i = cursor.fetch_add(1);
                    if (i >= combos.size()) return;
                    try {
                        evaluate(combos[i]);
                    } catch (...) {
                        std::lock_guard<std::mutex> lock(error_mutex);
                        if (!error) error = std::current_exception();
                        return;
                    }
                }
            });
        for (auto& th : pool) th.join();
        if (error) std::rethrow_exception(error);
    }

    std::vector<SweepRow> rows;
    const std::vector<double> times = config.grid.times();
    rows.reserve(combos.size() * routes.size() * times.size());
    for (const Combo& combo : combos)
        for (size_t ti = 0; ti < times.size(); ++ti)
            for (size_t r = 0; r < routes.size(); ++r)
                rows.push_back(SweepRow{combo.params, routes[r], combo.per_route[r][ti]});
    return rows;
}

} // namespace xyzt
