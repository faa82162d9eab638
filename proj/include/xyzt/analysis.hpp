#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "xyzt/lindblad.hpp"
#include "xyzt/measures.hpp"

// Trajectory post-processing: measure records, bound-violation and
// death/revival detection, route cross-validation, and parameter sweeps.

namespace xyzt {

// thresholds shared by the detectors below
inline constexpr double kViolationThreshold = 1e-9;  // on IC - upper_bound
inline constexpr double kDeathThreshold = 1e-9;      // on C

struct TimeGrid {
    double t_end = 10.0;
    int nodes = 1000;

    std::vector<double> times() const;
};

/// Produce one trajectory from the Horodecki initial state along the chosen
/// route. dt is used by the integrator route only.
Trajectory make_trajectory(const ModelParams& params, const TimeGrid& grid, Route route,
                           double dt = 1e-3);

std::vector<MeasureRecord> measure_trajectory(const Trajectory& traj);

struct ViolationInterval {
    double t_start;
    double t_end;
    double max_excess;  // peak of IC - sqrt((1 + C^2)/2) inside the interval
    ModelParams params;
};

/// Maximal contiguous runs with IC - upper_bound > 1e-9, merged across
/// single-node gaps. Empty when the bound holds.
std::vector<ViolationInterval> find_violations(std::span<const MeasureRecord> records,
                                               const ModelParams& params);

/// Maximal intervals with C <= 1e-9.
std::vector<std::pair<double, double>> death_intervals(std::span<const MeasureRecord> records);

struct RouteComparison {
    double max_analytic_vs_integrator = 0.0;
    double max_analytic_vs_propagator = 0.0;   // gamma = 0 only
    double max_propagator_vs_integrator = 0.0; // gamma = 0 only
    bool propagator_compared = false;
    std::vector<std::pair<double, double>> per_node;  // (t, max element |analytic - integrator|)
    std::array<std::array<double, 4>, 4> per_element_max{};  // over nodes
};

/// Max element deviation between the analytic closed form and the RK4
/// integrator (and the unitary propagator when gamma = 0) on a uniform grid.
RouteComparison compare_routes(const ModelParams& params, double t_end, double dt, int nodes = 1001);

struct SweepConfig {
    std::vector<double> p_values;
    std::vector<double> chi_values;
    std::vector<double> gamma_values;
    double Jx = 0.5;
    double Jy = 0.3;
    double Jz = 0.8;
    TimeGrid grid{};
    double dt = 1e-3;
    std::uint64_t seed = 0;
    std::vector<Route> routes{Route::analytic};

    void validate() const;
};

struct SweepRow {
    ModelParams params;
    Route route;
    MeasureRecord record;
};

/// Full cross product, rows in lexicographic (gamma, chi, p, t, route) order
/// with routes ordered analytic < integrator < propagator. Grid points are
/// evaluated in parallel (worker count capped by XYZ_TRADEOFF_THREADS);
/// emission order is deterministic regardless.
std::vector<SweepRow> run_sweep(const SweepConfig& config);

/// Worker cap from XYZ_TRADEOFF_THREADS (>= 1), defaulting to hardware concurrency.
int worker_count();

} // namespace xyzt
