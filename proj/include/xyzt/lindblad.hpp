#pragma once

#include <span>
#include <vector>

#include "xyzt/model.hpp"

// Numerical ground truth for the damped dynamics: the master-equation
// generator and a fixed-step RK4 integrator.

namespace xyzt {

enum class Route { analytic, integrator, propagator };

const char* route_name(Route route);

struct Trajectory {
    std::vector<double> times;         // strictly ascending, starting at 0
    std::vector<DensityMatrix> states; // one per node
    Route route;
    ModelParams params;
};

/// d rho / dt = -i [H, rho] + (gamma/2) sum_i (2 L_i rho L_i - L_i rho - rho L_i)
/// with L_i = |1_i><1_i| on each qubit. Traceless; Hermitian-preserving.
ComplexMatrix master_rhs(const ComplexMatrix& rho, const ModelParams& params);

/// Classical fixed-step RK4. Nodes at every k*dt plus t_end; Hermiticity is
/// enforced at node boundaries by averaging with the adjoint (never inside
/// RK4 stages). Aborts on trace drift > 1e-8 or non-finite values.
Trajectory integrate(const DensityMatrix& rho0, const ModelParams& params, double t_end, double dt);

/// Same stepper, but emits exactly the requested node times (each inter-node
/// span is covered by full dt steps plus one shortened final substep).
/// times must be ascending and start at 0.
Trajectory integrate_at(const DensityMatrix& rho0, const ModelParams& params,
                        std::span<const double> times, double dt);

} // namespace xyzt
