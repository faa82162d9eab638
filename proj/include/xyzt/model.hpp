#pragma once

#include <array>
#include <utility>

#include "xyzt/states.hpp"

// Two-qubit XYZ Hamiltonian with a z-axis antisymmetric exchange term chi,
// its eigensystem, the unitary propagator, and the closed-form dissipative
// solution for the Horodecki initial state.

namespace xyzt {

struct ModelParams {
    double Jx = 0.5;     // spin-spin couplings (hbar = 1)
    double Jy = 0.3;
    double Jz = 0.8;
    double chi = 0.0;    // z-component of the antisymmetric exchange vector
    double gamma = 0.0;  // phase-damping rate, equal on both qubits
    double p = 1.0;      // initial-state purity parameter

    void validate() const;
};

struct DerivedConstants {
    double beta;  // sqrt(4 chi^2 + (Jx + Jy)^2)
    double u;     // (Jx + Jy)/beta
    double v;     // 2 chi / beta
    cplx xi;      // u + i v
};

/// beta, u, v, xi; at beta = 0 the convention u = 1, v = 0 is used.
DerivedConstants derived_constants(const ModelParams& params);

/// H = Jx XX + Jy YY + Jz ZZ + chi (XY - YX).
/// Nonzero pattern: diag(Jz,-Jz,-Jz,Jz), H(0,3) = Jx-Jy, H(1,2) = Jx+Jy+2i chi.
ComplexMatrix hamiltonian(const ModelParams& params);

struct EigenSystem {
    std::array<double, 4> energies;        // E1..E4
    std::array<PureState, 4> eigenvectors; // orthonormal, H v_c = E_c v_c
    bool degenerate_inner;                 // beta == 0: inner doublet degenerate
};

/// Closed-form eigensystem: E1 = Jx-Jy+Jz with (|00>+|11>)/sqrt2,
/// E4 = -Jx+Jy+Jz with (|00>-|11>)/sqrt2, and the inner doublet
/// E2,3 = -Jz +- beta with (|01> +- conj(xi)|10>)/sqrt2. Every pair is
/// verified against hamiltonian(params) by residual check.
std::pair<EigenSystem, DerivedConstants> eigensystem(const ModelParams& params);

/// U(t) = sum_c exp(-i E_c t) |v_c><v_c|; unitary.
ComplexMatrix propagator(const ModelParams& params, double t);

/// Closed-form X-state solution of the damped dynamics from the Horodecki
/// initial state. Exact for gamma = 0; for gamma > 0 the coherence damping
/// carries the single exp(-gamma t / 2) envelope of the closed form, which
/// deviates from direct integration of the generator (see analysis::compare_routes).
DensityMatrix analytic_state(const ModelParams& params, double t);

} // namespace xyzt
