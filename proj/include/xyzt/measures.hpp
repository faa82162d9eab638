#pragma once

#include <array>
#include <optional>

#include "xyzt/states.hpp"

// Resource quantifiers for two-qubit states: concurrence, intrinsic
// concurrence, first-order coherence, purity, and the derived trade-off
// quantities (upper bound and conservation residual).

namespace xyzt {

/// Eigenvalues of rho * rho_tilde, nonnegative and sorted descending.
struct WoottersSpectrum {
    std::array<double, 4> lambdas;
};

/// Computed on the Hermitian congruence sqrt(rho) rho_tilde sqrt(rho),
/// which shares the spectrum of rho * rho_tilde.
WoottersSpectrum wootters_spectrum(const DensityMatrix& rho);

/// max(0, sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4))
double concurrence(const DensityMatrix& rho);

/// sqrt(2 (1 - tr[rho_A^2])) for a pure state; A and B sides are averaged
/// (they agree to round-off).
double concurrence_pure(const PureState& psi);

/// sqrt(tr(rho rho_tilde))
double intrinsic_concurrence(const DensityMatrix& rho);

struct Coherence {
    double F;    // sqrt((F_A^2 + F_B^2)/2)
    double F_A;  // sqrt(2 tr[rho_A^2] - 1)
    double F_B;
};

Coherence first_order_coherence(const DensityMatrix& rho);

/// Right-hand side of the restriction inequality: sqrt((1 + C^2)/2).
double ic_upper_bound(double C);

/// IC^2 + F^2 - purity; identically zero for every two-qubit state.
double conservation_residual(const DensityMatrix& rho);

/// Closed-form concurrence for X-shaped states (only (1,4)/(2,3)
/// off-diagonals populated): 2 max(0, |r23| - sqrt(r11 r44), |r14| - sqrt(r22 r33)).
/// Returns nullopt when the state is not X-shaped within 1e-12. Serves as an
/// independent check against the spectral route.
std::optional<double> concurrence_xstate(const DensityMatrix& rho);

/// Per-time-point bundle of every quantifier.
struct MeasureRecord {
    double t;
    double C;
    double IC;
    double F;
    double F_A;
    double F_B;
    double purity;
    double upper_bound;  // sqrt((1 + C^2)/2)
    double residual;     // IC^2 + F^2 - purity
};

MeasureRecord measure_state(const DensityMatrix& rho, double t);

} // namespace xyzt
