#pragma once

#include <array>

#include "xyzt/matcore.hpp"
#include "xyzt/rng.hpp"

// Quantum-state construction for the two-qubit basis |00>,|01>,|10>,|11>:
// validated density matrices, partial trace, spin flip, purity, named
// states, and seeded random-state generation.

namespace xyzt {

enum class Subsystem { A, B };

// Density matrix with construction-time validation: Hermitian within 1e-10,
// unit trace within 1e-10, minimum eigenvalue >= -1e-9. The relaxed
// constructor defers the eigenvalue (PSD) check for mid-integration states.
class DensityMatrix {
public:
    static DensityMatrix validated(ComplexMatrix m);
    static DensityMatrix relaxed(ComplexMatrix m);

    const ComplexMatrix& matrix() const { return m_; }
    int dim() const { return m_.dim(); }
    const cplx& operator()(int i, int j) const { return m_(i, j); }

private:
    explicit DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {}
    ComplexMatrix m_;
};

class PureState {
public:
    /// amplitudes in the |00>,|01>,|10>,|11> basis; must be normalized within 1e-12
    explicit PureState(std::array<cplx, 4> amplitudes);

    /// normalize-then-construct, for generator output
    static PureState normalized(std::array<cplx, 4> amplitudes);

    const std::array<cplx, 4>& amplitudes() const { return amp_; }
    cplx operator[](int i) const { return amp_[static_cast<size_t>(i)]; }

    DensityMatrix projector() const;

private:
    std::array<cplx, 4> amp_;
};

/// Reduced 2x2 state of the kept qubit.
DensityMatrix partial_trace(const DensityMatrix& rho, Subsystem keep);

/// Wootters conjugate (sigma_y x sigma_y) rho* (sigma_y x sigma_y).
ComplexMatrix spin_flip(const DensityMatrix& rho);
ComplexMatrix spin_flip(const ComplexMatrix& rho);

/// tr(rho^2), real part (imaginary part checked against 1e-12).
double purity(const DensityMatrix& rho);

/// rho(0) = p |Phi><Phi| + (1-p) |11><11| with |Phi> = (|10>+|01>)/sqrt(2).
DensityMatrix horodecki_state(double p);

/// Induced random state G G^dagger / tr with G a 4 x rank complex Ginibre block.
DensityMatrix random_density(int rank, SplitMix64& rng);

/// Haar-like random pure state: 4 complex Gaussians, normalized.
PureState random_pure(SplitMix64& rng);

} // namespace xyzt
