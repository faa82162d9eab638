"""Two-qubit XYZ spin dynamics with trade-off measure diagnostics."""

from ._core import (
    ModelParams,
    __version__,
    analytic_state,
    concurrence,
    conservation_residual,
    derived_constants,
    eigensystem,
    evolve,
    first_order_coherence,
    hamiltonian,
    horodecki_state,
    ic_upper_bound,
    intrinsic_concurrence,
    master_rhs,
    measure_state,
    partial_trace,
    propagator,
    purity,
    random_density,
    random_pure,
    spin_flip,
    wootters_spectrum,
)

__all__ = [
    "ModelParams",
    "__version__",
    "analytic_state",
    "concurrence",
    "conservation_residual",
    "derived_constants",
    "eigensystem",
    "evolve",
    "first_order_coherence",
    "hamiltonian",
    "horodecki_state",
    "ic_upper_bound",
    "intrinsic_concurrence",
    "master_rhs",
    "measure_state",
    "partial_trace",
    "propagator",
    "purity",
    "random_density",
    "random_pure",
    "spin_flip",
    "wootters_spectrum",
]
