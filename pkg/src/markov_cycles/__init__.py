"""Cycle-matrix analysis of non-equilibrium continuous-time Markov chains."""

from .chain import (
    CurrentMatrix,
    Distribution,
    Generator,
    current_matrix,
    current_vector,
    is_detailed_balance,
    kolmogorov_gap,
    stationary_distribution,
    validate_generator,
)
from .cyclegraph import (
    EdgeIndexer,
    basis_cycles,
    basis_triples,
    incidence_matrix,
    is_k_hamiltonian,
    k_closed_path,
    k_cycle_vector,
    kernel_check,
    theta,
    theta_inverse,
)
from .cyclespace import (
    CycleDecomposition,
    KNonEquilibrium,
    circulant_power,
    cycle_matrix_basis,
    decompose,
    detect_k_nonequilibrium,
    lambda_antisym,
    phi,
    phi_inverse,
    reconstruct,
)
from .solver1ne import (
    DeltaSystem,
    OneNEResult,
    augmented_minors,
    delta_determinant_closed,
    delta_matrix,
    solve_d,
    solve_one_ne,
    solve_pi,
)
from .synth import SynthSpec, random_instance, random_spec, synth_k_ne, synth_one_ne
from .sim import CurrentEstimate, Trajectory, empirical_currents, empirical_occupation, simulate

__version__ = "0.1.0"
