"""Exact-diagonalization toolkit for quantum Gibbs samplers.

Builds Gaussian- and Metropolis-filtered Lindblad generators for small spin
systems, maps them to Hermitian parent Hamiltonians, and verifies spectral
gaps, quasi-locality, adiabatic thermal-state preparation, low-temperature
limits, and circuit-to-Hamiltonian clock constructions — each claim checked
numerically against its analytic bound.
"""

__version__ = "0.1.0"

from .adiabatic import (
    AdiabaticResult, bell_initial_state, derivative_bounds, derivative_norms,
    evolve_adiabatic, purified_gibbs_vector, refinement_check, tilde_at_beta,
)
from .clock import (
    CheegerReport, ClockBundle, Gate, MoveLemmaReport, QuantumCircuit,
    build_clock, build_kitaev, cheeger_constant, clock_energies,
    clock_jump_set, clock_state_index, history_overlap, history_states,
    kernel_projectors, level_dimension_formula, level_dimensions,
    measure_ff_terms, measure_ff_terms_sampled, verify_move_lemma,
)
from .filters import (
    ALPHA_00_INFINITE_BETA, DEPOLARIZING_LAMBDA, CoefficientTable, FilterSpec,
    coefficient_table, coherent_b, gaussian_coefficient,
    gaussian_coefficient_quadrature, metropolis_alpha,
)
from .harness import (
    EXPERIMENTS, CheckResult, ExperimentConfig, RunManifest, list_checks,
    load_config, parse_config, run_experiment,
)
from .lindblad import (
    JumpSet, SuperOperator, assemble_lindbladian,
    assemble_lindbladian_reference, gibbs_state, single_site_pauli_jumps,
    stationarity_defect,
)
from .lowtemp import (
    LaplaceCurve, LevelChain, OverlapCurve, generator_distance,
    ground_overlap_experiment, herbst_overlap_bound,
    laplace_bound, laplace_curve, laplace_transform, level_chain,
    perturbation_bound_hamiltonian, perturbation_bound_infinite,
    prop_c1_pointwise_bound, zero_temp_generator,
)
from .modelio import ParseError, load_circuit, load_model, parse_circuit, parse_model
from .norms import infty_to_infty_lower, one_to_one_lower, two_to_two
from .operators import (
    PAULI_X, PAULI_Y, PAULI_Z, InteractionList, Term, ball, build_hamiltonian,
    embed, kron_all, lieb_robinson_velocity, pauli_string, random_local_chain,
    restrict_to_ball, single_term, tfim_chain,
)
from .spectral import BohrComponents, SpectralData, bohr_decompose, diagonalize
from .tilde import (
    TelescopicReport, TildeGenerator, depolarizing_distance,
    increment_support_defect, mixing_curve, spectral_gap, telescopic_bound,
    telescopic_norms, tilde_transform,
)

__all__ = [name for name in dir() if not name.startswith("_")]
