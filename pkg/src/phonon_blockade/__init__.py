"""Qubit-induced phonon blockade in a nanomechanical resonator.

Effective driven Kerr oscillator under a thermal master equation, solved
directly and by quantum-jump trajectories, with s-parametrized
quasiprobability maps and electromotive-force power spectra.
"""

from .fock import (
    annihilation_op,
    creation_op,
    displacement_op,
    expectation,
    fock_dm,
    fock_ket,
    number_op,
    tensor,
    thermal_dm,
)
from .lindblad import (
    BlockadeObservables,
    Liouvillian,
    build_liouvillian,
    evolve,
    kerr_steady_state,
    steady_state,
)
from .mcwf import EnsembleEstimate, Trajectory, ensemble_average, run_ensemble, run_trajectory
from .model import (
    HamiltonianSpec,
    PhysicalParams,
    ReducedParams,
    build_full_model,
    build_kerr_hamiltonian,
    map_physical_params,
)
from .qpd import PhaseSpaceGrid, QpdMap, negativity_witness, qpd_grid, qpd_point
from .spectrum import (
    emf_operator,
    find_peaks,
    kerr_spectrum,
    power_spectrum,
    predicted_peaks,
    two_time_correlation,
)

__version__ = "0.1.0"
