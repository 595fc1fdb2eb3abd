"""Genuine multipartite entanglement detection with the qubit projection map.

The projection map sends a qubit Bloch vector (p1, p2, p3) to (p1, p2, 0). It is
positive but not completely positive; summing its lifts over all bipartitions
and adding ``kappa_N * I * Tr`` gives a map intended to stay positive on
biseparable states, so that a negative output eigenvalue flags genuine
multipartite entanglement. For three qubits this holds; from four qubits on
there are biseparable states with negative output (see the README).
"""
from .detector import (
    DetectionReport,
    PhiSpec,
    SweepRow,
    apply_phi,
    bound_entangled_eigs_analytic,
    bound_entangled_eigs_ghz_basis,
    detect,
    noise_threshold,
    phi_spec,
    sweep_bound_entangled,
    sweep_g_abcd,
    sweep_gen_ghz,
)
from .linalg import (
    hermitian_eigenvalues,
    kron,
    partial_transpose,
    pauli_expand,
    pauli_operator,
)
from .maps import (
    LiftedTerm,
    QubitMapSpec,
    apply_qubit_map,
    choi_matrix,
    eta_min_analytic,
    lift_apply,
    lindblad_projection,
)
from .states import (
    BiseparableSample,
    DensityState,
    bound_entangled,
    g_abcd,
    gen_ghz,
    ghz,
    is_density,
    qubit_from_bloch,
    random_biseparable,
    w_state,
    werner,
    white_noise_mix,
)
from .witness import WitnessOperator, build_witness, expectation, measurement_settings

__version__ = "0.1.0"
