"""The projection map on M_2, its Lindblad form, lifting to qubit registers, Choi matrices."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .linalg import PAULI, as_square
from .states import DensityState, bell_state


@dataclass(frozen=True, eq=False)
class QubitMapSpec:
    """A linear map on 2x2 matrices, optionally followed by a unitary conjugation.

    ``kind`` is ``"identity"``, ``"projection"`` or ``"lindblad"``; the latter
    uses ``gammas`` as the three Pauli-channel coefficients of the generator.
    """

    kind: str
    gammas: tuple[float, float, float] | None = None
    post_unitary: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.kind not in ("identity", "projection", "lindblad"):
            raise ValueError(f"unknown map kind {self.kind!r}")
        if self.kind == "lindblad" and (self.gammas is None or len(self.gammas) != 3):
            raise ValueError("lindblad map needs three gamma coefficients")
        if self.post_unitary is not None:
            u = as_square(self.post_unitary)
            if u.shape != (2, 2) or np.max(np.abs(u @ u.conj().T - np.eye(2))) > 1e-12:
                raise ValueError("post_unitary must be a 2x2 unitary")
            u = u.copy()
            u.setflags(write=False)
            object.__setattr__(self, "post_unitary", u)


IDENTITY = QubitMapSpec("identity")
PROJECTION = QubitMapSpec("projection")


def projection(post_unitary=None) -> QubitMapSpec:
    return QubitMapSpec("projection", post_unitary=post_unitary)


def lindblad_projection(g1: float, g2: float, g3: float) -> QubitMapSpec:
    """Map X -> X + L(X) with L the Pauli Lindblad generator for rates g1, g2, g3.

    Rates (1/4, 1/4, -1/4) reproduce the projection map exactly.
    """
    return QubitMapSpec("lindblad", gammas=(float(g1), float(g2), float(g3)))


def apply_qubit_map(spec: QubitMapSpec, x) -> np.ndarray:
    x = np.asarray(x, dtype=complex)
    if x.shape != (2, 2):
        raise ValueError(f"qubit map needs a 2x2 input, got {x.shape}")
    if spec.kind == "identity":
        out = x.copy()
    elif spec.kind == "projection":
        avg = (x[0, 0] + x[1, 1]) / 2
        out = np.array([[avg, x[0, 1]], [x[1, 0], avg]])
    else:
        out = x.copy()
        for g, s in zip(spec.gammas, (PAULI["X"], PAULI["Y"], PAULI["Z"])):
            # Pauli matrices are unitary and Hermitian, so s^dag s = I
            out = out + g * (s @ x @ s - x)
    u = spec.post_unitary
    if u is not None:
        out = u @ out @ u.conj().T
    return out


def transfer_tensor(spec: QubitMapSpec) -> np.ndarray:
    """T[k, l, i, j] = spec(|i><j|)[k, l]."""
    t = np.empty((2, 2, 2, 2), dtype=complex)
    for i in range(2):
        for j in range(2):
            unit = np.zeros((2, 2))
            unit[i, j] = 1.0
            t[:, :, i, j] = apply_qubit_map(spec, unit)
    return t


@dataclass(frozen=True)
class LiftedTerm:
    """Single-qubit maps on chosen qubits of an n-qubit register, identity elsewhere."""

    n_qubits: int
    assignment: dict[int, QubitMapSpec]

    def __post_init__(self):
        for q in self.assignment:
            if not 0 <= q < self.n_qubits:
                raise ValueError(f"qubit {q} out of range for {self.n_qubits} qubits")

    @property
    def qubits(self) -> tuple[int, ...]:
        return tuple(sorted(self.assignment))


def apply_on_qubit(spec: QubitMapSpec, rho: np.ndarray, qubit: int, n: int) -> np.ndarray:
    """Apply a single-qubit map to one slot of an n-qubit operator by linearity."""
    t = rho.reshape([2] * (2 * n))
    t = np.moveaxis(t, (qubit, n + qubit), (0, 1))
    t = np.tensordot(transfer_tensor(spec), t, axes=([2, 3], [0, 1]))
    t = np.moveaxis(t, (0, 1), (qubit, n + qubit))
    return t.reshape(rho.shape)


def lift_apply(term: LiftedTerm, rho) -> np.ndarray:
    m = rho.matrix if isinstance(rho, DensityState) else as_square(rho)
    n = term.n_qubits
    if m.shape[0] != 2**n:
        raise ValueError(f"operator dimension {m.shape[0]} does not match {n} qubits")
    out = m
    for q, spec in sorted(term.assignment.items()):
        out = apply_on_qubit(spec, out, q, n)
    return np.array(out)


def choi_matrix(spec: QubitMapSpec) -> np.ndarray:
    """(I (x) spec) applied to |phi+><phi+|, with |phi+> normalized."""
    return lift_apply(LiftedTerm(2, {1: spec}), bell_state())


def eta_min_analytic(nu1: float) -> float:
    """Smallest eigenvalue of (I (x) P) on sqrt(nu1)|00> + sqrt(1 - nu1)|11>."""
    if not 0 <= nu1 <= 1:
        raise ValueError(f"nu1 = {nu1} outside [0, 1]")
    nu2 = 1 - nu1
    return 0.25 * (1 - np.sqrt(1 + 12 * nu1 * nu2))


def schmidt_state(nu1: float) -> DensityState:
    if not 0 <= nu1 <= 1:
        raise ValueError(f"nu1 = {nu1} outside [0, 1]")
    v = np.zeros(4)
    v[0], v[3] = np.sqrt(nu1), np.sqrt(1 - nu1)
    return DensityState(2, np.outer(v, v))
