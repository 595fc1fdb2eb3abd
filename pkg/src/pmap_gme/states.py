"""State constructors, biseparable sampling, and the JSON state file format."""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from .linalg import PAULI, HERMITIAN_TOL, as_square, n_qubits_of, pauli_operator

PSD_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class DensityState:
    n_qubits: int
    matrix: np.ndarray

    def __post_init__(self):
        m = as_square(self.matrix)
        if m.shape[0] != 2**self.n_qubits:
            raise ValueError(
                f"matrix dimension {m.shape[0]} does not match {self.n_qubits} qubits"
            )
        m = m.copy()
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @classmethod
    def from_matrix(cls, m, tol: float = PSD_TOL) -> "DensityState":
        """Wrap a matrix after validating it with :func:`is_density`."""
        m = as_square(m)
        ok, why = is_density(m, tol)
        if not ok:
            raise ValueError(f"not a density matrix: {why}")
        return cls(n_qubits_of(m), m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def purity(self) -> float:
        return float(np.trace(self.matrix @ self.matrix).real)


def _pure(vec) -> DensityState:
    v = np.asarray(vec, dtype=complex)
    v = v / np.linalg.norm(v)
    return DensityState(v.size.bit_length() - 1, np.outer(v, v.conj()))


def is_density(m, tol: float = PSD_TOL) -> tuple[bool, str]:
    """Check Hermiticity, unit trace and positivity; the message names the first failure."""
    try:
        m = as_square(m)
    except ValueError as exc:
        return False, str(exc)
    herm = float(np.max(np.abs(m - m.conj().T)))
    if herm > HERMITIAN_TOL:
        return False, f"not Hermitian (max deviation {herm:.3e})"
    tr = np.trace(m)
    if abs(tr - 1) > tol:
        return False, f"trace {tr.real:.12g} != 1"
    lam = float(np.linalg.eigvalsh(m)[0])
    if lam < -tol:
        return False, f"negative eigenvalue {lam:.6g}"
    return True, "ok"


def qubit_from_bloch(v: Sequence[float]) -> DensityState:
    p = np.asarray(v, dtype=float)
    if p.shape != (3,):
        raise ValueError("Bloch vector needs three components")
    if p @ p > 1 + 1e-12:
        raise ValueError(f"Bloch vector length {np.sqrt(p @ p):.6g} exceeds 1")
    m = 0.5 * (PAULI["I"] + p[0] * PAULI["X"] + p[1] * PAULI["Y"] + p[2] * PAULI["Z"])
    return DensityState(1, m)


def basis_state(bits: str) -> DensityState:
    """Computational basis projector, e.g. ``basis_state("000")``."""
    v = np.zeros(2 ** len(bits))
    v[int(bits, 2)] = 1.0
    return _pure(v)


def ghz(n: int, phase: int = 1) -> DensityState:
    """Projector onto (|0...0> + phase |1...1>)/sqrt(2), phase = +1 or -1."""
    if n < 2:
        raise ValueError("GHZ state needs at least 2 qubits")
    if phase not in (1, -1):
        raise ValueError("phase must be +1 or -1")
    v = np.zeros(2**n)
    v[0], v[-1] = 1.0, phase
    return _pure(v)


def gen_ghz(theta: float) -> DensityState:
    v = np.zeros(8)
    v[0], v[7] = np.cos(theta), np.sin(theta)
    return _pure(v)


def w_state() -> DensityState:
    v = np.zeros(8)
    v[[1, 2, 4]] = 1.0
    return _pure(v)


def bell_state() -> DensityState:
    """|phi+> = (|00> + |11>)/sqrt(2)."""
    return ghz(2)


def maximally_mixed(n: int) -> DensityState:
    return DensityState(n, np.eye(2**n) / 2**n)


def werner(p: float) -> DensityState:
    if not 0 <= p <= 1:
        raise ValueError(f"Werner parameter {p} outside [0, 1]")
    return DensityState(2, p * bell_state().matrix + (1 - p) / 4 * np.eye(4))


def white_noise_mix(pure: DensityState, x: float) -> DensityState:
    """x * pure + (1 - x) * I / 2**n."""
    if not 0 <= x <= 1:
        raise ValueError(f"mixing weight {x} outside [0, 1]")
    dim = pure.dim
    return DensityState(pure.n_qubits, x * pure.matrix + (1 - x) / dim * np.eye(dim))


def bound_entangled_coefficients(p1: float, p2: float, p3: float) -> tuple[float, float, float]:
    return p1 + p2 - p3, p1 - p2 + 3 * p3, -p1 + p2 + p3


def bound_entangled(p1: float, p2: float, p3: float | None = None) -> DensityState:
    """Three-qubit family (1/8)(III + r1 ZZ-terms + r2 XXX + r3 XYY-terms).

    ``p3`` defaults to ``(1 - p1 - p2) / 3`` so that ``p1 + p2 + 3 p3 = 1``.
    """
    if p3 is None:
        p3 = (1 - p1 - p2) / 3
    for name, val in (("p1", p1), ("p2", p2), ("p3", p3)):
        if not -1e-12 <= val <= 1 + 1e-12:
            raise ValueError(f"{name} = {val} outside [0, 1]")
    if abs(p1 + p2 + 3 * p3 - 1) > 1e-12:
        raise ValueError(f"p1 + p2 + 3 p3 = {p1 + p2 + 3 * p3} != 1")
    r1, r2, r3 = bound_entangled_coefficients(p1, p2, p3)
    m = (
        pauli_operator("III")
        + r1 * (pauli_operator("ZZI") + pauli_operator("ZIZ") + pauli_operator("IZZ"))
        + r2 * pauli_operator("XXX")
        + r3 * (pauli_operator("XYY") + pauli_operator("YXY") + pauli_operator("YYX"))
    ) / 8
    lam = float(np.linalg.eigvalsh(m)[0])
    if lam < -PSD_TOL:
        raise ValueError(f"parameters give a non-positive matrix (eigenvalue {lam:.6g})")
    return DensityState(3, m)


def g_abcd(a: complex, b: complex, c: complex, d: complex) -> DensityState:
    """Normalized projector onto the four-qubit |G_abcd> state."""
    if all(abs(z) == 0 for z in (a, b, c, d)):
        raise ValueError("G_abcd needs at least one nonzero parameter")
    v = np.zeros(16, dtype=complex)
    amp = {
        "0000": (a + d) / 2, "1111": (a + d) / 2,
        "0011": (a - d) / 2, "1100": -(a - d) / 2,
        "0101": (b + c) / 2, "1010": (b + c) / 2,
        "0110": (b - c) / 2, "1001": (b - c) / 2,
    }
    for bits, z in amp.items():
        v[int(bits, 2)] = z
    if np.linalg.norm(v) == 0:
        raise ValueError("G_abcd amplitudes vanish for these parameters")
    return _pure(v)


# -- biseparable sampling ---------------------------------------------------


def bipartitions(n: int) -> list[tuple[int, ...]]:
    """One side of every unordered bipartition A|A-bar of ``range(n)``.

    The listed side is the smaller one; for equal halves it is the side
    holding qubit 0.
    """
    out = []
    for k in range(1, n // 2 + 1):
        for subset in itertools.combinations(range(n), k):
            if 2 * k == n and 0 not in subset:
                continue
            out.append(subset)
    return out


def embed_product(left: np.ndarray, right: np.ndarray, subset: Sequence[int], n: int) -> np.ndarray:
    """Place ``left`` on the qubits in ``subset`` and ``right`` on the rest.

    Both factors are given in ascending qubit order of their own subsystem.
    """
    subset = tuple(sorted(subset))
    rest = tuple(q for q in range(n) if q not in subset)
    order = subset + rest
    t = np.kron(left, right).reshape([2] * (2 * n))
    # axis k of t belongs to qubit order[k]; put it back in global position
    inv = np.argsort(order)
    t = t.transpose(list(inv) + [n + i for i in inv])
    return t.reshape(2**n, 2**n)


@dataclass(frozen=True, eq=False)
class BiseparableTerm:
    weight: float
    subset: tuple[int, ...]
    left: DensityState
    right: DensityState


@dataclass(frozen=True, eq=False)
class BiseparableSample:
    n_qubits: int
    terms: tuple[BiseparableTerm, ...]
    realized: DensityState = field(repr=False)


def assemble_biseparable(n: int, terms: Sequence[BiseparableTerm]) -> BiseparableSample:
    weights = np.array([t.weight for t in terms])
    if np.any(weights < 0) or abs(weights.sum() - 1) > 1e-12:
        raise ValueError("term weights must be non-negative and sum to 1")
    m = sum(t.weight * embed_product(t.left.matrix, t.right.matrix, t.subset, n) for t in terms)
    return BiseparableSample(n, tuple(terms), DensityState(n, m))


def random_pure(n: int, rng: np.random.Generator) -> DensityState:
    v = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
    return _pure(v)


def random_biseparable(n_qubits: int, n_terms: int, seed: int | np.random.Generator) -> BiseparableSample:
    """Random mixture of pure products across uniformly drawn bipartitions."""
    if n_qubits < 2 or n_terms < 1:
        raise ValueError("need n_qubits >= 2 and n_terms >= 1")
    rng = np.random.default_rng(seed)
    cuts = bipartitions(n_qubits)
    weights = rng.dirichlet(np.ones(n_terms))
    terms = []
    for w in weights:
        subset = cuts[rng.integers(len(cuts))]
        k = len(subset)
        terms.append(
            BiseparableTerm(float(w), subset, random_pure(k, rng), random_pure(n_qubits - k, rng))
        )
    # dirichlet weights sum to 1 only up to rounding
    total = sum(t.weight for t in terms)
    terms = [BiseparableTerm(t.weight / total, t.subset, t.left, t.right) for t in terms]
    return assemble_biseparable(n_qubits, terms)


# -- state files ------------------------------------------------------------


def state_to_json(state: DensityState) -> dict:
    return {
        "n_qubits": state.n_qubits,
        "matrix": [[[float(z.real), float(z.imag)] for z in row] for row in state.matrix],
    }


def state_from_json(doc: dict, tol: float = PSD_TOL) -> DensityState:
    try:
        n = int(doc["n_qubits"])
        m = np.array([[complex(re, im) for re, im in row] for row in doc["matrix"]])
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed state document: {exc}") from exc
    if m.shape != (2**n, 2**n):
        raise ValueError(f"matrix shape {m.shape} does not match n_qubits={n}")
    ok, why = is_density(m, tol)
    if not ok:
        raise ValueError(f"not a density matrix: {why}")
    return DensityState(n, m)


def save_state(path, state: DensityState) -> None:
    # json writes floats with repr, i.e. 17 significant digits
    Path(path).write_text(json.dumps(state_to_json(state)) + "\n", encoding="utf-8")


def load_state(path, tol: float = PSD_TOL) -> DensityState:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}: invalid JSON ({exc})") from exc
    return state_from_json(doc, tol)
