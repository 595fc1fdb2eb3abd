"""The Phi_N detector: lifted projection maps over bipartitions plus a kappa * I * Tr term.

Also holds noise-threshold search and the parameter sweeps behind the figures.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np
from scipy.optimize import bisect

from .linalg import HERMITIAN_TOL, as_square, hermitian_eigenvalues
from .maps import LiftedTerm, lift_apply, projection
from .states import (
    DensityState,
    bipartitions,
    bound_entangled,
    g_abcd,
    gen_ghz,
    white_noise_mix,
)

DETECTION_TOL = 1e-9


def kappa_for(n_qubits: int) -> float:
    return (2 ** (n_qubits - 1) - 2) / 4


@dataclass(frozen=True)
class PhiSpec:
    n_qubits: int
    terms: tuple[LiftedTerm, ...]
    kappa: float


def phi_spec(n_qubits: int, post_unitary=None, kappa: float | None = None) -> PhiSpec:
    """Canonical detector: projection on every qubit of each bipartition representative.

    ``kappa`` overrides the default ``(2**(n-1) - 2) / 4``; only useful for probing
    optimality.
    """
    if n_qubits < 2:
        raise ValueError("detector needs at least 2 qubits")
    spec = projection(post_unitary)
    terms = tuple(
        LiftedTerm(n_qubits, {q: spec for q in subset}) for subset in bipartitions(n_qubits)
    )
    return PhiSpec(n_qubits, terms, kappa_for(n_qubits) if kappa is None else kappa)


def werner_spec(post_unitary=None) -> PhiSpec:
    """The bipartite test map I (x) P (projection on the second qubit)."""
    return PhiSpec(2, (LiftedTerm(2, {1: projection(post_unitary)}),), 0.0)


def _matrix(rho) -> np.ndarray:
    return rho.matrix if isinstance(rho, DensityState) else as_square(rho)


def apply_terms(spec: PhiSpec, rho) -> np.ndarray:
    """Sum of the lifted terms, without the kappa contribution."""
    m = _matrix(rho)
    if m.shape[0] != 2**spec.n_qubits:
        raise ValueError(f"state dimension {m.shape[0]} does not match {spec.n_qubits} qubits")
    return sum(lift_apply(t, m) for t in spec.terms)


def apply_phi(spec: PhiSpec, rho) -> np.ndarray:
    m = _matrix(rho)
    out = apply_terms(spec, m)
    return out + spec.kappa * np.trace(m) * np.eye(m.shape[0])


@dataclass(frozen=True, eq=False)
class DetectionReport:
    min_eigenvalue: float
    spectrum: np.ndarray
    detected: bool
    tolerance: float

    def to_dict(self) -> dict:
        return {
            "min_eigenvalue": self.min_eigenvalue,
            "spectrum": [float(x) for x in self.spectrum],
            "detected": self.detected,
            "tolerance": self.tolerance,
        }


def report(output: np.ndarray, tol: float = DETECTION_TOL) -> DetectionReport:
    spec = hermitian_eigenvalues(output, HERMITIAN_TOL)
    lam = float(spec[0])
    return DetectionReport(lam, spec, lam < -tol, tol)


def detect(rho: DensityState, post_unitary=None, tol: float = DETECTION_TOL,
           spec: PhiSpec | None = None) -> DetectionReport:
    """Apply Phi_N (or ``spec``) to ``rho``; a negative eigenvalue certifies GME."""
    if spec is None:
        spec = phi_spec(rho.n_qubits, post_unitary)
    return report(apply_phi(spec, rho), tol)


def phi_min_eigenvalue(spec: PhiSpec, rho) -> float:
    return float(hermitian_eigenvalues(apply_phi(spec, rho))[0])


class ThresholdError(ValueError):
    pass


def noise_threshold(pure: DensityState, post_unitary=None, tol: float = 1e-6,
                    spec: PhiSpec | None = None, grid_points: int = 101) -> float:
    """Smallest white-noise visibility x above which ``x pure + (1-x) I/d`` is detected.

    A grid scan first confirms the minimum eigenvalue changes sign exactly once
    on [0, 1]; the crossing is then located by bisection to ``tol``.
    """
    if spec is None:
        spec = phi_spec(pure.n_qubits, post_unitary)

    def f(x: float) -> float:
        return phi_min_eigenvalue(spec, white_noise_mix(pure, float(np.clip(x, 0, 1))))

    if f(1.0) >= -DETECTION_TOL:
        raise ThresholdError("state is not detected even without noise; no threshold in [0, 1]")
    xs = np.linspace(0, 1, grid_points)
    vals = np.array([f(x) for x in xs])
    negative = vals < 0
    flips = np.nonzero(negative[1:] != negative[:-1])[0]
    if len(flips) != 1 or negative[0]:
        raise ThresholdError(
            f"min eigenvalue vs x is not a single crossing ({len(flips)} sign changes on "
            f"a {grid_points}-point grid)"
        )
    k = int(flips[0])
    if vals[k] == 0:
        return float(xs[k])
    return float(bisect(f, xs[k], xs[k + 1], xtol=tol / 4))


@dataclass
class SweepRow:
    parameters: dict[str, float]
    min_eigenvalue: float
    extras: dict[str, object] = field(default_factory=dict)


def find_crossings(xs: Sequence[float], ys: Sequence[float],
                   f: Callable[[float], float] | None = None, xtol: float = 1e-10) -> list[float]:
    """Locate sign changes of ``ys``; refine by bisection on ``f`` when given."""
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    out = []
    for k in range(len(xs) - 1):
        a, b = ys[k], ys[k + 1]
        if a == 0:
            out.append(float(xs[k]))
        elif a * b < 0:
            if f is None:
                out.append(float(xs[k] - a * (xs[k + 1] - xs[k]) / (b - a)))
            else:
                out.append(float(bisect(f, xs[k], xs[k + 1], xtol=xtol)))
    return out


def sweep_gen_ghz(thetas: Iterable[float]) -> list[SweepRow]:
    spec = phi_spec(3)
    return [
        SweepRow({"theta": float(t)}, phi_min_eigenvalue(spec, gen_ghz(t)))
        for t in thetas
    ]


def gen_ghz_crossings(rows: list[SweepRow]) -> list[float]:
    spec = phi_spec(3)
    xs = [r.parameters["theta"] for r in rows]
    ys = [r.min_eigenvalue for r in rows]
    return find_crossings(xs, ys, lambda t: phi_min_eigenvalue(spec, gen_ghz(t)))


# -- bound entangled family ---------------------------------------------------


def _check_p(p1: float, p2: float) -> float:
    p3 = (1 - p1 - p2) / 3
    for name, v in (("p1", p1), ("p2", p2), ("p3", p3)):
        if not -1e-12 <= v <= 1 + 1e-12:
            raise ValueError(f"{name} = {v} outside [0, 1]")
    return p3


def bound_entangled_eigs_analytic(p1: float, p2: float) -> np.ndarray:
    """Reference closed forms for the spectrum of Phi_3 on the bound entangled family.

    Reduced expressions with p3 eliminated via p1 + p2 + 3 p3 = 1. They do not
    agree with the direct computation; see
    :func:`bound_entangled_eigs_ghz_basis` for the forms that do.
    """
    _check_p(p1, p2)
    l1 = 0.75 * (-1 + 2 * p1 + 2 * p2)
    l4 = 0.25 * (3 + 22 * p1 - 18 * p2)
    l5 = 0.25 * (3 - 18 * p1 + 22 * p2)
    l6 = (31 - 22 * p1 - 22 * p2) / 12
    return np.array([l1, l1, l1, l4, l5, l6, l6, l6])


def bound_entangled_eigs_ghz_basis(p1: float, p2: float) -> np.ndarray:
    """Spectrum of Phi_3 on the family, from its diagonal form in the GHZ basis.

    Every Pauli string in the output commutes with the GHZ stabilizers, so the
    eight GHZ-basis states are eigenvectors. Unreduced values:
    (7 + 15p1 - 9p2 - 3p3)/8, (7 - 9p1 + 15p2 - 3p3)/8, (7 - p1 - p2 + 13p3)/8 (x3),
    (7 - p1 - p2 - 11p3)/8 (x3).
    """
    p3 = _check_p(p1, p2)
    a = (7 + 15 * p1 - 9 * p2 - 3 * p3) / 8
    b = (7 - 9 * p1 + 15 * p2 - 3 * p3) / 8
    c = (7 - p1 - p2 + 13 * p3) / 8
    d = (7 - p1 - p2 - 11 * p3) / 8
    return np.array([a, b, c, c, c, d, d, d])


def in_reference_region(which: int, p1: float, p2: float) -> bool:
    """Membership in the reference negativity regions for lambda_1, lambda_4, lambda_5."""
    if which == 1:
        return 0 <= p1 < 0.5 and 0 <= p2 < 0.5 * (1 - 2 * p1)
    if which == 4:
        return 0 <= p1 < 3 / 8 and (3 + 22 * p1) / 18 <= p2 < 1 - p1
    if which == 5:
        return 1 / 6 < p1 <= 5 / 8 and 0 <= p2 < (-3 + 18 * p1) / 22
    raise ValueError(f"no reference region for lambda_{which}")


def sweep_bound_entangled(p1_grid: Iterable[float], p2_grid: Iterable[float]) -> list[SweepRow]:
    """Numeric and analytic spectra of Phi_3 on the family over a (p1, p2) grid.

    Points with p3 < 0 or a non-positive state are kept as rows marked invalid.
    """
    spec = phi_spec(3)
    p2_grid = list(p2_grid)
    rows = []
    for p1 in p1_grid:
        for p2 in p2_grid:
            params = {"p1": float(p1), "p2": float(p2)}
            try:
                rho = bound_entangled(p1, p2)
            except ValueError as exc:
                rows.append(SweepRow(params, float("nan"), {"valid": False, "reason": str(exc)}))
                continue
            numeric = hermitian_eigenvalues(apply_phi(spec, rho))
            lam = bound_entangled_eigs_analytic(p1, p2)
            analytic = np.sort(lam)
            ghz_basis = np.sort(bound_entangled_eigs_ghz_basis(p1, p2))
            rows.append(SweepRow(params, float(numeric[0]), {
                "valid": True,
                "analytic_min": float(analytic[0]),
                "analytic_mismatch": float(np.max(np.abs(analytic - numeric))),
                "ghz_basis_mismatch": float(np.max(np.abs(ghz_basis - numeric))),
                "lambda1": float(lam[0]),
                "lambda4": float(lam[3]),
                "lambda5": float(lam[4]),
                "in_region1": in_reference_region(1, p1, p2),
                "in_region4": in_reference_region(4, p1, p2),
                "in_region5": in_reference_region(5, p1, p2),
            }))
    return rows


# -- G_abcd -----------------------------------------------------------------


def sweep_g_abcd(a_grid: Iterable[float], c_grid: Iterable[float], b: float = 0.6) -> list[SweepRow]:
    """Minimum eigenvalue of Phi_4 on |G_abcd> with d = a, over (a, c)."""
    spec = phi_spec(4)
    c_grid = list(c_grid)
    rows = []
    for a in a_grid:
        for c in c_grid:
            params = {"a": float(a), "c": float(c)}
            if a == 0 and b == 0 and c == 0:
                rows.append(SweepRow(params, float("nan"), {"valid": False}))
                continue
            lam = phi_min_eigenvalue(spec, g_abcd(a, b, c, a))
            rows.append(SweepRow(params, lam, {"valid": True}))
    return rows


# -- CSV --------------------------------------------------------------------


def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".15g")
    return str(v)


def write_sweep_csv(rows: list[SweepRow], fh, extra_columns: Sequence[str] = ()) -> None:
    """Parameters, then ``min_eigenvalue``, then any requested extras; grid order kept."""
    if not rows:
        raise ValueError("nothing to write")
    params = list(rows[0].parameters)
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(params + ["min_eigenvalue"] + list(extra_columns))
    for r in rows:
        writer.writerow(
            [_fmt(r.parameters[p]) for p in params]
            + [_fmt(r.min_eigenvalue)]
            + [_fmt(r.extras.get(c, "")) for c in extra_columns]
        )
