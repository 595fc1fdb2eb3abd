"""Randomized property suites run by ``pmap-gme selftest``."""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import maps
from .detector import DETECTION_TOL, apply_phi, apply_terms, phi_spec
from .linalg import PAULI, hermitian_eigenvalues
from .states import (
    DensityState,
    basis_state,
    bell_state,
    ghz,
    qubit_from_bloch,
    random_biseparable,
    state_to_json,
)
from .witness import build_witness, expectation

DEFAULT_SEED = 20240601
DEFAULT_COUNTS = {3: 1000, 4: 300, 5: 100}


def default_seed() -> int:
    return int(os.environ.get("PMAP_GME_SEED", DEFAULT_SEED))


@dataclass
class SuiteResult:
    name: str
    checked: int
    passed: bool
    worst: float
    counterexample: dict | None = field(default=None, repr=False)

    def to_dict(self) -> dict:
        d = {"suite": self.name, "checked": self.checked, "passed": self.passed, "worst": self.worst}
        if self.counterexample is not None:
            d["counterexample"] = self.counterexample
        return d


def extremal_biseparable(n: int) -> DensityState:
    """|phi+> on qubits 0, 1 and |0> elsewhere; saturates the kappa bound for n = 3."""
    rest = basis_state("0" * (n - 2)).matrix if n > 2 else np.eye(1)
    return DensityState(n, np.kron(bell_state().matrix, rest))


def biseparable_states(n: int, count: int, rng: np.random.Generator):
    yield extremal_biseparable(n)
    for _ in range(count - 1):
        yield random_biseparable(n, int(rng.integers(1, 4)), rng).realized


def suite_biseparable(n: int, count: int, rng: np.random.Generator, post_unitary=None,
                      kappa: float | None = None) -> SuiteResult:
    spec = phi_spec(n, post_unitary, kappa)
    worst, bad = np.inf, None
    k = 0
    for k, rho in enumerate(biseparable_states(n, count, rng), start=1):
        lam = float(hermitian_eigenvalues(apply_phi(spec, rho))[0])
        if lam < worst:
            worst = lam
        if lam < -DETECTION_TOL and bad is None:
            bad = {"min_eigenvalue": lam, "state": state_to_json(rho)}
    suffix = "" if post_unitary is None else "_sigma_x"
    return SuiteResult(f"biseparable_n{n}{suffix}", k, bad is None, worst, bad)


def suite_projection_positivity(count: int, rng: np.random.Generator) -> SuiteResult:
    worst, bad = np.inf, None
    for _ in range(count):
        v = rng.normal(size=3)
        v *= rng.uniform() ** (1 / 3) / np.linalg.norm(v)
        out = maps.apply_qubit_map(maps.PROJECTION, qubit_from_bloch(v).matrix)
        lam = float(hermitian_eigenvalues(out)[0])
        worst = min(worst, lam)
        if lam < -1e-12 and bad is None:
            bad = {"bloch": v.tolist(), "min_eigenvalue": lam}
    return SuiteResult("projection_positivity", count, bad is None, worst, bad)


def suite_choi_negativity() -> SuiteResult:
    lam = float(hermitian_eigenvalues(maps.choi_matrix(maps.PROJECTION))[0])
    ok = lam <= -0.25 + 1e-12
    return SuiteResult("choi_negativity", 1, ok, lam, None if ok else {"min_eigenvalue": lam})


def suite_lindblad_equivalence(count: int, rng: np.random.Generator) -> SuiteResult:
    spec = maps.lindblad_projection(0.25, 0.25, -0.25)
    worst, bad = 0.0, None
    for _ in range(count):
        x = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        err = float(np.max(np.abs(
            maps.apply_qubit_map(spec, x) - maps.apply_qubit_map(maps.PROJECTION, x)
        )))
        worst = max(worst, err)
        if err > 1e-12 and bad is None:
            bad = {"input": [[[z.real, z.imag] for z in row] for row in x], "error": err}
    return SuiteResult("lindblad_equivalence", count, bad is None, worst, bad)


def suite_schmidt_minimum(points: int = 101) -> SuiteResult:
    term = maps.LiftedTerm(2, {1: maps.PROJECTION})
    worst, bad = 0.0, None
    best_nu, best_val = None, np.inf
    for nu in np.linspace(0, 1, points):
        numeric = float(hermitian_eigenvalues(maps.lift_apply(term, maps.schmidt_state(nu)))[0])
        err = abs(numeric - maps.eta_min_analytic(nu))
        worst = max(worst, err)
        if numeric < best_val:
            best_nu, best_val = float(nu), numeric
        if err > 1e-9 and bad is None:
            bad = {"nu1": float(nu), "numeric": numeric, "analytic": maps.eta_min_analytic(nu)}
    if bad is None and (abs(best_val + 0.25) > 1e-9 or abs(best_nu - 0.5) > 1e-12):
        bad = {"argmin_nu1": best_nu, "min": best_val}
    return SuiteResult("schmidt_minimum_grid", points, bad is None, worst, bad)


def _random_mixed(n: int, rng: np.random.Generator) -> np.ndarray:
    g = rng.normal(size=(2**n, 2**n)) + 1j * rng.normal(size=(2**n, 2**n))
    m = g @ g.conj().T
    return m / np.trace(m).real


def suite_witness_adjointness(count: int, rng: np.random.Generator) -> SuiteResult:
    spec = phi_spec(3)
    w = build_witness(3).matrix
    g = ghz(3).matrix
    worst, bad = 0.0, None
    for _ in range(count):
        rho = _random_mixed(3, rng)
        lhs = np.trace(w @ rho)
        rhs = np.trace(apply_phi(spec, rho) @ g)
        err = float(abs(lhs - rhs))
        worst = max(worst, err)
        if err > 1e-12 and bad is None:
            bad = {"error": err, "state": state_to_json(DensityState(3, rho))}
    return SuiteResult("witness_adjointness", count, bad is None, worst, bad)


def suite_witness_biseparable(count: int, rng: np.random.Generator) -> SuiteResult:
    w = build_witness(3)
    worst, bad = np.inf, None
    for _ in range(count):
        rho = random_biseparable(3, int(rng.integers(1, 4)), rng).realized
        val = expectation(w, rho)
        worst = min(worst, val)
        if val < -DETECTION_TOL and bad is None:
            bad = {"expectation": val, "state": state_to_json(rho)}
    return SuiteResult("witness_biseparable", count, bad is None, worst, bad)


def suite_kappa_optimality() -> SuiteResult:
    """Terms-only output on |phi+>|0> bottoms out at exactly -1/2."""
    lam = float(hermitian_eigenvalues(apply_terms(phi_spec(3), extremal_biseparable(3)))[0])
    ok = abs(lam + 0.5) <= 1e-12
    return SuiteResult("kappa3_optimality", 1, ok, lam, None if ok else {"min_eigenvalue": lam})


def run_all(seed: int | None = None, samples: int | None = None,
            kappa3: float | None = None) -> list[SuiteResult]:
    """Run every suite. ``samples`` replaces all random sample counts when given."""
    if seed is None:
        seed = default_seed()
    rng = np.random.default_rng(seed)
    counts = {n: samples or c for n, c in DEFAULT_COUNTS.items()}
    sx = PAULI["X"]
    jobs: list[Callable[[], SuiteResult]] = [
        lambda: suite_biseparable(3, counts[3], rng, kappa=kappa3),
        lambda: suite_biseparable(3, counts[3], rng, post_unitary=sx, kappa=kappa3),
        lambda: suite_biseparable(4, counts[4], rng),
        lambda: suite_biseparable(5, counts[5], rng),
        lambda: suite_projection_positivity(samples or 1000, rng),
        suite_choi_negativity,
        lambda: suite_lindblad_equivalence(samples or 100, rng),
        suite_schmidt_minimum,
        lambda: suite_witness_adjointness(samples or 100, rng),
        lambda: suite_witness_biseparable(samples or 1000, rng),
        suite_kappa_optimality,
    ]
    return [job() for job in jobs]

