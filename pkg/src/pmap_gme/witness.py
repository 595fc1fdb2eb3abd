"""GME witness W = Phi_N(|GHZ><GHZ|) and its local Pauli decomposition."""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .detector import apply_phi, phi_spec
from .linalg import check_hermitian, pauli_expand, pauli_sum
from .states import DensityState, ghz


@dataclass(frozen=True, eq=False)
class WitnessOperator:
    matrix: np.ndarray
    pauli_terms: dict[str, float]

    @property
    def n_qubits(self) -> int:
        return self.matrix.shape[0].bit_length() - 1


def build_witness(n_qubits: int = 3) -> WitnessOperator:
    m = apply_phi(phi_spec(n_qubits), ghz(n_qubits))
    return WitnessOperator(m, pauli_expand(m, n_qubits))


def expectation(w: WitnessOperator, rho: DensityState) -> float:
    if rho.matrix.shape != w.matrix.shape:
        raise ValueError(
            f"state dimension {rho.dim} does not match witness dimension {w.matrix.shape[0]}"
        )
    val = np.trace(w.matrix @ rho.matrix)
    if abs(val.imag) > 1e-12:
        raise ValueError(f"expectation has imaginary part {val.imag:.3e}")
    return float(val.real)


def _compatible(a: str, b: str) -> bool:
    return all(x == y or "I" in (x, y) for x, y in zip(a, b))


def _merge(a: str, b: str) -> str:
    return "".join(y if x == "I" else x for x, y in zip(a, b))


@dataclass(frozen=True)
class MeasurementPlan:
    correlations: tuple[str, ...]
    settings: tuple[str, ...]

    @property
    def n_settings(self) -> int:
        return len(self.settings)


def measurement_settings(w: WitnessOperator) -> MeasurementPlan:
    """Group the non-identity Pauli terms into local measurement settings.

    Two strings share a setting when they agree on every qubit where neither is
    the identity; the setting label is their merged string. Higher-weight
    strings are placed first.
    """
    labels = [s for s in w.pauli_terms if set(s) != {"I"}]
    labels.sort(key=lambda s: (-sum(ch != "I" for ch in s), s))
    settings: list[str] = []
    for s in labels:
        for k, setting in enumerate(settings):
            if _compatible(s, setting):
                settings[k] = _merge(setting, s)
                break
        else:
            settings.append(s)
    return MeasurementPlan(tuple(labels), tuple(settings))


def tomography_settings(n_qubits: int) -> int:
    return 3**n_qubits


def witness_to_json(w: WitnessOperator) -> str:
    # repr-based float output keeps 17 significant digits
    return json.dumps({"pauli_terms": dict(w.pauli_terms)}, indent=2)


def witness_from_json(text: str) -> WitnessOperator:
    terms = {k: float(v) for k, v in json.loads(text)["pauli_terms"].items()}
    return WitnessOperator(check_hermitian(pauli_sum(terms)), terms)
