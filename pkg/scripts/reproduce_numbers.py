"""Print the headline numbers: Choi spectrum, detector minima, thresholds, crossings, witness."""
from dataclasses import dataclass

import numpy as np

from pmap_gme.detector import (
    detect,
    gen_ghz_crossings,
    noise_threshold,
    sweep_gen_ghz,
    werner_spec,
)
from pmap_gme.linalg import PAULI, hermitian_eigenvalues
from pmap_gme.maps import PROJECTION, choi_matrix
from pmap_gme.states import ghz, w_state, werner
from pmap_gme.witness import build_witness, expectation, measurement_settings


@dataclass
class RunConfig:
    threshold_tol: float = 1e-8
    gen_ghz_points: int = 158


def main(cfg: RunConfig = RunConfig()) -> None:
    sx = PAULI["X"]
    rows = [
        ("Choi spectrum of P", hermitian_eigenvalues(choi_matrix(PROJECTION)).round(12).tolist()),
        ("Werner threshold (I x P)",
         noise_threshold(werner(1), spec=werner_spec(), tol=cfg.threshold_tol)),
        ("Phi_3 on GHZ, min eigenvalue", detect(ghz(3)).min_eigenvalue),
        ("Phi_4 on GHZ_4, min eigenvalue", detect(ghz(4)).min_eigenvalue),
        ("Phi_3 (sigma_x) on W, min eigenvalue", detect(w_state(), sx).min_eigenvalue),
        ("noisy GHZ threshold", noise_threshold(ghz(3), tol=cfg.threshold_tol)),
        ("noisy GHZ_4 threshold", noise_threshold(ghz(4), tol=cfg.threshold_tol)),
        ("noisy W threshold (sigma_x)", noise_threshold(w_state(), sx, tol=cfg.threshold_tol)),
        ("gen-GHZ crossings",
         gen_ghz_crossings(sweep_gen_ghz(np.linspace(0, np.pi / 2, cfg.gen_ghz_points)))),
    ]
    w = build_witness(3)
    rows += [
        ("witness Pauli terms", {k: round(v, 12) for k, v in w.pauli_terms.items()}),
        ("Tr(W GHZ-)", expectation(w, ghz(3, -1))),
        ("local settings", measurement_settings(w).settings),
    ]
    for name, value in rows:
        print(f"{name:40s} {value}")


if __name__ == "__main__":
    main()
