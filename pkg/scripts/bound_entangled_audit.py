"""Audit the three-qubit bound entangled family on a (p1, p2) grid.

For every valid point this reports the detector minimum, the error of the
reference closed forms and of the GHZ-basis forms against direct
diagonalization, and the smallest eigenvalue over the three single-qubit
partial transposes.
"""
import argparse
from dataclasses import dataclass

import numpy as np

from pmap_gme.detector import (
    apply_phi,
    bound_entangled_eigs_analytic,
    bound_entangled_eigs_ghz_basis,
    in_reference_region,
    phi_spec,
)
from pmap_gme.linalg import partial_transpose
from pmap_gme.states import bound_entangled


@dataclass
class AuditConfig:
    points: int = 21
    verbose: bool = False


def audit(cfg: AuditConfig) -> dict:
    spec = phi_spec(3)
    grid = np.linspace(0, 1, cfg.points)
    stats = {"valid": 0, "ppt": 0, "detected": 0, "detected_and_ppt": 0,
             "max_reference_error": 0.0, "max_ghz_basis_error": 0.0,
             "region_disagreements": {1: 0, 4: 0, 5: 0}}
    for p1 in grid:
        for p2 in grid:
            try:
                rho = bound_entangled(p1, p2)
            except ValueError:
                continue
            stats["valid"] += 1
            numeric = np.linalg.eigvalsh(apply_phi(spec, rho))
            ref = bound_entangled_eigs_analytic(p1, p2)
            stats["max_reference_error"] = max(stats["max_reference_error"],
                                               float(np.max(np.abs(np.sort(ref) - numeric))))
            ghz_err = np.max(np.abs(np.sort(bound_entangled_eigs_ghz_basis(p1, p2)) - numeric))
            stats["max_ghz_basis_error"] = max(stats["max_ghz_basis_error"], float(ghz_err))
            for which, value in ((1, ref[0]), (4, ref[3]), (5, ref[4])):
                if (value < 0) != in_reference_region(which, p1, p2):
                    stats["region_disagreements"][which] += 1
            pt_min = min(np.linalg.eigvalsh(partial_transpose(rho.matrix, q, 3))[0] for q in range(3))
            ppt = pt_min >= -1e-10
            detected = numeric[0] < -1e-9
            stats["ppt"] += ppt
            stats["detected"] += detected
            stats["detected_and_ppt"] += ppt and detected
            if cfg.verbose:
                print(f"{p1:.3f} {p2:.3f} phi_min={numeric[0]:+.6f} pt_min={pt_min:+.6f}")
    return stats


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--points", type=int, default=AuditConfig.points)
    ap.add_argument("-v", "--verbose", action="store_true")
    args = ap.parse_args()
    for k, v in audit(AuditConfig(args.points, args.verbose)).items():
        print(f"{k:24s} {v}")


if __name__ == "__main__":
    main()
