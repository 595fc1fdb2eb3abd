"""Write the sweep CSVs behind the figures.

The G_abcd surface doubles as the frozen regression file used by the test
suite (tests/data/gabcd_sweep.csv). Regenerate it only after checking the
GHZ reduction point by hand.
"""
import argparse
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from pmap_gme.detector import (
    phi_min_eigenvalue,
    phi_spec,
    sweep_bound_entangled,
    sweep_g_abcd,
    sweep_gen_ghz,
    write_sweep_csv,
)
from pmap_gme.states import g_abcd

ROOT = Path(__file__).resolve().parent.parent


@dataclass
class FigureConfig:
    out_dir: Path = ROOT / "figure_data"
    gabcd_points: int = 41
    gabcd_b: float = 0.6
    gen_ghz_points: int = 158
    bound_points: int = 21
    regression_csv: Path = ROOT / "tests" / "data" / "gabcd_sweep.csv"


def gabcd_grid(cfg: FigureConfig) -> np.ndarray:
    return np.linspace(0, 1, cfg.gabcd_points)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out-dir", type=Path, default=FigureConfig.out_dir)
    ap.add_argument("--freeze", action="store_true",
                    help="also overwrite the regression CSV under tests/data")
    args = ap.parse_args()
    cfg = FigureConfig(out_dir=args.out_dir)
    cfg.out_dir.mkdir(parents=True, exist_ok=True)

    s = 1 / np.sqrt(2)
    ghz_point = phi_min_eigenvalue(phi_spec(4), g_abcd(s, 0, 0, s))
    assert abs(ghz_point + 0.625) <= 1e-9, ghz_point

    grid = gabcd_grid(cfg)
    rows = sweep_g_abcd(grid, grid, b=cfg.gabcd_b)
    targets = [cfg.out_dir / "gabcd_sweep.csv"]
    if args.freeze:
        cfg.regression_csv.parent.mkdir(parents=True, exist_ok=True)
        targets.append(cfg.regression_csv)
    for path in targets:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            write_sweep_csv(rows, fh, ("valid",))

    with open(cfg.out_dir / "gen_ghz_sweep.csv", "w", encoding="utf-8", newline="") as fh:
        write_sweep_csv(sweep_gen_ghz(np.linspace(0, np.pi / 2, cfg.gen_ghz_points)), fh)

    p = np.linspace(0, 1, cfg.bound_points)
    with open(cfg.out_dir / "bound_entangled_sweep.csv", "w", encoding="utf-8", newline="") as fh:
        write_sweep_csv(sweep_bound_entangled(p, p), fh,
                        ("valid", "analytic_min", "ghz_basis_mismatch", "analytic_mismatch"))
    for path in targets:
        print(f"wrote {path}")
    print(f"wrote gen-ghz and bound sweeps to {cfg.out_dir}")


if __name__ == "__main__":
    main()
