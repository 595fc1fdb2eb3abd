"""Command line interface: ``pmap-gme {detect,choi,threshold,sweep,witness,selftest}``.

Exit codes: 0 success, 1 failed self-test, 2 usage error, 3 invalid input.
Payload goes to stdout; diagnostics go to stderr.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

import numpy as np

from . import detector, maps, selftest, states, witness
from .linalg import PAULI, hermitian_eigenvalues


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


def _floats(name: str, arg: str, count: int, kind=float) -> list:
    try:
        vals = [kind(x) for x in arg.split(",")] if arg else []
    except ValueError:
        raise UsageError(f"{name}: cannot parse parameters {arg!r}") from None
    if len(vals) != count:
        raise UsageError(f"{name} takes {count} parameter(s), got {len(vals)}")
    return vals


BUILTINS = {
    "ghz3": (0, lambda: states.ghz(3)),
    "ghz3-minus": (0, lambda: states.ghz(3, -1)),
    "ghz4": (0, lambda: states.ghz(4)),
    "w": (0, states.w_state),
    "bell": (0, states.bell_state),
    "maximally-mixed": (0, lambda: states.maximally_mixed(3)),
    "gen-ghz": (1, states.gen_ghz),
    "werner": (1, states.werner),
    "noisy-ghz3": (1, lambda x: states.white_noise_mix(states.ghz(3), x)),
    "noisy-ghz4": (1, lambda x: states.white_noise_mix(states.ghz(4), x)),
    "noisy-w": (1, lambda x: states.white_noise_mix(states.w_state(), x)),
    "bound": (2, states.bound_entangled),
}


def parse_state(source: str) -> states.DensityState:
    """Resolve a builtin name (``name`` or ``name:args``) or a JSON state file."""
    name, _, arg = source.partition(":")
    if name in BUILTINS or name == "gabcd":
        try:
            if name == "gabcd":
                return states.g_abcd(*_floats(name, arg, 4, complex))
            nargs, make = BUILTINS[name]
            if nargs == 0 and arg:
                raise UsageError(f"{name} takes no parameters")
            return make(*_floats(name, arg, nargs)) if nargs else make()
        except ValueError as exc:
            raise InputError(f"{source}: {exc}") from None
    path = Path(source)
    if path.suffix == ".json" or path.exists():
        if not path.exists():
            raise InputError(f"{source}: no such file")
        try:
            return states.load_state(path)
        except (ValueError, OSError) as exc:
            raise InputError(f"{source}: {exc}") from None
    raise UsageError(f"unknown state {source!r}; builtins: {', '.join(sorted(BUILTINS))}, gabcd")


def parse_map(name: str) -> maps.QubitMapSpec:
    kind, _, arg = name.partition(":")
    if kind == "projection" and not arg:
        return maps.PROJECTION
    if kind == "identity" and not arg:
        return maps.IDENTITY
    if kind == "lindblad":
        return maps.lindblad_projection(*_floats(kind, arg, 3))
    raise UsageError(f"unknown map {name!r}; expected projection, identity or lindblad:G1,G2,G3")


def detector_for(rho: states.DensityState, unitary_x: bool) -> detector.PhiSpec:
    u = PAULI["X"] if unitary_x else None
    if rho.n_qubits == 2:
        return detector.werner_spec(u)
    return detector.phi_spec(rho.n_qubits, u)


def _num(x: float) -> str:
    return format(float(x), ".10g")


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj) + "\n")


# -- commands ---------------------------------------------------------------


def cmd_detect(args) -> int:
    rho = parse_state(args.state)
    rep = detector.detect(rho, spec=detector_for(rho, args.unitary_x))
    if args.json:
        _emit({"state": args.state, "n_qubits": rho.n_qubits, **rep.to_dict()})
    else:
        print(f"state          {args.state} ({rho.n_qubits} qubits)")
        print(f"min_eigenvalue {_num(rep.min_eigenvalue)}")
        print(f"spectrum       {' '.join(_num(x) for x in rep.spectrum)}")
        print(f"detected       {str(rep.detected).lower()}")
    return 0


def cmd_choi(args) -> int:
    spec = parse_map(args.map)
    c = maps.choi_matrix(spec)
    eigs = hermitian_eigenvalues(c)
    if args.json:
        _emit({
            "map": args.map,
            "choi": [[[z.real, z.imag] for z in row] for row in c],
            "eigenvalues": [float(x) for x in eigs],
        })
    else:
        print(f"Choi matrix of {args.map}:")
        for row in c:
            print("  " + "  ".join(f"{z.real:+.6f}{z.imag:+.6f}j" for z in row))
        print("eigenvalues: " + " ".join(_num(x) for x in eigs))
    return 0


def cmd_threshold(args) -> int:
    pure = parse_state(args.state)
    try:
        x = detector.noise_threshold(pure, tol=args.tol, spec=detector_for(pure, args.unitary_x))
    except detector.ThresholdError as exc:
        raise InputError(f"{args.state}: {exc}") from None
    if args.json:
        _emit({"state": args.state, "threshold": x, "tol": args.tol})
    else:
        print(f"{x:.6f}")
    return 0


def _grid(lo: float, hi: float, steps: int) -> np.ndarray:
    if steps < 1:
        raise UsageError("grid must have at least one point")
    if steps == 1:
        return np.array([lo])
    return np.linspace(lo, hi, steps)


SWEEP_DEFAULTS = {
    "gen-ghz": (0.0, np.pi / 2, 158),
    "bound": (0.0, 1.0, 21),
    "gabcd": (0.0, 1.0, 41),
}

BOUND_EXTRAS = (
    "valid", "analytic_min", "analytic_mismatch", "ghz_basis_mismatch",
    "lambda1", "lambda4", "lambda5", "in_region1", "in_region4", "in_region5",
)


def cmd_sweep(args) -> int:
    lo, hi, steps = SWEEP_DEFAULTS[args.target]
    lo = lo if args.min is None else args.min
    hi = hi if args.max is None else args.max
    steps = steps if args.steps is None else args.steps
    axis1 = _grid(lo, hi, steps)
    axis2 = _grid(
        lo if args.min2 is None else args.min2,
        hi if args.max2 is None else args.max2,
        steps if args.steps2 is None else args.steps2,
    )
    summary: dict = {"target": args.target}
    extras: tuple[str, ...] = ()
    if args.target == "gen-ghz":
        rows = detector.sweep_gen_ghz(axis1)
        summary["crossings"] = detector.gen_ghz_crossings(rows)
    elif args.target == "bound":
        rows = detector.sweep_bound_entangled(axis1, axis2)
        extras = BOUND_EXTRAS
        valid = [r for r in rows if r.extras["valid"]]
        summary["valid_rows"] = len(valid)
        summary["max_analytic_mismatch"] = max((r.extras["analytic_mismatch"] for r in valid), default=None)
        summary["max_ghz_basis_mismatch"] = max((r.extras["ghz_basis_mismatch"] for r in valid), default=None)
    else:
        b = 0.6 if args.b is None else args.b
        rows = detector.sweep_g_abcd(axis1, axis2, b=b)
        extras = ("valid",)
        summary["b"] = b
    finite = [r.min_eigenvalue for r in rows if np.isfinite(r.min_eigenvalue)]
    summary["rows"] = len(rows)
    summary["negative_rows"] = sum(v < -detector.DETECTION_TOL for v in finite)
    summary["min_eigenvalue"] = min(finite) if finite else None

    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8", newline="") as fh:
                detector.write_sweep_csv(rows, fh, extras)
        except OSError as exc:
            raise InputError(f"cannot write {args.out}: {exc}") from None
        summary["out"] = args.out
        if args.json:
            _emit(summary)
        else:
            for k, v in summary.items():
                print(f"{k:24s} {v}")
    else:
        detector.write_sweep_csv(rows, sys.stdout, extras)
        print(json.dumps(summary), file=sys.stderr)
    return 0


def cmd_witness(args) -> int:
    w = witness.build_witness(args.qubits)
    plan = witness.measurement_settings(w)
    value = None
    if args.expect:
        value = witness.expectation(w, parse_state(args.expect))
    if args.json:
        doc = {"pauli_terms": w.pauli_terms}
        if value is not None:
            doc["expectation"] = value
        _emit(doc)
        return 0
    print(f"{'term':8s} coefficient")
    for label, c in w.pauli_terms.items():
        print(f"{label:8s} {c:+.15g}")
    print(f"correlations: {len(plan.correlations)}; local settings: {plan.n_settings} "
          f"({', '.join(plan.settings)}); tomography would need "
          f"{witness.tomography_settings(args.qubits)}")
    if value is not None:
        print(f"expectation on {args.expect}: {value:.15g}")
    return 0


def cmd_selftest(args) -> int:
    results = selftest.run_all(seed=args.seed, samples=args.samples, kappa3=args.kappa3)
    ok = all(r.passed for r in results)
    if args.json:
        _emit({"passed": ok, "suites": [r.to_dict() for r in results]})
    else:
        for r in results:
            print(f"{r.name:28s} {r.checked:6d}  {'PASS' if r.passed else 'FAIL'}  worst={r.worst:.3e}")
        for r in results:
            if r.counterexample is not None:
                print(json.dumps({"suite": r.name, "counterexample": r.counterexample}))
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pmap-gme", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("detect", help="apply the detector to a state")
    d.add_argument("state", help="builtin (ghz3, w, werner:P, bound:P1,P2, ...) or JSON file")
    d.add_argument("--unitary-x", action="store_true", help="follow each projection by sigma_x")
    d.add_argument("--json", action="store_true")
    d.set_defaults(func=cmd_detect)

    c = sub.add_parser("choi", help="Choi matrix and spectrum of a qubit map")
    c.add_argument("map", help="projection | identity | lindblad:G1,G2,G3")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_choi)

    t = sub.add_parser("threshold", help="white-noise detection threshold of a pure state")
    t.add_argument("state")
    t.add_argument("--unitary-x", action="store_true")
    t.add_argument("--tol", type=float, default=1e-6)
    t.add_argument("--json", action="store_true")
    t.set_defaults(func=cmd_threshold)

    s = sub.add_parser("sweep", help="parameter sweep written as CSV")
    s.add_argument("target", choices=sorted(SWEEP_DEFAULTS))
    s.add_argument("--min", type=float)
    s.add_argument("--max", type=float)
    s.add_argument("--steps", type=int, help="grid points on the first axis")
    s.add_argument("--min2", type=float, help="second axis (defaults to the first)")
    s.add_argument("--max2", type=float)
    s.add_argument("--steps2", type=int)
    s.add_argument("--b", type=float, help="fixed b for gabcd (default 0.6)")
    s.add_argument("--out", help="CSV path; without it CSV goes to stdout")
    s.add_argument("--json", action="store_true", help="JSON summary (with --out)")
    s.set_defaults(func=cmd_sweep)

    w = sub.add_parser("witness", help="GHZ witness and its Pauli decomposition")
    w.add_argument("--qubits", type=int, default=3, choices=[3, 4, 5])
    w.add_argument("--expect", metavar="STATE")
    w.add_argument("--json", action="store_true")
    w.set_defaults(func=cmd_witness)

    st = sub.add_parser("selftest", help="randomized property suites")
    st.add_argument("--seed", type=int, default=None, help="default: $PMAP_GME_SEED or built-in")
    st.add_argument("--samples", type=int, default=None)
    st.add_argument("--kappa3", type=float, default=None, help=argparse.SUPPRESS)
    st.add_argument("--json", action="store_true")
    st.set_defaults(func=cmd_selftest)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        stream=sys.stderr, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"pmap-gme: error: {exc}", file=sys.stderr)
        return 2
    except InputError as exc:
        print(f"pmap-gme: invalid input: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
