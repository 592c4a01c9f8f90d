"""Command-line front door.

Every subcommand writes one deterministic pretty-printed JSON report
(stdout by default, or the file named by its output flag) carrying
``"blochx_schema": 1`` and a ``generated_at`` timestamp, the one field
excluded from golden comparisons.  Exit codes: 0 success, 1 usage error,
2 numerical validation failure.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional

import numpy as np

from . import serialize
from .bloch import (BlochVector, DensityState, bloch_to_operator, is_state,
                    purity, state_to_bloch)
from .composite import build_composite, coupled_basis, product_basis
from .correspondence import (direction_scale_composite, direction_scale_single,
                             eigenstate_projections, isomorphism_sweep,
                             space_vector_composite, space_vector_single,
                             v_overlap_with_extremal)
from .generators import build_generators
from .measurement import run_measurement, simplex_from_observable
from .spin import Direction3, build_spin_system, check_spin, spin_along

SCHEMA_VERSION = 1
SEED_ENV_VAR = "BLOCHX_SEED"
DEFAULT_ISO_TOLERANCE = 1e-9
SPACING_TOLERANCE = 1e-10
AGREEMENT_TOLERANCE = 1e-10


class UsageError(Exception):
    """Bad flags or malformed inputs; exits with code 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass(frozen=True)
class RunConfig:
    """A validated invocation: which subcommand, the resolved seed, where
    the report goes, and any tolerance override."""

    command: str
    seed: int
    output_path: Optional[str]
    tolerance: Optional[float]
    params: argparse.Namespace


def _parse_spin_flag(text: str) -> float:
    try:
        return check_spin(float(text))
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid spin: {text!r}")


def _parse_direction_flag(text: str) -> Direction3:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected three comma-separated reals, got {text!r}")
    try:
        vec = np.array([float(p) for p in parts])
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected three comma-separated reals, got {text!r}")
    norm = float(np.linalg.norm(vec))
    if norm < 1e-12:
        raise argparse.ArgumentTypeError("direction must be nonzero")
    if abs(norm - 1.0) > 1e-6:
        print(f"warning: normalizing direction {text} (norm {norm:.6g})", file=sys.stderr)
    return Direction3.normalized(vec)


def _parse_seed_flag(text: str) -> int:
    try:
        seed = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid seed: {text!r}")
    if not 0 <= seed < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return seed


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be positive, got {value}")
    return value


def build_parser() -> _Parser:
    parser = _Parser(prog="blochx", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generators", help="emit the ordered generator basis for N")
    p.add_argument("--n", type=_positive_int, required=True, help="Hilbert space dimension (>= 2)")
    p.add_argument("--json", dest="output", default=None, help="output path (default stdout)")

    p = sub.add_parser("bloch", help="convert between operator-states and coordinate vectors")
    p.add_argument("--state", required=True, help="input state file (matrix or vector JSON)")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--to-vector", action="store_true", help="force matrix -> vector")
    mode.add_argument("--to-matrix", action="store_true", help="force vector -> matrix")

    p = sub.add_parser("spin", help="emit a directional spin observable")
    p.add_argument("--s", type=_parse_spin_flag, required=True, help="spin magnitude (half-integer)")
    p.add_argument("--direction", type=_parse_direction_flag, required=True,
                   help="spatial direction as three comma-separated reals")
    p.add_argument("--emit", dest="output", default=None, help="output path (default stdout)")

    p = sub.add_parser("measure", help="simulate repeated measurements of a state")
    p.add_argument("--s", type=_parse_spin_flag, required=True)
    p.add_argument("--direction", type=_parse_direction_flag, required=True)
    p.add_argument("--state", required=True, help="pre-measurement state file (matrix JSON)")
    p.add_argument("--samples", type=_positive_int, required=True)
    p.add_argument("--seed", type=_parse_seed_flag, default=None)
    p.add_argument("--trajectory-steps", type=_positive_int, default=None,
                   help="also write the approach path as CSV (needs --out)")
    p.add_argument("--out", dest="output", default=None)

    p = sub.add_parser("compose", help="emit a two-spin eigenbasis")
    p.add_argument("--s1", type=_parse_spin_flag, required=True)
    p.add_argument("--s2", type=_parse_spin_flag, required=True)
    p.add_argument("--direction", type=_parse_direction_flag, required=True)
    p.add_argument("--basis", choices=("coupled", "product"), required=True)
    p.add_argument("--out", dest="output", default=None)

    p = sub.add_parser("verify", help="check the direction-correspondence properties")
    p.add_argument("--prop", choices=("1", "2", "2bis"), required=True,
                   help="1: single spin; 2: composite, coupled basis; 2bis: composite, product basis")
    p.add_argument("--s", type=_parse_spin_flag, default=None)
    p.add_argument("--s1", type=_parse_spin_flag, default=None)
    p.add_argument("--s2", type=_parse_spin_flag, default=None)
    p.add_argument("--trials", type=_positive_int, default=100)
    p.add_argument("--seed", type=_parse_seed_flag, default=None)
    p.add_argument("--tolerance", type=float, default=None,
                   help="override the isomorphism deviation tolerance")
    p.add_argument("--out", dest="output", default=None)

    return parser


def parse_args(argv) -> RunConfig:
    """Validate an argument vector into a RunConfig.

    The seed falls back to the BLOCHX_SEED environment variable and then
    to 0 when the subcommand takes one and none was given.
    """
    args = build_parser().parse_args(argv)
    seed = getattr(args, "seed", None)
    if seed is None:
        env = os.environ.get(SEED_ENV_VAR)
        if env is not None:
            try:
                seed = _parse_seed_flag(env)
            except argparse.ArgumentTypeError as exc:
                raise UsageError(f"{SEED_ENV_VAR}: {exc}")
        else:
            seed = 0
    if args.command == "verify":
        if args.prop == "1" and args.s is None:
            raise UsageError("--prop 1 requires --s")
        if args.prop in ("2", "2bis") and (args.s1 is None or args.s2 is None):
            raise UsageError(f"--prop {args.prop} requires --s1 and --s2")
    if args.command == "measure" and args.trajectory_steps is not None and args.output is None:
        raise UsageError("--trajectory-steps requires --out for the CSV path")
    return RunConfig(command=args.command, seed=seed,
                     output_path=getattr(args, "output", None),
                     tolerance=getattr(args, "tolerance", None), params=args)


def emit_report(report: dict, cfg: RunConfig) -> None:
    """Write the report as deterministic JSON to the configured path or
    stdout; the generated_at timestamp is the only run-varying field."""
    body = {"blochx_schema": SCHEMA_VERSION,
            "generated_at": datetime.now(timezone.utc).isoformat()}
    body.update(report)
    text = serialize.dumps(body) + "\n"
    if cfg.output_path is None:
        sys.stdout.write(text)
    else:
        try:
            Path(cfg.output_path).write_text(text)
        except OSError as exc:
            raise UsageError(f"cannot write output file {cfg.output_path}: {exc}")


def _load_state_json(path: str, flag: str = "--state") -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"unreadable state file for {flag}: {exc}")
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON in {flag} file {path}: {exc}")
    if not isinstance(obj, dict):
        raise UsageError(f"{flag} file {path} must hold a JSON object")
    return obj


def _load_density_state(path: str, flag: str = "--state") -> DensityState:
    obj = _load_state_json(path, flag)
    if "matrix" not in obj:
        raise UsageError(f"{flag} file {path} has no 'matrix' field")
    try:
        return DensityState(serialize.matrix_from_json(obj["matrix"]))
    except ValueError as exc:
        raise UsageError(f"{flag} file {path}: {exc}")


def _cmd_generators(cfg: RunConfig) -> int:
    n = cfg.params.n
    if n < 2:
        raise UsageError(f"--n must be at least 2, got {n}")
    g = build_generators(n)
    emit_report({
        "command": "generators",
        "n": n,
        "c": g.c,
        "count": len(g),
        "generators": [serialize.matrix_to_json(m) for m in g],
    }, cfg)
    return 0


def _cmd_bloch(cfg: RunConfig) -> int:
    args = cfg.params
    obj = _load_state_json(args.state)
    has_matrix = "matrix" in obj
    has_coords = "coords" in obj
    if args.to_vector and not has_matrix:
        raise UsageError(f"--to-vector needs a 'matrix' field in {args.state}")
    if args.to_matrix and not has_coords:
        raise UsageError(f"--to-matrix needs 'coords' and 'n' fields in {args.state}")
    if not has_matrix and not has_coords:
        raise UsageError(f"--state file {args.state} has neither 'matrix' nor 'coords'")

    if has_matrix and not args.to_matrix:
        state = _load_density_state(args.state)
        g = build_generators(state.dim)
        r = state_to_bloch(state, g)
        emit_report({
            "command": "bloch",
            "kind": "bloch_vector",
            "n": state.dim,
            "coords": list(r.coords),
            "norm": r.norm,
            "purity": purity(r),
        }, cfg)
        return 0

    try:
        n = int(obj["n"])
        r = BlochVector(n, np.asarray(obj["coords"], dtype=float))
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"--state file {args.state}: {exc}")
    g = build_generators(n)
    operator = bloch_to_operator(r, g)
    ok, smallest = is_state(r, g)
    emit_report({
        "command": "bloch",
        "kind": "state",
        "n": n,
        "matrix": serialize.matrix_to_json(operator),
        "is_state": ok,
        "min_eigenvalue": smallest,
    }, cfg)
    return 0


def _cmd_spin(cfg: RunConfig) -> int:
    args = cfg.params
    sys_ = build_spin_system(args.s)
    obs = spin_along(sys_, args.direction)
    emit_report({
        "command": "spin",
        "s": sys_.s,
        "n": sys_.dim,
        "direction": list(args.direction.components),
        "matrix": serialize.matrix_to_json(obs.matrix),
        "eigenvalues": list(obs.eigenvalues),
        "eigenstates": [serialize.matrix_to_json(p.matrix) for p in obs.eigenstates],
    }, cfg)
    return 0


def _trajectory_csv_path(output_path: str) -> Path:
    out = Path(output_path)
    return out.with_suffix(".trajectory.csv") if out.suffix else out.with_name(out.name + ".trajectory.csv")


def _cmd_measure(cfg: RunConfig) -> int:
    args = cfg.params
    sys_ = build_spin_system(args.s)
    psi = _load_density_state(args.state)
    if psi.dim != sys_.dim:
        raise UsageError(f"--state dimension {psi.dim} does not match --s {sys_.s} (N={sys_.dim})")
    g = build_generators(sys_.dim)
    obs = spin_along(sys_, args.direction)
    stats = run_measurement(psi, obs, args.samples, cfg.seed, generators=g,
                            trajectory_steps=args.trajectory_steps)

    trajectory_csv = None
    if stats.trajectory is not None:
        path = _trajectory_csv_path(cfg.output_path)
        width = sys_.dim * sys_.dim - 1
        lines = ["tau," + ",".join(f"coord_{i}" for i in range(width))]
        for tau, point in stats.trajectory:
            lines.append(format(tau, ".17g") + ","
                         + ",".join(format(x, ".17g") for x in point.coords))
        try:
            path.write_text("\n".join(lines) + "\n")
        except OSError as exc:
            raise UsageError(f"cannot write trajectory CSV {path}: {exc}")
        trajectory_csv = str(path)

    emit_report({
        "command": "measure",
        "s": sys_.s,
        "n": sys_.dim,
        "direction": list(args.direction.components),
        "samples": stats.samples,
        "seed": stats.seed,
        "outcome_eigenvalues": list(stats.simplex.outcome_eigenvalues),
        "outcome_groups": [list(grp) for grp in stats.simplex.degeneracy_groups],
        "born": list(stats.born),
        "empirical": list(stats.empirical),
        "counts": [int(c) for c in stats.counts],
        "std_errors": list(stats.std_errors),
        "max_dev": stats.max_abs_deviation,
        "records_sample": [{
            "lambda": list(rec.lambda_),
            "outcome_index": rec.outcome_index,
            "post_state": serialize.matrix_to_json(rec.post_state.matrix),
        } for rec in stats.records_sample],
        "trajectory_csv": trajectory_csv,
    }, cfg)
    return 0


def _cmd_compose(cfg: RunConfig) -> int:
    args = cfg.params
    comp = build_composite(args.s1, args.s2)
    if args.basis == "coupled":
        entries = [{
            "s": e.s,
            "mu_s": e.mu,
            "amplitudes": serialize.complex_vector_to_json(e.state.amplitudes),
        } for e in coupled_basis(comp, args.direction).entries]
    else:
        entries = [{
            "mu1": e.mu1,
            "mu2": e.mu2,
            "amplitudes": serialize.complex_vector_to_json(e.state.amplitudes),
        } for e in product_basis(comp, args.direction).entries]
    emit_report({
        "command": "compose",
        "s1": comp.s1,
        "s2": comp.s2,
        "n1": comp.system1.dim,
        "n2": comp.system2.dim,
        "n": comp.dim,
        "direction": list(args.direction.components),
        "basis": args.basis,
        "entries": entries,
    }, cfg)
    return 0


def _cmd_verify(cfg: RunConfig) -> int:
    args = cfg.params
    tolerance = cfg.tolerance if cfg.tolerance is not None else DEFAULT_ISO_TOLERANCE
    report: dict = {"command": "verify", "prop": args.prop, "trials": args.trials,
                    "seed": cfg.seed, "tolerance": tolerance}
    checks: dict = {}

    if args.prop == "1":
        sys_ = build_spin_system(args.s)
        n_dim = sys_.dim
        g = build_generators(n_dim)
        deviations = isomorphism_sweep(lambda d: space_vector_single(sys_, d, g),
                                       args.trials, cfg.seed)
        axis = Direction3(np.array([0.0, 0.0, 1.0]))
        v = space_vector_single(sys_, axis, g)
        simplex = simplex_from_observable(spin_along(sys_, axis), g)
        projections = eigenstate_projections(v, simplex)
        expected = np.sqrt(12.0 / (n_dim + 1)) / (n_dim - 1) * simplex.eigenvalues
        spacing_dev = float(np.max(np.abs(projections - expected)))
        overlap = v_overlap_with_extremal(v, simplex, g)
        overlap_formula = (1.0 - np.sqrt(3.0 * (n_dim - 1) ** 2 / (n_dim + 1))) / n_dim
        overlap_dev = float(abs(overlap - overlap_formula))
        report["s"] = sys_.s
        report["n"] = n_dim
        report["scale_constant"] = direction_scale_single(n_dim)
        # the three canonical-axis vectors form an orthonormal triad spanning
        # the direction sphere's image inside the ball
        triad = [space_vector_single(sys_, Direction3(np.eye(3)[i]), g).coords
                 for i in range(3)]
        report["axis_triad"] = [list(t) for t in triad]
        checks["projection_spacing_deviation"] = spacing_dev
        checks["extremal_overlap"] = overlap
        checks["extremal_overlap_deviation"] = overlap_dev
        extra_ok = spacing_dev < SPACING_TOLERANCE and overlap_dev < SPACING_TOLERANCE
    else:
        comp = build_composite(args.s1, args.s2)
        g = build_generators(comp.dim)
        basis = "coupled" if args.prop == "2" else "product"
        deviations = isomorphism_sweep(
            lambda d: space_vector_composite(comp, d, basis, g), args.trials, cfg.seed)
        axis = Direction3(np.array([0.0, 0.0, 1.0]))
        v = space_vector_composite(comp, axis, "coupled", g)
        w = space_vector_composite(comp, axis, "product", g)
        agreement = float(np.linalg.norm(v.coords - w.coords))
        report["s1"] = comp.s1
        report["s2"] = comp.s2
        report["n"] = comp.dim
        report["scale_constant"] = direction_scale_composite(comp.system1.dim,
                                                             comp.system2.dim)
        checks["basis_agreement_deviation"] = agreement
        extra_ok = agreement < AGREEMENT_TOLERANCE

    max_dev = float(np.max(deviations))
    report["max_deviation"] = max_dev
    report["mean_deviation"] = float(np.mean(deviations))
    report["checks"] = checks
    passed = bool(max_dev < tolerance and extra_ok)
    report["pass"] = passed
    emit_report(report, cfg)
    return 0 if passed else 2


_HANDLERS = {
    "generators": _cmd_generators,
    "bloch": _cmd_bloch,
    "spin": _cmd_spin,
    "measure": _cmd_measure,
    "compose": _cmd_compose,
    "verify": _cmd_verify,
}


def main(argv=None) -> int:
    try:
        cfg = parse_args(argv if argv is not None else sys.argv[1:])
        return _HANDLERS[cfg.command](cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main_entry() -> int:
    return main()
