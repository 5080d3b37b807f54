"""Command-line interface.

Usage:
    cohdist analyze STATE                  block structure, classes, bound-state flag
    cohdist distill STATE [STATE ...]      maximum number of maximally coherent qubits
    cohdist transform STATE TARGET         feasibility verdict and optional channel export
    cohdist lattice {majorize,meet,join} DIST [DIST ...]

Exit codes: 0 ok, 2 invalid input, 3 dimension cap exceeded, 4 infeasible transform.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import io, majorization
from .channels import apply, assemble_distillation_channel
from .distillation import DEFAULT_DIM_CAP, can_transform_to, candidates, n_max
from .exceptions import CohDistError, DimensionOverflow
from .matrixcore import DEFAULT_TOL, density
from .purity import comparison_matrix, has_rank_one_submatrix, summarize

EXIT_INVALID = 2
EXIT_OVERFLOW = 3
EXIT_INFEASIBLE = 4


@dataclass(frozen=True)
class RunConfig:
    tol: float = DEFAULT_TOL
    dim_cap: int = DEFAULT_DIM_CAP
    output_format: str = "text"
    export_channel_path: str | None = None

    def __post_init__(self):
        if not 0 < self.tol < 1e-3:
            raise ValueError(f"tol must lie in (0, 1e-3), got {self.tol}")
        if self.dim_cap < 2:
            raise ValueError(f"dim cap must be at least 2, got {self.dim_cap}")
        if self.output_format not in ("text", "json"):
            raise ValueError(f"unknown output format {self.output_format!r}")


def _fmt(values) -> str:
    return "(" + ", ".join(f"{float(v):.6g}" for v in values) + ")"


def _emit(config: RunConfig, payload: dict, lines: list[str]) -> None:
    if config.output_format == "json":
        print(io.dumps(payload))
    else:
        print("\n".join(lines))


def cmd_analyze(args, config: RunConfig) -> int:
    rho = io.load_state(args.state, config.tol)
    cset = candidates(rho, config.tol)
    A = comparison_matrix(rho, config.tol)
    bound = not has_rank_one_submatrix(rho, config.tol)
    classes = cset.projectors
    weights = [c.weight for c in cset.entries]
    payload = {
        "dim": int(rho.shape[0]),
        "decomposition": cset.decomposition.to_dict(),
        "comparison": summarize(A, classes, weights, config.tol),
        "candidates": [c.to_dict() for c in cset.entries],
        "distillable_to_pure": cset.all_coherent,
        "bound_state": bound,
    }
    dec = cset.decomposition
    lines = [f"dimension: {rho.shape[0]}", f"permutation: {dec.permutation.tolist()}"]
    lines.append(f"blocks: {len(dec.blocks)}")
    for b in dec.blocks:
        lines.append(f"  indices {list(b.indices)}  weight {b.weight:.6g}  dim {b.dim}")
    if dec.null_indices:
        lines.append(f"null indices: {list(dec.null_indices)}")
    frag = payload["comparison"]
    if frag["min_offdiag"] is not None:
        lines.append(f"comparison matrix: min off-diagonal {frag['min_offdiag']:.6g}, "
                     f"saturated pairs {frag['saturated_pairs']}")
    lines.append(f"classes: {len(classes)}")
    for c in cset.entries:
        lines.append(f"  {list(c.indices)}  weight {c.weight:.6g}  dephased {_fmt(c.dephased)}")
    lines.append(f"distillable_to_pure: {str(cset.all_coherent).lower()}")
    lines.append(f"bound_state: {str(bound).lower()}")
    _emit(config, payload, lines)
    return 0


def cmd_distill(args, config: RunConfig) -> int:
    states = [io.load_state(path, config.tol) for path in args.states]
    report = n_max(states, config.tol, config.dim_cap)
    payload = report.to_dict()
    lines = [f"dimension: {report.dim}", f"classes: {len(report.candidates.entries)}"]
    if report.join_target is not None:
        lines.append(f"join target: {_fmt(report.join_target)}")
        lines.append(f"max entry: {report.inf_norm:.6g}")
    lines.append(f"distillable_to_pure: {str(report.distillable_to_pure).lower()}")
    lines.append(f"bound_state: {str(report.bound_state).lower()}")
    lines.append(f"N_max = {report.n_max}")
    _emit(config, payload, lines)
    return 0


def cmd_transform(args, config: RunConfig) -> int:
    rho = io.load_state(args.state, config.tol)
    phi = io.load_pure(args.target, config.tol)
    verdict = can_transform_to(rho, phi, config.tol)
    payload = {
        "feasible": verdict.feasible,
        "witness": [list(w) for w in verdict.witness],
        "target_dephased": (np.abs(phi) ** 2).tolist(),
        "channel_path": None,
    }
    lines = [f"feasible: {str(verdict.feasible).lower()}"]
    if verdict.feasible:
        lines.append("witness projectors: " + ", ".join(str(list(w)) for w in verdict.witness))
        if config.export_channel_path:
            channel = assemble_distillation_channel(rho, phi, config.tol)
            out = apply(channel, rho, config.tol)
            err = float(np.abs(out - density(phi)).max())
            if err > 1e-9:
                raise CohDistError(f"assembled channel misses the target by {err:.3e}")
            io.write_json(config.export_channel_path, io.channel_to_json(channel))
            payload["channel_path"] = config.export_channel_path
            payload["kraus_count"] = len(channel.kraus)
            lines.append(f"channel: {len(channel.kraus)} Kraus operators written to "
                         f"{config.export_channel_path}")
    _emit(config, payload, lines)
    return 0 if verdict.feasible else EXIT_INFEASIBLE


def cmd_lattice(args, config: RunConfig) -> int:
    dists = [io.load_distribution(path, config.tol) for path in args.dists]
    if args.op == "majorize":
        if len(dists) != 2:
            raise CohDistError("majorize takes exactly two distributions")
        verdict = majorization.majorizes(dists[0], dists[1], config.tol)
        _emit(config, {"majorizes": verdict}, [f"majorizes: {str(verdict).lower()}"])
        return 0
    result = majorization.meet(dists) if args.op == "meet" else majorization.join(dists)
    _emit(config, {args.op: result.tolist()}, [f"{args.op}: {_fmt(result)}"])
    return 0


def _env_tol() -> float:
    raw = os.environ.get("COHDIST_TOL")
    return float(raw) if raw else DEFAULT_TOL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=None,
                        help="numerical tolerance (default: $COHDIST_TOL or 1e-9)")
    common.add_argument("--dim-cap", type=int, default=DEFAULT_DIM_CAP,
                        help="largest allowed product dimension")
    common.add_argument("--format", choices=("text", "json"), default="text", dest="output_format")
    common.add_argument("--export-channel", metavar="PATH", default=None,
                        help="write the synthesized channel as JSON (transform only)")

    parser = argparse.ArgumentParser(prog="cohdist", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="block structure and pure classes")
    p.add_argument("state")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("distill", parents=[common], help="maximum extractable maximally coherent qubits")
    p.add_argument("states", nargs="+")
    p.set_defaults(func=cmd_distill)

    p = sub.add_parser("transform", parents=[common], help="decide and realize rho -> phi")
    p.add_argument("state")
    p.add_argument("target")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("lattice", parents=[common], help="majorization order, meet and join")
    p.add_argument("op", choices=("majorize", "meet", "join"))
    p.add_argument("dists", nargs="+")
    p.set_defaults(func=cmd_lattice)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = RunConfig(
            tol=args.tol if args.tol is not None else _env_tol(),
            dim_cap=args.dim_cap,
            output_format=args.output_format,
            export_channel_path=args.export_channel,
        )
    except ValueError as exc:
        parser.error(str(exc))
    try:
        return args.func(args, config)
    except DimensionOverflow as exc:
        print(f"error: DimensionOverflow: {exc}", file=sys.stderr)
        return EXIT_OVERFLOW
    except CohDistError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
