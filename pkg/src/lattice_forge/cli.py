"""Command-line interface.

Subcommands cover construction/diagnostics (``construct``, ``admissible``,
``sphere``, ``bench-timing``) and the randomized application benchmarks
(``integrate``, ``boltzmann``, ``kernel``). Tabular results go to stdout
or ``--output`` as CSV (default) or JSON; CSV starts with the schema
comment ``# lattice-forge v1`` and, unless ``--deterministic`` is given,
a generation timestamp comment. ``--deterministic`` makes output
byte-identical across reruns with the same flags.

Exit codes: 0 success; 2 usage errors (argparse); 3 admissibility
violations (failed divisibility preconditions); 4 numeric domain or
size-cap errors.

The environment variable ``LATTICE_FORGE_THREADS`` caps the worker
threads the Korobov search may use (default 1).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from dataclasses import dataclass
from datetime import datetime, timezone

import numpy as np

from .exceptions import AdmissibilityError, DomainError, SizeLimitError
from .integration import run_boltzmann_benchmark, run_integration_benchmark
from .kernels import KernelSpec, load_data_csv, run_kernel_benchmark, synthetic_data
from .lattice import find_admissible_n, korobov_search, subgroup_generating_vector
from .metrics import lattice_min_distance, min_distance_bounds
from .pointset import generate, save_points_csv
from .sphere import asymptotic_coherence_bound, mutual_coherence, save_frame_csv, sphere_frame

__all__ = ["RunConfig", "main", "build_parser"]

SCHEMA = "lattice-forge v1"


@dataclass(frozen=True)
class RunConfig:
    """Validated run-wide settings shared by every subcommand."""

    command: str
    d: int | None
    n: int | None
    method: str | None
    norm: str
    seed: int
    runs: int
    output: str | None
    format: str
    deterministic: bool
    threads: int

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        return cls(
            command=args.command,
            d=getattr(args, "d", None),
            n=getattr(args, "n", None),
            method=getattr(args, "method", None),
            norm=getattr(args, "norm", "l1"),
            seed=getattr(args, "seed", 0),
            runs=getattr(args, "runs", 50),
            output=args.output,
            format=args.format,
            deterministic=args.deterministic,
            threads=_env_threads(),
        )


def _env_threads() -> int:
    raw = os.environ.get("LATTICE_FORGE_THREADS", "1")
    try:
        threads = int(raw)
    except ValueError:
        raise DomainError(f"LATTICE_FORGE_THREADS must be an integer, got {raw!r}")
    if threads < 1:
        raise DomainError(f"LATTICE_FORGE_THREADS must be >= 1, got {threads}")
    return threads


# ---------------------------------------------------------------------------
# Output rendering
# ---------------------------------------------------------------------------


def _csv_value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _render_csv(rows: list[dict], columns: list[str], deterministic: bool) -> str:
    buf = io.StringIO()
    buf.write(f"# {SCHEMA}\n")
    if not deterministic:
        buf.write(f"# generated {datetime.now(timezone.utc).isoformat()}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_csv_value(row.get(col, "")) for col in columns])
    return buf.getvalue()


def _render_json(rows: list[dict], columns: list[str], deterministic: bool) -> str:
    payload: dict = {"schema": SCHEMA}
    if not deterministic:
        payload["generated"] = datetime.now(timezone.utc).isoformat()
    payload["columns"] = columns
    payload["rows"] = [{col: row.get(col, "") for col in columns} for row in rows]
    return json.dumps(payload, indent=2) + "\n"


def _emit(rows: list[dict], columns: list[str], cfg: RunConfig) -> None:
    text = (
        _render_csv(rows, columns, cfg.deterministic)
        if cfg.format == "csv"
        else _render_json(rows, columns, cfg.deterministic)
    )
    if cfg.output:
        with open(cfg.output, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _append_summaries(rows: list[dict], value_cols: tuple[str, ...]) -> list[dict]:
    """Add one mean and one std row per method (population std)."""
    methods: list[str] = []
    for row in rows:
        if row["method"] not in methods:
            methods.append(row["method"])
    out = list(rows)
    for method in methods:
        sub = [r for r in rows if r["method"] == method]
        mean_row = dict(sub[0])
        std_row = dict(sub[0])
        mean_row["run"] = "mean"
        std_row["run"] = "std"
        for col in value_cols:
            vals = np.array([float(r[col]) for r in sub], dtype=np.float64)
            mean_row[col] = float(vals.mean())
            std_row[col] = float(vals.std())
        out.append(mean_row)
        out.append(std_row)
    return out


# ---------------------------------------------------------------------------
# Subcommand handlers: each returns (rows, columns)
# ---------------------------------------------------------------------------


def _cmd_construct(cfg: RunConfig, args: argparse.Namespace):
    if args.method == "korobov":
        res = korobov_search(cfg.d, cfg.n, cfg.norm, threads=cfg.threads)
        vec, multiplier = res.vector, res.multiplier
    else:
        vec, multiplier = subgroup_generating_vector(cfg.d, cfg.n), ""
    bounds = min_distance_bounds(cfg.d, cfg.n)
    rows = []
    for norm in ("l1", "l2"):
        rep = lattice_min_distance(vec, norm)
        lower, upper = (
            (bounds.l1_lower, bounds.l1_upper)
            if norm == "l1"
            else (bounds.l2_lower, bounds.l2_upper)
        )
        mults = rep.multiplicities()
        rows.append(
            {
                "method": vec.method,
                "d": vec.d,
                "n": vec.n,
                "norm": norm,
                "min_distance": rep.min_distance,
                "argmin_k": rep.argmin_k,
                "distinct_distances": rep.distinct_count,
                "uniform_multiplicity": mults[0] if len(set(mults)) == 1 else "",
                "bound_lower": lower,
                "bound_upper": upper,
                "bound_holds": lower - 1e-12 <= rep.min_distance <= upper + 1e-12,
                "multiplier": multiplier,
                "z": " ".join(str(c) for c in vec.z),
            }
        )
    if args.points_out:
        save_points_csv(generate(vec), args.points_out)
    columns = [
        "method", "d", "n", "norm", "min_distance", "argmin_k",
        "distinct_distances", "uniform_multiplicity", "bound_lower",
        "bound_upper", "bound_holds", "multiplier", "z",
    ]
    return rows, columns


def _cmd_admissible(cfg: RunConfig, args: argparse.Namespace):
    moduli = find_admissible_n(cfg.d, args.count, start=args.start)
    rows = [
        {"d": cfg.d, "index": i, "n": int(m)} for i, m in enumerate(moduli)
    ]
    return rows, ["d", "index", "n"]


def _cmd_integrate(cfg: RunConfig, args: argparse.Namespace):
    methods = (cfg.method,) if cfg.method else ("subgroup", "mc")
    rows = run_integration_benchmark(
        cfg.d,
        cfg.n,
        b=args.b,
        c=args.c,
        runs=cfg.runs,
        seed=cfg.seed,
        methods=methods,
        shifted=not args.no_shift,
    )
    rows = _append_summaries(rows, ("estimate", "rel_error"))
    return rows, ["method", "d", "n", "seed", "run", "estimate", "exact", "rel_error"]


def _cmd_boltzmann(cfg: RunConfig, args: argparse.Namespace):
    methods = (cfg.method,) if cfg.method else ("subgroup", "mc")
    rows, _ = run_boltzmann_benchmark(
        cfg.d,
        cfg.n,
        runs=cfg.runs,
        seed=cfg.seed,
        target=args.target,
        gt_samples=args.gt_samples,
        methods=methods,
    )
    rows = _append_summaries(rows, ("estimate", "rel_error"))
    return rows, ["method", "d", "n", "seed", "run", "estimate", "exact", "rel_error"]


def _cmd_kernel(cfg: RunConfig, args: argparse.Namespace):
    spec = KernelSpec(family=args.kernel, sigma=args.sigma)
    if args.data:
        data = load_data_csv(args.data)
    else:
        data = synthetic_data(args.samples, args.data_dim, seed=cfg.seed)
    n = cfg.n if cfg.n else int(find_admissible_n(data.shape[1], 1, start=997)[0])
    methods = (cfg.method,) if cfg.method else ("subgroup", "mc")
    rows = run_kernel_benchmark(
        data, n, spec, runs=cfg.runs, seed=cfg.seed, methods=methods
    )
    rows = _append_summaries(rows, ("rel_frobenius", "rel_max"))
    return rows, ["method", "d", "n", "seed", "run", "rel_frobenius", "rel_max"]


def _cmd_sphere(cfg: RunConfig, args: argparse.Namespace):
    if cfg.d % 2 != 0:
        raise AdmissibilityError(f"ambient dimension must be even, got {cfg.d}")
    m = cfg.d // 2
    frame = sphere_frame(m, cfg.n)
    rep = mutual_coherence(frame, method="character_sum")
    growth = asymptotic_coherence_bound(m, cfg.n)
    if args.frame_out:
        save_frame_csv(frame, args.frame_out)
    rows = [
        {
            "m": m,
            "n": cfg.n,
            "ambient_dim": frame.ambient_dim,
            "n_vectors": frame.n_vectors,
            "mu": rep.mu,
            "bound": rep.bound,
            "bound_holds": rep.bound_holds,
            "growth_bound": growth.value,
            "growth_bound_applicable": growth.applicable,
        }
    ]
    columns = [
        "m", "n", "ambient_dim", "n_vectors", "mu", "bound", "bound_holds",
        "growth_bound", "growth_bound_applicable",
    ]
    return rows, columns


def _cmd_bench_timing(cfg: RunConfig, args: argparse.Namespace):
    t0 = time.perf_counter()
    subgroup_generating_vector(cfg.d, cfg.n)
    t_subgroup = time.perf_counter() - t0
    t0 = time.perf_counter()
    korobov_search(cfg.d, cfg.n, cfg.norm, threads=cfg.threads)
    t_korobov = time.perf_counter() - t0
    rows = [
        {"method": "subgroup", "d": cfg.d, "n": cfg.n, "seconds": t_subgroup},
        {"method": "korobov", "d": cfg.d, "n": cfg.n, "seconds": t_korobov},
    ]
    return rows, ["method", "d", "n", "seconds"]


_HANDLERS = {
    "construct": _cmd_construct,
    "admissible": _cmd_admissible,
    "integrate": _cmd_integrate,
    "boltzmann": _cmd_boltzmann,
    "kernel": _cmd_kernel,
    "sphere": _cmd_sphere,
    "bench-timing": _cmd_bench_timing,
}


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lattice-forge",
        description="Closed-form rank-1 lattice construction and QMC benchmarks.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", "-o", metavar="PATH", help="write results to a file instead of stdout")
    common.add_argument("--format", choices=("csv", "json"), default="csv", help="output format (default csv)")
    common.add_argument(
        "--deterministic",
        action="store_true",
        help="omit the timestamp so identical flags give byte-identical output",
    )

    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("construct", parents=[common], help="build a generating vector and report its distance diagnostics")
    p.add_argument("--d", type=int, required=True, help="dimension")
    p.add_argument("--n", type=int, required=True, help="number of lattice points (prime)")
    p.add_argument("--method", choices=("subgroup", "korobov"), default="subgroup")
    p.add_argument("--norm", choices=("l1", "l2"), default="l1", help="norm the Korobov search optimizes")
    p.add_argument("--points-out", metavar="PATH", help="also write the lattice points as CSV")

    p = sub.add_parser("admissible", parents=[common], help="list primes n with 2d | n-1")
    p.add_argument("--d", type=int, required=True, help="dimension")
    p.add_argument("--count", type=int, default=5, help="how many moduli to list (default 5)")
    p.add_argument("--start", type=int, default=2, help="smallest n to consider (default 2)")

    p = sub.add_parser("integrate", parents=[common], help="randomized integration benchmark with closed-form reference")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--b", type=float, default=2.0, help="coordinate-decay exponent (default 2)")
    p.add_argument("--c", type=float, default=1.0, help="integrand scale (default 1)")
    p.add_argument("--runs", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--method", choices=("subgroup", "korobov", "mc"), help="restrict to one method (default: subgroup and mc)")
    p.add_argument("--no-shift", action="store_true", help="skip the random shift (lattice methods only)")

    p = sub.add_parser("boltzmann", parents=[common], help="partition-function / marginal estimation benchmark")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--runs", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--target", choices=("partition", "marginal"), default="partition")
    p.add_argument("--gt-samples", type=int, default=10_000_000, help="i.i.d. samples for the pseudo-ground-truth (default 1e7)")
    p.add_argument("--method", choices=("subgroup", "korobov", "mc"), help="restrict to one method")

    p = sub.add_parser("kernel", parents=[common], help="Gram-matrix approximation benchmark (lattice vs MC features)")
    p.add_argument("--kernel", choices=("gaussian", "arccos0", "arccos1"), default="gaussian")
    p.add_argument("--sigma", type=float, default=15.0, help="Gaussian bandwidth (default 15)")
    p.add_argument("--data", metavar="PATH", help="CSV data matrix, one sample per row (default: synthetic mixture)")
    p.add_argument("--samples", type=int, default=2000, help="synthetic sample count (default 2000)")
    p.add_argument("--data-dim", type=int, default=8, help="synthetic data dimension (default 8)")
    p.add_argument("--n", type=int, help="frequency count (default: first admissible prime >= 997)")
    p.add_argument("--runs", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--method", choices=("subgroup", "mc"), help="restrict to one method")

    p = sub.add_parser("sphere", parents=[common], help="unit-norm frame construction and mutual coherence")
    p.add_argument("--d", type=int, required=True, help="ambient dimension (even; m = d/2)")
    p.add_argument("--n", type=int, required=True, help="prime with m | n-1; the frame has 2n vectors")
    p.add_argument("--frame-out", metavar="PATH", help="also write the frame matrix as CSV")

    p = sub.add_parser("bench-timing", parents=[common], help="wall-clock comparison: closed-form construction vs exhaustive search")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--norm", choices=("l1", "l2"), default="l1")

    return parser


def main(argv: "list[str] | None" = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        cfg = RunConfig.from_args(args)
        rows, columns = _HANDLERS[args.command](cfg, args)
        _emit(rows, columns, cfg)
    except AdmissibilityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (DomainError, SizeLimitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
