"""Command-line front end.

Exit status: 0 when everything verified passes, 1 on a verification
failure, 2 on usage or runtime errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from typing import Sequence

import numpy as np

from . import __version__
from .equipart import coset_partition, quotient_if_equitable
from .graphs import cayley, flag_johnson, johnson, path_graph, schreier_matrix
from .permgroup import gen_prime_set, gen_reducible_set
from .spectra import closed_form, eig_dense, laplacian
from .verify import SUITES, VARIANTS, RangeError, VerificationReport, run_suite

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    suite: str | None = None
    n_min: int | None = None
    n_max: int | None = None
    variants: tuple[str, ...] = VARIANTS
    seed: int = 42
    tol: float = 1e-9
    out: str | None = None
    format: str = "json"
    timestamp: bool = True
    jobs: int = field(default_factory=lambda: min(4, os.cpu_count() or 1))

    def to_json(self) -> dict:
        d = asdict(self)
        d.pop("out")
        d.pop("jobs")
        d.pop("timestamp")
        d["variants"] = list(self.variants)
        return d


def _fmt(x) -> str:
    if isinstance(x, (float, np.floating)):
        return f"{float(x):.12g}"
    return str(x)


def _matrix_text(m: np.ndarray) -> str:
    return "\n".join(",".join(_fmt(x) for x in row) for row in np.asarray(m).tolist())


def _variant_gens(variant: str, n: int, k: int | None = None):
    if variant == "prime":
        return gen_prime_set(n)
    return gen_reducible_set(n, 2 if k is None else k)


def _resolve_range(args: argparse.Namespace) -> tuple[int | None, int | None]:
    if args.n is not None:
        if args.n_min is not None or args.n_max is not None:
            raise UsageError("--n cannot be combined with --n-min/--n-max")
        return args.n, args.n
    return args.n_min, args.n_max


def _write(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- commands --------------------------------------------------------------


def cmd_gen(args: argparse.Namespace) -> int:
    if args.n is None:
        raise UsageError("gen needs --n")
    gens = _variant_gens(args.set or "prime", args.n, args.k)
    _write("".join(f"{s}\n" for s in gens), args.out)
    return EXIT_OK


def cmd_graph(args: argparse.Namespace) -> int:
    if args.n is None:
        raise UsageError("graph needs --n")
    kind = args.kind
    if kind == "cayley":
        g = cayley(_variant_gens(args.set or "plain", args.n, args.k), labels=True)
    elif kind == "flag":
        g = flag_johnson(args.n, 2 if args.k is None else args.k, labels=True)
    elif kind == "johnson":
        g = johnson(args.n, 2 if args.k is None else args.k)
    else:
        g = path_graph(args.n)
    deg = g.regular_degree()
    print(f"vertices {g.vertex_count}")
    print(f"edges {g.edge_count}")
    print(f"regular_degree {deg if deg is not None else 'none'}")
    print(f"components {g.component_count()}")
    if args.out:
        g.write_edges(args.out)
        g.write_labels(args.out + ".labels")
    return EXIT_OK


def cmd_quotient(args: argparse.Namespace) -> int:
    if args.n is None:
        raise UsageError("quotient needs --n")
    variant = args.set or "plain"
    if args.method == "closed":
        q = closed_form(args.n, variant)
    elif args.method == "schreier":
        q = schreier_matrix(_variant_gens(variant, args.n))
    else:
        q = quotient_if_equitable(cayley(_variant_gens(variant, args.n)), coset_partition(args.n))
    _write(_matrix_text(q) + "\n", args.out)
    return EXIT_OK


def cmd_spectrum(args: argparse.Namespace) -> int:
    if args.n is None:
        raise UsageError("spectrum needs --n")
    variant = args.set or "plain"
    name = args.matrix
    if name == "quotient":
        m = closed_form(args.n, variant)
    elif name == "laplacian":
        m = laplacian(closed_form(args.n, variant))
    elif name == "cayley":
        if args.n > 6:
            raise RangeError("n out of implemented brute-force range for a dense Cayley spectrum")
        m = cayley(_variant_gens(variant, args.n)).to_dense()
    else:
        m = path_graph(args.n).to_dense()
    spec = eig_dense(m)
    buf = io.StringIO()
    buf.write("index,eigenvalue,residual\n")
    for i, (v, r) in enumerate(zip(spec.values, spec.residuals), start=1):
        buf.write(f"{i},{v:.12g},{r:.12g}\n")
    _write(buf.getvalue(), args.out)
    return EXIT_OK


def _reports_csv(reports: list[VerificationReport], timestamps: bool) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["suite", "n", "status", "row_n", "name", "value"])
    for rep in reports:
        d = rep.to_json(timestamps)
        for k, v in d["margins"].items():
            w.writerow([d["suite"], d["n"], d["status"], "", k, _fmt(v)])
        for row in d.get("table") or []:
            for k, v in row.items():
                if k != "n":
                    w.writerow([d["suite"], d["n"], d["status"], row.get("n", ""), k, _fmt(v)])
    return buf.getvalue()


def _emit(reports: list[VerificationReport], cfg: RunConfig) -> int:
    for rep in reports:
        status = "PASS" if rep.passed else "FAIL"
        note = f"  {rep.detail}" if rep.detail else ""
        print(f"{status} {rep.suite} n={rep.n}{note}")
    if cfg.out:
        if cfg.format == "csv":
            text = _reports_csv(reports, cfg.timestamp)
        else:
            doc = {
                "version": __version__,
                "config": cfg.to_json(),
                "reports": [r.to_json(cfg.timestamp) for r in reports],
            }
            if cfg.timestamp:
                doc["generated_at"] = datetime.now(timezone.utc).isoformat()
            text = json.dumps(doc, indent=2, sort_keys=False) + "\n"
        with open(cfg.out, "w") as fh:
            fh.write(text)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def _config(args: argparse.Namespace, command: str, suite: str | None = None) -> RunConfig:
    n_min, n_max = _resolve_range(args) if command == "verify" else (None, None)
    variants = (args.set,) if getattr(args, "set", None) else VARIANTS
    cfg = RunConfig(
        command, suite, n_min, n_max, variants, args.seed, args.tol, args.out,
        args.format, not args.no_timestamp,
    )
    if args.jobs is not None:
        cfg.jobs = max(1, args.jobs)
    return cfg


def cmd_verify(args: argparse.Namespace) -> int:
    if args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}")
    cfg = _config(args, "verify", args.suite)
    reports = run_suite(cfg.suite, cfg.n_min, cfg.n_max, cfg.variants, cfg.seed, cfg.tol)
    return _emit(reports, cfg)


def cmd_all(args: argparse.Namespace) -> int:
    cfg = _config(args, "all")
    names = list(SUITES)
    with ThreadPoolExecutor(max_workers=cfg.jobs) as pool:
        futures = [
            pool.submit(run_suite, name, None, None, VARIANTS, cfg.seed, cfg.tol) for name in names
        ]
        reports = [rep for fut in futures for rep in fut.result()]
    return _emit(reports, cfg)


# -- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int)
    common.add_argument("--n-min", type=int)
    common.add_argument("--n-max", type=int)
    common.add_argument("--k", type=int, help="k for R_n(k) or FJ(n,k) / J(n,k)")
    common.add_argument("--set", choices=VARIANTS, help="generating set: prime = R'_n(2), plain = R_n(2)")
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--tol", type=float, default=1e-9, help="strictness tolerance for '>' claims")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out")
    common.add_argument("--no-timestamp", action="store_true")
    common.add_argument("--jobs", type=int)

    parser = argparse.ArgumentParser(
        prog="flagjohnson",
        description="Full-flag Johnson graphs, quotient matrices and spectral-gap verification.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[common], help="print a generating set in cycle notation")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("graph", parents=[common], help="build a graph, print stats, export edges")
    p.add_argument("--kind", choices=("cayley", "flag", "johnson", "path"), default="cayley")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("quotient", parents=[common], help="print a quotient matrix as CSV")
    p.add_argument("--method", choices=("closed", "schreier", "brute"), default="closed")
    p.set_defaults(func=cmd_quotient)

    p = sub.add_parser("spectrum", parents=[common], help="eigenvalues of a named matrix as CSV")
    p.add_argument("--matrix", choices=("quotient", "laplacian", "cayley", "path"), default="quotient")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("verify", parents=[common], help="run one verification suite")
    p.add_argument("suite", help=", ".join(SUITES))
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("all", parents=[common], help="run the full acceptance matrix")
    p.set_defaults(func=cmd_all)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    try:
        return args.func(args)
    except (UsageError, RangeError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def main() -> None:
    sys.exit(run())
