"""Command-line front end: ``shsqrt generate | sqrt | check | bench``.

Exit status is 0 on success, 1 when ``check`` finds a bad root, and the
``exit_code`` of the raised error class otherwise (see ``shsqrt.errors``).
"""
from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import __version__
from .diagnostics import ALGORITHMS, compute_root, relative_residual, structure_defects
from .errors import ConfigError, FileError, ShsqrtError
from .generators import example3_cases, generate
from .matcore import FlopCounter
from .mmio import read_matrix, write_matrix

DEFAULT_TOL = 1e-12
EXAMPLE_IDS = {"1": "example1", "2": "example2", "3": "example3", "random": "random_skewham"}


def structure_tol() -> float:
    """Validation tolerance, overridable through ``SHSQRT_TOL``."""
    raw = os.environ.get("SHSQRT_TOL")
    if raw is None or raw.strip() == "":
        return DEFAULT_TOL
    try:
        tol = float(raw)
    except ValueError:
        raise ConfigError(f"SHSQRT_TOL={raw!r} is not a number") from None
    if not tol >= 0.0 or tol == float("inf"):
        raise ConfigError(f"SHSQRT_TOL must be a finite non-negative number, got {raw!r}")
    return tol


def _sizes(text):
    parts = [p for p in text.replace(",", " ").split() if p]
    if not parts:
        raise ConfigError("--sizes needs at least one size")
    out = []
    for p in parts:
        try:
            out.append(int(p))
        except ValueError:
            raise ConfigError(f"bad size {p!r}") from None
    return out


def cmd_generate(args):
    example = EXAMPLE_IDS[args.example]
    W = generate(example, args.size, args.seed)
    note = f"shsqrt {__version__} generate example={example} order={2 * W.n}"
    if example in ("example3", "random_skewham"):
        note += f" seed={args.seed} rng=PCG64"
    write_matrix(args.output, W.full(), comment=note)
    return 0


def cmd_sqrt(args):
    M = read_matrix(args.input)
    root, report = compute_root(M, args.alg, tol=structure_tol())
    write_matrix(args.output, root,
                 comment=f"shsqrt {__version__} sqrt alg={args.alg} source={os.path.basename(args.input)}")
    text = report.to_json()
    if args.report:
        try:
            with open(args.report, "w", encoding="ascii") as fh:
                fh.write(text + "\n")
        except OSError as exc:
            raise FileError(f"cannot write {args.report}: {exc.strerror or exc}") from None
    else:
        print(text)
    return 0


def cmd_check(args):
    X = read_matrix(args.input)
    W = read_matrix(args.against)
    res = relative_residual(X, W)
    out = {"relative_residual": res}
    if X.shape[0] % 2 == 0:
        out["skew_hamiltonian_defect"], out["hamiltonian_defect"] = structure_defects(X)
    out["max_residual"] = args.max_residual
    out["ok"] = bool(res <= args.max_residual)
    print(json.dumps(out, indent=2))
    return 0 if out["ok"] else 1


def _bench_row(W, size):
    row = {"size": size}
    for alg in ("schur", "skewham"):
        ctx = FlopCounter()
        _, rep = compute_root(W, alg, ctx)
        row[f"flops_{alg}"] = rep.flops["total"]
        row[f"residual_{alg}"] = rep.relative_residual
        row[f"time_{alg}"] = rep.wall_time
    row["ratio"] = row["flops_skewham"] / row["flops_schur"]
    return row


def cmd_bench(args):
    sizes = _sizes(args.sizes)
    rows = []
    for size in sizes:
        if args.example == "random":
            rows.append(_bench_row(generate("random_skewham", size, args.seed), size))
        else:
            cases = [_bench_row(W, size) for _, W in
                     example3_cases(args.cases, size, first_seed=args.seed)]
            row = {"size": size, "cases": len(cases)}
            for key in cases[0]:
                if key.startswith(("flops", "time")) or key == "ratio":
                    row[key] = float(np.mean([c[key] for c in cases]))
                elif key.startswith("residual"):
                    row[key] = max(c[key] for c in cases)
            rows.append(row)
    if args.json:
        print(json.dumps(rows, indent=2))
        return 0
    head = f"{'2n':>5} {'flops schur':>14} {'flops skewham':>14} {'ratio':>7} " \
           f"{'res schur':>10} {'res skewham':>11} {'t schur':>8} {'t skewham':>9}"
    print(head)
    for r in rows:
        print(f"{r['size']:>5} {r['flops_schur']:>14.0f} {r['flops_skewham']:>14.0f} "
              f"{r['ratio']:>7.3f} {r['residual_schur']:>10.1e} {r['residual_skewham']:>11.1e} "
              f"{r['time_schur']:>8.2f} {r['time_skewham']:>9.2f}")
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="shsqrt",
                                description="Real square roots of skew-Hamiltonian matrices.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write an example matrix")
    g.add_argument("--example", required=True, choices=sorted(EXAMPLE_IDS))
    g.add_argument("--size", type=int, help="order 2n (example 3 defaults to 50)")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("-o", "--output", required=True)
    g.set_defaults(func=cmd_generate)

    s = sub.add_parser("sqrt", help="compute a square root")
    s.add_argument("--alg", required=True, choices=sorted(ALGORITHMS))
    s.add_argument("-i", "--input", required=True)
    s.add_argument("-o", "--output", required=True)
    s.add_argument("--report", help="write the JSON report here instead of stdout")
    s.set_defaults(func=cmd_sqrt)

    c = sub.add_parser("check", help="measure a root against its matrix")
    c.add_argument("-i", "--input", required=True, help="the root")
    c.add_argument("--against", required=True, help="the matrix")
    c.add_argument("--max-residual", type=float, default=1e-12)
    c.set_defaults(func=cmd_check)

    b = sub.add_parser("bench", help="compare flop counts of the unstructured and structured methods")
    b.add_argument("--sizes", required=True, help="comma-separated orders 2n")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--example", choices=("random", "3"), default="random")
    b.add_argument("--cases", type=int, default=10, help="admissible draws per size for example 3")
    b.add_argument("--json", action="store_true")
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "generate" and args.seed < 0 or \
                args.command == "bench" and (args.seed < 0 or args.cases < 1):
            raise ConfigError("seed must be non-negative and cases positive")
        return args.func(args)
    except ShsqrtError as exc:
        print(f"shsqrt: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except ValueError as exc:
        # e.g. non-finite entries rejected by as_matrix
        print(f"shsqrt: ConfigError: {exc}", file=sys.stderr)
        return ConfigError.exit_code
    except Exception as exc:  # last resort: report instead of a traceback
        print(f"shsqrt: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
