"""Command line front end.

Two subcommands share one parameter surface:

    qglue verify [--suite disc --suite chi,index ...] [--format json|csv]
    qglue index  [--nmax 5] [--format csv]

Values resolve as defaults < config file < explicit flags. The config file
is `key = value` lines with # comments, keys matching the long flag names
(suites as a comma-separated list). Exit code 0 means every check passed,
1 means at least one fail record, 2 means the invocation itself was bad.
"""

from __future__ import annotations

import argparse
import random
import sys
from dataclasses import dataclass, fields

from .errors import QGlueError
from .opnum import ParamSet
from .report import Report, timestamp_now
from .suites import SUITES, run_suites, suite_index

_PACKAGE_VERSION = "0.1.0"


@dataclass
class RunConfig:
    q: float = 0.6
    p: float = 0.4
    s: float = 0.8
    d: int = 64
    w: int = 8
    tol: float = 1e-10
    nmax: int = 5
    seed: int = 0
    format: str = "json"
    out: str | None = None
    suites: tuple = tuple(SUITES)

    def params(self) -> ParamSet:
        return ParamSet(q=self.q, p=self.p, s=self.s, d=self.d, w=self.w, tol=self.tol)


_FIELD_TYPES = {f.name: f.type for f in fields(RunConfig)}
_FLOAT_KEYS = ("q", "p", "s", "tol")
_INT_KEYS = ("d", "w", "nmax", "seed")


def load_config_file(path: str) -> dict:
    """Parse `key = value` lines; unknown keys and malformed lines raise."""
    values: dict = {}
    with open(path, "r", encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected 'key = value'")
            key, value = (part.strip() for part in line.split("=", 1))
            if key not in _FIELD_TYPES:
                raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
            if key in _FLOAT_KEYS:
                values[key] = float(value)
            elif key in _INT_KEYS:
                values[key] = int(value)
            elif key == "suites":
                values["suites"] = tuple(
                    name.strip() for name in value.split(",") if name.strip()
                )
            else:
                values[key] = value
    return values


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", type=float, help="first deformation parameter in (0, 1)")
    common.add_argument("--p", type=float, help="second deformation parameter in (0, 1)")
    common.add_argument("--s", type=float, help="family parameter in (0, 1]")
    common.add_argument("--d", type=int, help="matrix window size")
    common.add_argument("--w", type=int, help="shift window radius")
    common.add_argument("--tol", type=float, help="residual tolerance for relation checks")
    common.add_argument("--nmax", type=int, help="largest twist degree to sweep")
    common.add_argument("--seed", type=int, help="seed for the randomized checks")
    common.add_argument("--format", choices=("json", "csv"), help="report format")
    common.add_argument("--out", help="write the report to this file instead of stdout")
    common.add_argument("--config", help="read defaults from a key = value file")

    parser = argparse.ArgumentParser(
        prog="qglue",
        description="verification workbench for glued quantum-disc algebras",
    )
    parser.add_argument("--version", action="version", version=f"qglue {_PACKAGE_VERSION}")
    sub = parser.add_subparsers(dest="command", required=True)
    verify = sub.add_parser(
        "verify", parents=[common], help="run verification suites and emit a report"
    )
    verify.add_argument(
        "--suite",
        action="append",
        metavar="NAME[,NAME...]",
        help=f"suites to run (default: all). Known: {', '.join(SUITES)}",
    )
    sub.add_parser(
        "index", parents=[common], help="emit the pairing index table as a report"
    )
    return parser


def _resolve_config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig()
    layers = []
    if args.config:
        layers.append(load_config_file(args.config))
    flags: dict = {}
    for key in ("q", "p", "s", "d", "w", "tol", "nmax", "seed", "format", "out"):
        value = getattr(args, key, None)
        if value is not None:
            flags[key] = value
    if getattr(args, "suite", None):
        names = []
        for chunk in args.suite:
            names.extend(n.strip() for n in chunk.split(",") if n.strip())
        flags["suites"] = tuple(names)
    layers.append(flags)
    for layer in layers:
        for key, value in layer.items():
            setattr(cfg, key, value)
    unknown = [name for name in cfg.suites if name not in SUITES]
    if unknown:
        raise ValueError(f"unknown suite names: {', '.join(sorted(unknown))}")
    return cfg


def run(argv) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        cfg = _resolve_config(args)
        params = cfg.params()
    except (ValueError, OSError) as exc:
        print(f"qglue: {exc}", file=sys.stderr)
        return 2

    # guard failures (window too small to certify a trace, idempotent defect
    # over tolerance, ...) are parameter problems, not mathematical fails
    try:
        if args.command == "verify":
            records = run_suites(cfg.suites, params, cfg.nmax, cfg.seed)
            suites_meta = list(n for n in SUITES if n in set(cfg.suites))
        else:
            records = suite_index(params, cfg.nmax, random.Random(cfg.seed))
            suites_meta = ["index"]
    except (QGlueError, ValueError) as exc:
        print(f"qglue: {exc}", file=sys.stderr)
        return 2

    report = Report(
        meta={
            "command": args.command,
            "version": _PACKAGE_VERSION,
            "params": {
                "q": params.q,
                "p": params.p,
                "s": params.s,
                "d": params.d,
                "w": params.w,
                "tol": params.tol,
            },
            "nmax": cfg.nmax,
            "seed": cfg.seed,
            "suites": suites_meta,
            "timestamp": timestamp_now(),
        }
    )
    report.extend(records)

    text = report.to_json() if cfg.format == "json" else report.to_csv()
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    counts = report.counts()
    print(
        f"qglue {args.command}: {counts['pass']} pass, {counts['fail']} fail, "
        f"{counts['warn']} warn",
        file=sys.stderr,
    )
    return report.exit_code()


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
