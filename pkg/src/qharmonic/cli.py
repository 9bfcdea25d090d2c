"""``qharm verify``: run verification suites and write JSON / CSV reports.

Exit status: 0 when every check passes, 1 when any check fails, 2 on a
configuration error (unknown suite, malformed config file or flag values).
"""

from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import replace
from pathlib import Path

from .errors import ConfigError, QHarmonicError
from .qmatrix import read_tuple
from .quat import UnitImaginary
from .suites import SUITES, SuiteConfig, convergence_rows, run_suite

__all__ = ["main", "build_parser", "parse_config_file", "parse_unit"]

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2

# config-file keys and how to convert their values
_KEYS = {
    "suite": str,
    "nodes": int,
    "tol_scale": float,
    "seed": int,
    "dim": int,
    "json": str,
    "csv": str,
    "unit": str,
    "tuple": str,
    "points": int,
    "pairs": int,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise ConfigError(message)


def parse_unit(text: str) -> UnitImaginary:
    """``x,y,z`` or ``J=x,y,z`` to a unit imaginary quaternion."""
    body = text.split("=", 1)[1] if "=" in text else text
    try:
        x, y, z = (float(v) for v in body.split(","))
    except ValueError:
        raise ConfigError(f"unit must look like J=x,y,z, got {text!r}") from None
    try:
        return UnitImaginary.from_vector(x, y, z)
    except (ValueError, ZeroDivisionError, QHarmonicError):
        raise ConfigError(f"unit {text!r} is not a nonzero imaginary vector") from None


def parse_config_file(path) -> dict:
    """Read ``key = value`` lines; ``#`` starts a comment, dashes in keys are allowed."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}") from None
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in _KEYS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            out[key] = _KEYS[key](value)
        except ValueError:
            raise ConfigError(f"{path}:{lineno}: bad value for {key}: {value!r}") from None
    return out


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qharm", description="Numerical verification of harmonic and S-functional calculus identities.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    v = sub.add_parser("verify", help="run a named verification suite")
    v.add_argument("--suite", help=f"one of: all, {', '.join(SUITES)}")
    v.add_argument("--nodes", type=int, help="quadrature nodes per circle (even, >= 16)")
    v.add_argument("--tol-scale", dest="tol_scale", type=float, help="multiply every tolerance")
    v.add_argument("--seed", type=int)
    v.add_argument("--dim", type=int, help="size of the random commuting tuples")
    v.add_argument("--json", help="write the JSON report here ('-' for stdout)")
    v.add_argument("--csv", help="write a convergence sweep over N in {32, 64, 128, 256}")
    v.add_argument("--unit", help="imaginary unit of the integration slice, J=x,y,z")
    v.add_argument("--tuple", help="commuting tuple file used instead of random tuples")
    v.add_argument("--points", type=int, help="number of (s, q) pairs in the kernel suite")
    v.add_argument("--pairs", type=int, help="number of (s, p) pairs per tuple in the resolvent suite")
    v.add_argument("--config", help="file of 'key = value' lines; flags override it")
    return p


def _settings(args: argparse.Namespace) -> dict:
    settings = parse_config_file(args.config) if args.config else {}
    for key in _KEYS:
        val = getattr(args, key, None)
        if val is not None:
            settings[key] = val
    return settings


def _config(settings: dict) -> SuiteConfig:
    kw = {k: settings[k] for k in ("nodes", "tol_scale", "seed", "dim", "points", "pairs") if k in settings}
    if "unit" in settings:
        kw["unit"] = parse_unit(settings["unit"])
    if "tuple" in settings:
        path = Path(settings["tuple"])
        if not path.is_file():
            raise ConfigError(f"tuple file {str(path)!r} not found")
        try:
            kw["tuple"] = read_tuple(path)
        except (QHarmonicError, ValueError) as exc:
            raise ConfigError(f"bad tuple file: {exc}") from None
    return SuiteConfig(**kw)


def _write_csv(path: str, rows) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["suite", "check", "N", "residual"])
        for suite, check, N, res in rows:
            w.writerow([suite, check, N, repr(float(res))])


def _verify(args: argparse.Namespace) -> int:
    settings = _settings(args)
    suite = settings.get("suite", "all")
    if suite != "all" and suite not in SUITES:
        raise ConfigError(f"unknown suite {suite!r}; choose from all, {', '.join(SUITES)}")
    cfg = _config(settings)
    report = run_suite(suite, cfg)
    out = settings.get("json")
    if out == "-":
        sys.stdout.write(report.to_json() + "\n")
    elif out:
        Path(out).write_text(report.to_json() + "\n")
    if settings.get("csv"):
        _write_csv(settings["csv"], convergence_rows(suite, replace(cfg)))
    log = sys.stderr if out == "-" else sys.stdout
    for ch in report.failures:
        print(f"FAIL {ch.name}: residual {ch.residual:.3e} > tol {ch.tol:.3e}", file=log)
    n, bad = len(report.checks), len(report.failures)
    print(f"{suite}: {n - bad}/{n} checks passed (seed {cfg.seed}, N = {cfg.nodes}, {report.elapsed:.2f} s)", file=log)
    return EXIT_OK if report.passed else EXIT_FAIL


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return _verify(args)
    except ConfigError as exc:
        print(f"qharm: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
