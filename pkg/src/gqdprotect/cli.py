"""Command-line interface: ``sweep``, ``point`` and ``selftest``.

Exit status is 0 on success, 1 for configuration errors and 2 when a
numerical invariant is violated (including a failing self-test).
"""

from __future__ import annotations

import argparse
import configparser
import sys
from dataclasses import fields

from . import selftest
from .errors import ConfigError, ConvergenceError, DegenerateOutcomeError, InvalidStateError
from .sweep import CSV_HEADER, SweepConfig, query_point, write_sweep

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC = 0, 1, 2
NUMERIC_ERRORS = (InvalidStateError, DegenerateOutcomeError, ConvergenceError, ArithmeticError)

_INT_FIELDS = {"param_steps", "t_steps", "threads"}
_STR_FIELDS = {"family", "mode", "out"}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def _common(sp: argparse.ArgumentParser):
    sp.add_argument("--family", choices=("werner", "horodecki"))
    sp.add_argument("--p", type=float, help="weak measurement strength (q defaults to p)")
    sp.add_argument("--q", type=float)
    sp.add_argument("--lambda", dest="lam", type=float, help="spectral width in units of gamma")
    sp.add_argument("--theta", type=float, help="interference parameter in [-1, 1]")
    sp.add_argument("--mode", choices=("protected", "bare"))
    sp.add_argument("--config", help="key=value file; flags take precedence")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="gqdprotect", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sw = sub.add_parser("sweep", help="evaluate a (parameter, gamma t) grid and write CSV")
    _common(sw)
    sw.add_argument("--param-min", dest="param_min", type=float)
    sw.add_argument("--param-max", dest="param_max", type=float)
    sw.add_argument("--param-steps", dest="param_steps", type=int)
    sw.add_argument("--t-max", dest="t_max", type=float)
    sw.add_argument("--t-steps", dest="t_steps", type=int)
    sw.add_argument("--out", help="output CSV path (default: stdout)")
    sw.add_argument("--threads", type=int)

    pt = sub.add_parser("point", help="evaluate one point and print it as a CSV line")
    _common(pt)
    pt.add_argument("--param", type=float, required=True)
    pt.add_argument("--gamma-t", dest="gamma_t", type=float, default=0.0)
    pt.add_argument("--header", action="store_true", help="print the CSV header first")

    sub.add_parser("selftest", help="run oracle and analytic checks")
    return ap


def _read_config_file(path: str) -> dict:
    cp = configparser.ConfigParser()
    try:
        with open(path, encoding="utf-8") as fh:
            cp.read_string("[sweep]\n" + fh.read())
    except (OSError, configparser.Error) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    known = {f.name for f in fields(SweepConfig)}
    out = {}
    for key, raw in cp["sweep"].items():
        name = key.replace("-", "_")
        name = "lam" if name == "lambda" else name
        if name not in known:
            raise ConfigError(f"unknown config key {key!r}")
        try:
            out[name] = raw if name in _STR_FIELDS else (int(raw) if name in _INT_FIELDS else float(raw))
        except ValueError as exc:
            raise ConfigError(f"bad value for {key}: {raw!r}") from exc
    return out


def resolve_config(args: argparse.Namespace) -> SweepConfig:
    values = _read_config_file(args.config) if args.config else {}
    for f in fields(SweepConfig):
        v = getattr(args, f.name, None)
        if v is not None:
            values[f.name] = v
    return SweepConfig(**values).resolved()


def _run(args) -> int:
    if args.command == "selftest":
        lines, ok = selftest.report()
        print("\n".join(lines))
        return EXIT_OK if ok else EXIT_NUMERIC
    cfg = resolve_config(args)
    if args.command == "sweep":
        text = write_sweep(cfg)
        if cfg.out is None:
            sys.stdout.write(text)
        return EXIT_OK
    rec = query_point(cfg.family, args.param, p=cfg.p, q=cfg.q, lam=cfg.lam,
                      theta=cfg.theta, gamma_t=args.gamma_t, mode=cfg.mode)
    if args.header:
        print(CSV_HEADER)
    print(rec.csv_line())
    return EXIT_OK


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return _run(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NUMERIC_ERRORS as exc:
        print(f"numerical invariant violated: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
