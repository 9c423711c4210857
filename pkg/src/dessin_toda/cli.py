"""Command-line interface.

    dessin-toda dessins --mu 2
    dessin-toda lue --mu 2,1
    dessin-toda hurwitz --g 0 --mu 1,1 --nu 2
    dessin-toda correlator --mu 3,1
    dessin-toda verify all

Exit codes: 0 success, 1 verification failure, 2 bad input.  JSON and CSV
output is byte-deterministic; timings only appear in the pretty format.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from dataclasses import replace
from typing import Dict, List, Optional, Sequence

from sympy import factor

from .algebra import render
from .partitions import partition

__all__ = ["main", "build_parser", "SCHEMA", "DEFAULTS", "CAPS"]

SCHEMA = "dessin-toda/1"

DEFAULTS = {
    "weight": 8,
    "lambda_order": 10,
    "eps_order": 8,
    "format": "pretty",
    "threads": 1,
}

# above these a warning is printed; Hurwitz degree is a hard cap
CAPS = {"weight": 8, "lambda_order": 10, "eps_order": 8, "parts": 5, "hurwitz_degree": 8}


class UsageError(ValueError):
    """Invalid user input (exit code 2)."""


def _parse_mu(text: Optional[str], flag: str) -> tuple:
    if text is None:
        raise UsageError(f"{flag} is required")
    try:
        parts = [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise UsageError(f"{flag} must be a comma-separated list of positive integers") from None
    if not parts or any(p <= 0 for p in parts):
        raise UsageError(f"{flag} must be a nonempty list of positive integers")
    return partition(parts)


def _read_config(path: str) -> Dict[str, str]:
    out: Dict[str, str] = {}
    try:
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                line = line.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise UsageError(f"{path}:{lineno}: expected key=value")
                key, val = (s.strip() for s in line.split("=", 1))
                out[key.replace("-", "_")] = val
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    return out


_INT_KEYS = ("weight", "lambda_order", "eps_order", "threads", "g")
_STR_KEYS = ("mu", "nu", "format", "out")


def _resolve(args: argparse.Namespace) -> argparse.Namespace:
    """Fill unset options from the config file, then from DEFAULTS."""
    cfg = _read_config(args.config) if getattr(args, "config", None) else {}
    unknown = set(cfg) - set(_INT_KEYS) - set(_STR_KEYS)
    if unknown:
        raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
    for key in _INT_KEYS + _STR_KEYS:
        if getattr(args, key, None) is not None or key not in cfg:
            continue
        val = cfg[key]
        if key in _INT_KEYS:
            try:
                val = int(val)
            except ValueError:
                raise UsageError(f"config key {key} must be an integer") from None
        setattr(args, key, val)
    for key, val in DEFAULTS.items():
        if getattr(args, key, None) is None:
            setattr(args, key, val)
    if args.format not in ("json", "csv", "pretty"):
        raise UsageError("format must be json, csv or pretty")
    for key in ("weight", "lambda_order", "eps_order", "threads"):
        if getattr(args, key) < 1:
            raise UsageError(f"--{key.replace('_', '-')} must be positive")
    for key in ("weight", "lambda_order", "eps_order"):
        if getattr(args, key) > CAPS[key]:
            print(f"warning: --{key.replace('_', '-')} {getattr(args, key)} exceeds the default cap "
                  f"{CAPS[key]}; this may be slow", file=sys.stderr)
    return args


# --------------------------------------------------------------------------
# output


def _json(payload: dict) -> str:
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


def _csv(header: Sequence[str], rows: Sequence[Sequence[object]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _factored(p) -> str:
    return str(factor(p.as_expr())).replace(" ", "")


# --------------------------------------------------------------------------
# commands


def cmd_dessins(args) -> int:
    from .dessins import n_kl

    mu = _parse_mu(args.mu, "--mu")
    if len(mu) > CAPS["parts"] or sum(mu) > args.weight:
        print(f"warning: mu={list(mu)} exceeds the default caps", file=sys.stderr)
    entries = n_kl(mu)
    if args.format == "json":
        text = _json({
            "schema": SCHEMA,
            "command": "dessins",
            "mu": list(mu),
            "entries": [{"k": e.k, "l": e.l, "g": e.g, "value": render(e.value)} for e in entries],
        })
    elif args.format == "csv":
        text = _csv(["k", "l", "g", "value"], [[e.k, e.l, e.g, render(e.value)] for e in entries])
    else:
        lines = [f"N_{{k,l}}({','.join(map(str, mu))})"]
        lines += [f"  g={e.g}  k={e.k}  l={e.l}  {render(e.value)}" for e in entries]
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return 0


def cmd_lue(args) -> int:
    from .lue import lue_correlator

    mu = _parse_mu(args.mu, "--mu")
    value = lue_correlator(mu)
    if args.format == "json":
        text = _json({"schema": SCHEMA, "command": "lue", "mu": list(mu), "value": render(value),
                      "factored": _factored(value)})
    elif args.format == "csv":
        text = _csv(["mu", "value"], [[" ".join(map(str, mu)), render(value)]])
    else:
        text = f"<{' '.join(f'tr M^{k}' for k in mu)}>_c = {_factored(value)}\n"
    _emit(text, args.out)
    return 0


def cmd_hurwitz(args) -> int:
    from .hurwitz import HurwitzQuery, monotone_table, strictly_monotone_hurwitz

    mu = _parse_mu(args.mu, "--mu")
    if sum(mu) > CAPS["hurwitz_degree"]:
        raise UsageError(f"degree {sum(mu)} exceeds the Hurwitz cap {CAPS['hurwitz_degree']}")
    if args.nu is not None:
        if args.g is None:
            raise UsageError("--g is required with --nu")
        nu = _parse_mu(args.nu, "--nu")
        try:
            q = HurwitzQuery(args.g, mu, nu)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        rows = [(args.g, nu, strictly_monotone_hurwitz(q, args.threads))]
    else:
        table = monotone_table(mu, args.threads)
        rows = [(g, nu, h) for (g, nu), h in table.items() if args.g is None or g == args.g]
    if args.format == "json":
        text = _json({
            "schema": SCHEMA,
            "command": "hurwitz",
            "mu": list(mu),
            "entries": [{"g": g, "nu": list(nu), "value": str(h)} for g, nu, h in rows],
        })
    elif args.format == "csv":
        text = _csv(["g", "nu", "value"], [[g, " ".join(map(str, nu)), h] for g, nu, h in rows])
    else:
        if args.nu is not None:
            text = f"{rows[0][2]}\n"
        else:
            text = "".join(f"g={g}  nu={list(nu)}  {h}\n" for g, nu, h in rows)
    _emit(text, args.out)
    return 0


def cmd_correlator(args) -> int:
    from .dessins import correlator, genus_parts

    mu = _parse_mu(args.mu, "--mu")
    value = correlator(mu)
    parts = genus_parts(mu)
    if args.format == "json":
        text = _json({
            "schema": SCHEMA,
            "command": "correlator",
            "mu": list(mu),
            "value": render(value),
            "genus": [{"g": g, "value": render(parts[g])} for g in sorted(parts)],
        })
    elif args.format == "csv":
        text = _csv(["g", "value"], [[g, render(parts[g])] for g in sorted(parts)])
    else:
        lines = [f"<{' '.join(f'tau_{k}' for k in mu)}>(n, w) = {render(value)}"]
        lines += [f"  genus {g}: {render(parts[g])}" for g in sorted(parts)]
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return 0


def cmd_verify(args) -> int:
    from .checks import SUITES, Orders, registry, run_checks

    suite = args.suite
    if suite != "all" and suite not in SUITES:
        raise UsageError(f"unknown suite {suite!r}; choose from {', '.join(SUITES + ('all',))}")
    orders = replace(Orders(), weight=args.weight, lambda_order=args.lambda_order,
                     eps_order=args.eps_order, threads=args.threads)
    checks = registry(orders, SUITES if suite == "all" else (suite,))
    start = time.perf_counter()
    results = run_checks(checks, args.threads)
    elapsed = time.perf_counter() - start
    ok = all(r.passed for r in results)
    if args.format == "json":
        text = _json({
            "schema": SCHEMA,
            "command": "verify",
            "suite": suite,
            "orders": {"weight": args.weight, "lambda_order": args.lambda_order, "eps_order": args.eps_order},
            "passed": ok,
            "checks": [
                {"suite": r.suite, "name": r.name, "identity": r.identity, "passed": r.passed, "detail": r.detail}
                for r in results
            ],
        })
    elif args.format == "csv":
        text = _csv(["suite", "name", "identity", "passed", "detail"],
                    [[r.suite, r.name, r.identity, "PASS" if r.passed else "FAIL", r.detail] for r in results])
    else:
        lines = [f"{'PASS' if r.passed else 'FAIL'}  {r.seconds:7.2f}s  [{r.suite}] {r.name}: {r.detail}"
                 for r in results]
        lines.append(f"{'PASS' if ok else 'FAIL'}  {elapsed:7.2f}s  {len(results)} checks")
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    if not ok:
        first = next(r for r in results if not r.passed)
        print(f"first failure: [{first.suite}] {first.name}: {first.detail}", file=sys.stderr)
        return 1
    return 0


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--weight", type=int, help="coupling weight cutoff (default 8)")
    common.add_argument("--lambda-order", dest="lambda_order", type=int, help="1/lambda order (default 10)")
    common.add_argument("--eps-order", dest="eps_order", type=int, help="epsilon order (default 8)")
    common.add_argument("--format", choices=("json", "csv", "pretty"), help="output format (default pretty)")
    common.add_argument("--out", help="write output to this file")
    common.add_argument("--threads", type=int, help="worker processes (default 1)")
    common.add_argument("--config", help="key=value file mirroring the flags; flags win")

    parser = argparse.ArgumentParser(prog="dessin-toda", description="Exact dessin, LUE and Toda computations.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dessins", parents=[common], help="table of N_{k,l}(mu)")
    p.add_argument("--mu", help="partition, e.g. 2,1")
    p.set_defaults(func=cmd_dessins)

    p = sub.add_parser("lue", parents=[common], help="connected LUE correlator")
    p.add_argument("--mu", help="partition, e.g. 2,1")
    p.set_defaults(func=cmd_lue)

    p = sub.add_parser("hurwitz", parents=[common], help="strictly monotone double Hurwitz numbers")
    p.add_argument("--mu", help="partition")
    p.add_argument("--nu", help="partition (omit for the full table)")
    p.add_argument("--g", type=int, help="genus")
    p.set_defaults(func=cmd_hurwitz)

    p = sub.add_parser("correlator", parents=[common], help="connected dessin correlator in (n, w)")
    p.add_argument("--mu", help="partition")
    p.set_defaults(func=cmd_correlator)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", help="oracles | virasoro | lue | toda | hurwitz | barnes | genus | all")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse reports usage errors with code 2
        return int(exc.code or 0)
    for key in ("mu", "nu", "g"):
        if not hasattr(args, key):
            setattr(args, key, None)
    try:
        args = _resolve(args)
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
