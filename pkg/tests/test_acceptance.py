"""Acceptance criteria, one PASS/FAIL line each, at exact tolerance.

Run with pytest (lines appear in the terminal summary) or directly with
``python3 tests/test_acceptance.py``.
"""
from __future__ import annotations

import subprocess
import sys
from functools import lru_cache
from typing import Callable, Dict, List, Tuple

import pytest

from dessin_toda.checks import SUITES, Orders, registry, run_checks

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # direct script run outside the tests directory
    ACCEPTANCE_LINES = []

# criterion -> (title, predicate on (suite, name))
Selector = Callable[[str, str], bool]
CRITERIA: Dict[int, Tuple[str, Selector]] = {
    1: ("four-oracle agreement, weight <= 8, <= 5 parts", lambda s, n: s == "oracles"),
    2: ("dessin-Hurwitz bridge, |mu| <= 6, g <= 2", lambda s, n: n == "dessin-Hurwitz bridge"),
    3: ("large-n expansion coefficients, |mu| <= 6",
        lambda s, n: n == "large-n expansion" or n.startswith("two routes")),
    4: ("resolvent conjugation to lambda^-10",
        lambda s, n: n.startswith("conjugation") or n == "trace and determinant"),
    5: ("resolvent axioms and tau structure",
        lambda s, n: n in ("jet resolvent", "tau structure", "product formula", "one-point difference")),
    6: ("wave-function bridge and eigen-equations", lambda s, n: n in ("kernel bridge", "eigen-equations")),
    7: ("Virasoro, commutators, homogeneity, dilaton", lambda s, n: s == "virasoro"),
    8: ("shift identity and constant term through eps^8", lambda s, n: s == "barnes"),
    9: ("genus-zero reconstruction", lambda s, n: n in ("Frobenius identities", "genus zero")),
    10: ("genus-one reconstruction", lambda s, n: n == "genus one"),
    11: ("genus-one loop equation", lambda s, n: n.startswith("loop equation")),
    12: ("catalog of initial data", lambda s, n: n == "catalog"),
}
TITLE_13 = "CLI verify all exits 0; JSON/CSV byte-identical across runs and threads"


@lru_cache(maxsize=None)
def _results():
    return tuple(run_checks(registry(Orders(), SUITES), threads=1))


def evaluate(k: int) -> Tuple[bool, str]:
    title, pick = CRITERIA[k]
    chosen = [r for r in _results() if pick(r.suite, r.name)]
    if not chosen:
        return False, "no checks selected"
    bad = [r for r in chosen if not r.passed]
    if bad:
        return False, f"{bad[0].name}: {bad[0].detail}"
    return True, f"{len(chosen)} checks"


def _cli(*args: str) -> Tuple[int, bytes]:
    proc = subprocess.run([sys.executable, "-m", "dessin_toda.cli", "verify", "all", *args],
                          capture_output=True, check=False)
    return proc.returncode, proc.stdout


def evaluate_13() -> Tuple[bool, str]:
    runs: Dict[str, List[Tuple[int, bytes]]] = {}
    for fmt in ("json", "csv"):
        runs[fmt] = [_cli("--format", fmt, "--threads", t) for t in ("1", "1", "2")]
    codes = {code for rs in runs.values() for code, _ in rs}
    if codes != {0}:
        return False, f"exit codes {sorted(codes)}"
    for fmt, rs in runs.items():
        if len({out for _, out in rs}) != 1:
            return False, f"{fmt} output differs between runs"
    return True, "6 runs identical"


def _report(k: int, title: str, ok: bool, detail: str) -> str:
    line = f"{'PASS' if ok else 'FAIL'} criterion {k}: {title} ({detail})"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return line


@pytest.mark.slow
@pytest.mark.parametrize("k", sorted(CRITERIA))
def test_criterion(k):
    ok, detail = evaluate(k)
    _report(k, CRITERIA[k][0], ok, detail)
    assert ok, detail


@pytest.mark.slow
def test_criterion_13():
    ok, detail = evaluate_13()
    _report(13, TITLE_13, ok, detail)
    assert ok, detail


if __name__ == "__main__":
    status = 0
    for k in sorted(CRITERIA):
        ok, detail = evaluate(k)
        _report(k, CRITERIA[k][0], ok, detail)
        status |= not ok
    ok, detail = evaluate_13()
    _report(13, TITLE_13, ok, detail)
    sys.exit(status | (not ok))
