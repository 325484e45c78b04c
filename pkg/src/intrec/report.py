"""Versioned JSON reports shared by the command line and the demos.

A report is a dict::

    {"schema": 1, "tool": "intrec <version>", "command": ..., "config": {...},
     "verdict": "pass" | "fail" | "unknown", "checks": [...], "data": {...}}

Each check is ``{"name", "anchor", "verdict", "checked", "witnesses", ...}``;
``anchor`` is the law being checked, written out.  Checks are sorted by name
and timings are left out unless asked for, so equal configurations give
byte-identical output.
"""

from __future__ import annotations

import hashlib
import json
import math
from typing import Iterable

from . import __version__
from .kernel import App, Code, Lam, pretty
from .pcat import LawReport, LawResult, Verdict, describe

__all__ = ["SCHEMA", "VERDICT_NAMES", "code_summary", "checks_from", "build_report", "dumps",
           "overall"]

SCHEMA = 1
VERDICT_NAMES = {Verdict.HOLDS: "pass", Verdict.FAILS: "fail", Verdict.UNKNOWN: "unknown"}
EXACT_BITS = 4096
MAX_TERM_CHARS = 2000


def _shape(t) -> tuple[int, int, float]:
    """Node count, depth and log2 of the code, over the shared term graph."""
    memo: dict = {}
    stack = [t]
    while stack:
        node = stack[-1]
        if node in memo:
            stack.pop()
            continue
        kids = [node.body] if isinstance(node, Lam) else [node.fn, node.arg] if isinstance(node, App) else []
        pending = [k for k in kids if k not in memo]
        if pending:
            stack.extend(pending)
            continue
        stack.pop()
        if not kids:
            payload = getattr(node, "n", getattr(node, "index", 0))
            memo[node] = (1, 1, 2.0 * math.log2(node.tag + payload + 2))
        elif len(kids) == 1:
            n, d, lg = memo[kids[0]]
            memo[node] = (n + 1, d + 1, _lg_pair(0.0, lg))
        else:
            (n1, d1, l1), (n2, d2, l2) = memo[kids[0]], memo[kids[1]]
            memo[node] = (n1 + n2 + 1, max(d1, d2) + 1, _lg_pair(1.0, _lg_pair(l1, l2)))
    return memo[t]


def _lg_pair(la: float, lb: float) -> float:
    # log2 of <a, b> is about 2 log2(a + b) - 1
    hi, lo = max(la, lb), min(la, lb)
    if math.isinf(hi):
        return hi
    s = hi + math.log2(1.0 + 2.0 ** (lo - hi)) if hi - lo < 60 else hi
    return 2.0 * s - 1.0


def code_summary(c: Code) -> dict:
    """What a report says about a code.

    The exact natural number is printed when it is short; otherwise its size
    and a digest of the term stand in for it.
    """
    if c.term is None:
        return {"junk": True, "value": str(c.value)}
    text = pretty(c.term, names=False)
    nodes, depth, lg = _shape(c.term)
    out = {"nodes": nodes, "depth": depth,
           "sha256": hashlib.sha256(text.encode()).hexdigest()}
    if lg < EXACT_BITS - 8:
        out["value"] = str(c.value)
    else:
        out["log2_value"] = "inf" if math.isinf(lg) else "%.6g" % lg
    out["term"] = text if len(text) <= MAX_TERM_CHARS else text[:MAX_TERM_CHARS] + " ..."
    return out


def _check(law: LawResult, prefix: str = "") -> dict:
    d = law.to_dict()
    return {
        "name": prefix + law.name,
        "anchor": law.statement,
        "verdict": VERDICT_NAMES[law.verdict],
        "checked": d["checked"], "holds": d["holds"], "fails": d["fails"], "unknown": d["unknown"],
        "witnesses": d["witnesses"],
    }


def checks_from(*reports: LawReport | LawResult) -> list[dict]:
    out = []
    for r in reports:
        if isinstance(r, LawResult):
            out.append(_check(r))
        else:
            out.extend(_check(law, r.suite + "/") for law in r.laws)
    return out


def overall(checks: Iterable[dict]) -> str:
    verdicts = {c["verdict"] for c in checks}
    if "fail" in verdicts:
        return "fail"
    if "unknown" in verdicts or not verdicts:
        return "unknown"
    return "pass"


def build_report(command: str, config: dict, checks: list[dict], data: dict | None = None,
                 timings: dict | None = None) -> dict:
    checks = sorted(checks, key=lambda c: c["name"])
    out = {
        "schema": SCHEMA,
        "tool": "intrec %s" % __version__,
        "command": command,
        "config": describe(config),
        "verdict": overall(checks),
        "checks": checks,
        "data": describe(data or {}),
    }
    if timings is not None:
        out["timings"] = timings
    return out


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True)
