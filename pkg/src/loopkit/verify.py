"""Run theorem suites over a catalog of loops and report the outcome.

The catalog is every bundled fixture plus all normalized loops of orders
``1..max_order`` (optionally only those satisfying extra identities).
Reports never depend on timing or worker count, so two runs over the same
catalog render byte-identical text.
"""

from __future__ import annotations

import json
import logging
import re
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .core import LoopTable
from .fixtures import FIXTURE_NAMES, load_fixture
from .identity import resolve
from .loopfile import format_loop
from .search import SearchSpec, enumerate_loops
from .suites import SUITE_TITLES, SUITES, theorems_for

log = logging.getLogger(__name__)

VERIFIED = "verified"
COUNTEREXAMPLE = "counterexample"
SKIPPED = "skipped"
EXPECTED_FAILURE_CONFIRMED = "expected-failure-confirmed"
EXPECTED_FAILURE_MISSING = "expected-failure-missing"

CATALOG_FIXTURES = FIXTURE_NAMES + ("dihedral8",)


def parse_suites(text: str) -> tuple:
    """``"S1..S8"``, ``"S2,S5"``, ``"all"`` -> ordered suite names."""
    if text.strip().lower() == "all":
        return SUITES
    out = []
    for part in text.split(","):
        part = part.strip().upper()
        m = re.fullmatch(r"S(\d)(?:\.\.|-)S(\d)", part)
        names = [f"S{i}" for i in range(int(m[1]), int(m[2]) + 1)] if m else [part]
        for name in names:
            if name not in SUITE_TITLES:
                raise ValueError(f"unknown suite {name!r}")
            if name not in out:
                out.append(name)
    return tuple(sorted(out, key=SUITES.index))


def build_catalog(max_order: int, require=(), fixtures: bool = True) -> list:
    """``[(name, LoopTable)]``: fixtures first, then enumerated loops by order."""
    entries = []
    if fixtures:
        entries.extend((name, load_fixture(name)) for name in CATALOG_FIXTURES)
    required = tuple(resolve(r) if isinstance(r, str) else r for r in require)
    for n in range(1, max_order + 1):
        for i, q in enumerate(enumerate_loops(SearchSpec(n, required=required))):
            q.name = f"order{n}#{i}"
            entries.append((q.name, q))
    return entries


def catalog_sizes(entries) -> dict:
    sizes = {}
    for name, q in entries:
        key = "fixtures" if "#" not in name else f"order{q.n}"
        sizes[key] = sizes.get(key, 0) + 1
    sizes["total"] = len(entries)
    return sizes


@dataclass
class TheoremResult:
    suite: str
    name: str
    statement: str
    status: str
    checked: int
    failures: int
    first_failure: dict | None = None  # loop name, serialized table, witness
    reason: str | None = None

    def as_dict(self) -> dict:
        return {k: v for k, v in self.__dict__.items() if v is not None}


@dataclass
class VerificationReport:
    suites: tuple
    catalog: dict
    results: list
    seconds: float = field(default=0.0, compare=False)

    @property
    def ok(self) -> bool:
        return all(r.status not in (COUNTEREXAMPLE, EXPECTED_FAILURE_MISSING) for r in self.results)

    def counts(self) -> dict:
        out = {}
        for r in self.results:
            out[r.status] = out.get(r.status, 0) + 1
        return dict(sorted(out.items()))

    def to_text(self) -> str:
        lines = []
        lines.append("suites: " + " ".join(self.suites))
        lines.append("catalog: " + " ".join(f"{k}={v}" for k, v in self.catalog.items()))
        lines.append("witness elements are 0-based indices; tables are printed in their file labels")
        current = None
        for r in self.results:
            if r.suite != current:
                current = r.suite
                lines.append(f"[{r.suite}] {SUITE_TITLES[r.suite]}")
            extra = f" ({r.reason})" if r.reason else ""
            lines.append(f"  {r.status:<27} {r.name}  checked={r.checked} failures={r.failures}{extra}")
            if r.first_failure is not None:
                f = r.first_failure
                lines.append(f"    loop: {f['loop']}")
                lines.append(f"    witness: {json.dumps(f['witness'], sort_keys=True)}")
                lines.extend("    | " + row for row in f["table"].splitlines())
        lines.append("summary: " + " ".join(f"{k}={v}" for k, v in self.counts().items())
                     + (" OK" if self.ok else " FAILED"))
        return "\n".join(lines) + "\n"

    def to_json(self, include_timing: bool = False) -> str:
        doc = {"suites": list(self.suites), "catalog": self.catalog, "ok": self.ok,
               "results": [r.as_dict() for r in self.results]}
        if include_timing:
            doc["seconds"] = round(self.seconds, 3)
        return json.dumps(doc, sort_keys=True, indent=1)


def _run_one(theorem, q):
    if not theorem.qualifies(q):
        return False, None
    try:
        return True, theorem.check(q)
    except Exception as exc:  # any crash is reported as a failure with its message
        return True, {"error": f"{type(exc).__name__}: {exc}"}


def _run_chunk(args):
    suites, items = args
    theorems = theorems_for(suites)
    out = []
    for index, name, rows, base in items:
        q = LoopTable(np.array(rows), name=name, base=base)
        out.append((index, [_run_one(t, q) for t in theorems]))
    return out


def _chunks(seq, k):
    size = max(1, -(-len(seq) // k))
    return [seq[i:i + size] for i in range(0, len(seq), size)]


def verify_theorems(entries, suites=SUITES, workers: int = 1) -> VerificationReport:
    """Run every theorem of ``suites`` on every qualifying catalog loop."""
    start = time.perf_counter()
    suites = tuple(suites)
    theorems = theorems_for(suites)
    if workers > 1 and len(entries) > 1:
        items = [(i, name, q.table.tolist(), q.base) for i, (name, q) in enumerate(entries)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = pool.map(_run_chunk, [(suites, c) for c in _chunks(items, workers * 4)])
            rows = sorted((r for part in parts for r in part), key=lambda r: r[0])
        outcomes = [r[1] for r in rows]
    else:
        outcomes = [[_run_one(t, q) for t in theorems] for _, q in entries]

    results = []
    for k, t in enumerate(theorems):
        checked = failures = 0
        first = None
        for (name, q), row in zip(entries, outcomes):
            applied, witness = row[k]
            checked += applied
            if witness is not None:
                failures += 1
                if first is None:
                    first = {"loop": name, "table": format_loop(q), "witness": witness}
        reason = None
        if t.expected_failure:
            status = EXPECTED_FAILURE_CONFIRMED if failures else EXPECTED_FAILURE_MISSING
        elif failures:
            status = COUNTEREXAMPLE
        elif checked == 0:
            status, reason = SKIPPED, "no qualifying loop in catalog"
        else:
            status = VERIFIED
        results.append(TheoremResult(t.suite, t.name, t.statement, status, checked, failures, first, reason))
        if status in (COUNTEREXAMPLE, EXPECTED_FAILURE_MISSING):
            log.warning("%s %s: %s", t.suite, t.name, status)
    return VerificationReport(suites, catalog_sizes(entries), results, time.perf_counter() - start)


def run_suites(suites=SUITES, max_order: int = 5, require=(), workers: int = 1) -> VerificationReport:
    entries = build_catalog(max_order, require)
    return verify_theorems(entries, suites, workers)
