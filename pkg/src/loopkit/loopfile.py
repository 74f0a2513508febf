"""Plain-text loop files.

Format::

    # comments anywhere
    order N          (1 <= N <= 64)
    base B           (optional, B in {0, 1}, default 0)
    N lines of N whitespace-separated integers in [B, B+N-1]

``format_loop`` writes the canonical form (no comments, explicit base), so
loading and saving a canonical file reproduces it byte for byte.
"""

from __future__ import annotations

import os

from .core import LoopTable
from .errors import LoopError

MAX_ORDER = 64


class ParseError(LoopError, ValueError):
    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")


def parse_loop(text: str, name: str | None = None) -> LoopTable:
    lines = [(k, raw.strip()) for k, raw in enumerate(text.splitlines(), start=1)]
    lines = [(k, s) for k, s in lines if s and not s.startswith("#")]
    if not lines:
        raise ParseError(1, "empty loop file")
    k, first = lines[0]
    parts = first.split()
    if len(parts) != 2 or parts[0] != "order" or not parts[1].isdigit():
        raise ParseError(k, "expected 'order N'")
    n = int(parts[1])
    if not 1 <= n <= MAX_ORDER:
        raise ParseError(k, f"order must be in 1..{MAX_ORDER}")
    body = lines[1:]
    base = 0
    if body and body[0][1].split()[0] == "base":
        k, s = body[0]
        parts = s.split()
        if len(parts) != 2 or parts[1] not in ("0", "1"):
            raise ParseError(k, "expected 'base 0' or 'base 1'")
        base = int(parts[1])
        body = body[1:]
    if len(body) != n:
        where = body[n][0] if len(body) > n else (body[-1][0] + 1 if body else k + 1)
        raise ParseError(where, f"expected {n} table rows, found {len(body)}")
    rows = []
    for k, s in body:
        try:
            row = [int(tok) for tok in s.split()]
        except ValueError:
            raise ParseError(k, "non-integer entry") from None
        if len(row) != n:
            raise ParseError(k, f"expected {n} entries, found {len(row)}")
        rows.append(row)
    return LoopTable.from_rows(rows, base=base, name=name)


def format_loop(q: LoopTable, base: int | None = None) -> str:
    b = q.base if base is None else base
    out = [f"order {q.n}", f"base {b}"]
    out += [" ".join(str(v + b) for v in row) for row in q.rows()]
    return "\n".join(out) + "\n"


def load_loop(path) -> LoopTable:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    name = os.path.splitext(os.path.basename(os.fspath(path)))[0]
    return parse_loop(text, name=name)


def save_loop(path, q: LoopTable, base: int | None = None) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_loop(q, base))
