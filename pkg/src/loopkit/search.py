"""Backtracking Latin-square model finder for loops.

Cells of the normalized table (identity row and column prefilled) are
filled in row-major order with values tried in ascending order.  Each
assignment updates row/column masks and fails as soon as some open cell in
the same row or column has no candidate left.

Required identities are checked incrementally.  Every instance (one
assignment of the identity's variables) is evaluated against the partial
table and parked on the first unknown it meets: a cell for a product, or a
(row, value) / (column, value) pair for a division or one-sided inverse,
since ``a\\b`` is known as soon as ``b`` appears in row ``a``.  When that
unknown gets filled the instance is re-evaluated.  An instance whose two
sides are both known and differ kills the branch.

Forbidden identities and point constraints are existential, so they are
only evaluated on complete tables.
"""

from __future__ import annotations

import itertools
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterator

import numpy as np

from .core import LoopTable
from .errors import InternalInconsistency, LoopError
from .identity import E, Identity, LDiv, LInv, Mul, RDiv, RInv, TwoInv, Var, check, resolve
from .loopfile import ParseError

SATISFIED = -1
VIOLATED = -2


# -- specs ----------------------------------------------------------------------

def _one_sided_inverse(q):
    return not q.has_two_sided_inverses()


POINT_PREDICATES: dict = {
    "one_sided_inverse": _one_sided_inverse,
    "nonassociative": lambda q: not q.is_associative(),
    "noncommutative": lambda q: not q.is_commutative(),
    "two_sided_inverses": lambda q: q.has_two_sided_inverses(),
}


@dataclass
class SearchSpec:
    order: int
    required: list = field(default_factory=list)
    forbidden: list = field(default_factory=list)
    points: list = field(default_factory=list)
    max_nodes: int | None = None
    max_seconds: float | None = None
    max_solutions: int | None = None

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("order must be at least 1")
        for label in ("max_nodes", "max_seconds", "max_solutions"):
            v = getattr(self, label)
            if v is not None and v <= 0:
                raise ValueError(f"{label} must be positive")
        self.required = [resolve(x) if isinstance(x, str) else x for x in self.required]
        self.forbidden = [resolve(x) if isinstance(x, str) else x for x in self.forbidden]
        for name in self.points:
            if name not in POINT_PREDICATES:
                raise ValueError(f"unknown point predicate {name!r}; known: {sorted(POINT_PREDICATES)}")


def parse_spec(text: str) -> SearchSpec:
    """Parse the line-oriented spec format (``order``, ``require``, ...)."""
    kw = {"required": [], "forbidden": [], "points": []}
    order = None
    for k, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        try:
            if head == "order":
                order = int(rest)
            elif head == "require":
                kw["required"].append(resolve(rest))
            elif head == "forbid":
                kw["forbidden"].append(resolve(rest))
            elif head == "point":
                if rest not in POINT_PREDICATES:
                    raise ValueError(f"unknown point predicate {rest!r}")
                kw["points"].append(rest)
            elif head == "limit":
                what, _, amount = rest.partition(" ")
                key = {"nodes": "max_nodes", "seconds": "max_seconds",
                       "solutions": "max_solutions"}.get(what)
                if key is None:
                    raise ValueError(f"unknown limit {what!r}")
                kw[key] = float(amount) if key == "max_seconds" else int(amount)
            else:
                raise ValueError(f"unknown directive {head!r}")
        except (ValueError, LoopError) as ex:
            raise ParseError(k, str(ex)) from None
    if order is None:
        raise ParseError(1, "missing 'order N'")
    try:
        return SearchSpec(order, **kw)
    except ValueError as ex:
        raise ParseError(1, str(ex)) from None


# -- results --------------------------------------------------------------------

@dataclass
class SearchStats:
    nodes: int = 0
    complete_tables: int = 0
    solutions: int = 0
    rejected_forbidden: int = 0
    rejected_points: int = 0
    seconds: float = 0.0

    def summary(self) -> str:
        return (f"nodes={self.nodes} complete={self.complete_tables} solutions={self.solutions} "
                f"rejected_forbidden={self.rejected_forbidden} rejected_points={self.rejected_points}")


class SearchError(LoopError):
    def __init__(self, message, stats):
        self.stats = stats
        super().__init__(f"{message} ({stats.summary()})")


class BudgetExhausted(SearchError):
    pass


class Unsatisfiable(SearchError):
    pass


# -- compiled identity instances ----------------------------------------------------

def _compile(identity: Identity, n: int) -> Callable:
    """Generate ``f(T, RP, CP, *values)`` returning SATISFIED, VIOLATED or a key.

    Keys: ``i*n+j`` for cell (i, j); ``n*n + i*n+v`` for "where is v in row
    i"; ``2*n*n + j*n+v`` for "where is v in column j".
    """
    nn = n * n
    names = {v: f"v{k}" for k, v in enumerate(identity.vars)}
    body = []
    counter = itertools.count()

    def emit(t):
        if isinstance(t, Var):
            return names[t.name]
        if isinstance(t, E):
            return "0"
        tmp = f"t{next(counter)}"
        if isinstance(t, Mul):
            a, b = emit(t.left), emit(t.right)
            body.append(f"k = {a}*{n}+{b}")
            body.append(f"{tmp} = T[k]")
            body.append(f"if {tmp} < 0: return k")
        elif isinstance(t, LDiv):
            a, b = emit(t.left), emit(t.right)
            body.append(f"k = {a}*{n}+{b}")
            body.append(f"{tmp} = RP[k]")
            body.append(f"if {tmp} < 0: return {nn}+k")
        elif isinstance(t, RDiv):
            a, b = emit(t.left), emit(t.right)
            body.append(f"k = {b}*{n}+{a}")
            body.append(f"{tmp} = CP[k]")
            body.append(f"if {tmp} < 0: return {2 * nn}+k")
        elif isinstance(t, LInv):
            a = emit(t.arg)
            body.append(f"{tmp} = CP[{a}*{n}]")
            body.append(f"if {tmp} < 0: return {2 * nn}+{a}*{n}")
        elif isinstance(t, RInv):
            a = emit(t.arg)
            body.append(f"{tmp} = RP[{a}*{n}]")
            body.append(f"if {tmp} < 0: return {nn}+{a}*{n}")
        elif isinstance(t, TwoInv):
            a = emit(t.arg)
            body.append(f"{tmp} = CP[{a}*{n}]")
            body.append(f"if {tmp} < 0: return {2 * nn}+{a}*{n}")
            body.append(f"r = RP[{a}*{n}]")
            body.append(f"if r < 0: return {nn}+{a}*{n}")
            body.append(f"if r != {tmp}: return {VIOLATED}")
        else:
            raise TypeError(f"unknown term {t!r}")
        return tmp

    lhs = emit(identity.lhs)
    rhs = emit(identity.rhs)
    body.append(f"return {SATISFIED} if {lhs} == {rhs} else {VIOLATED}")
    params = "".join(f", {names[v]}" for v in identity.vars)
    src = f"def f(T, RP, CP{params}):\n" + "\n".join("    " + line for line in body) + "\n"
    scope: dict = {}
    exec(compile(src, f"<identity {identity}>", "exec"), scope)
    return scope["f"]


class _Engine:
    """One depth-first search over normalized tables of a fixed order."""

    def __init__(self, spec: SearchSpec, prefix=()):
        n = self.n = spec.order
        self.spec = spec
        self.prefix = list(prefix)
        nn = n * n
        self.T = [-1] * nn
        self.RP = [-1] * nn
        self.CP = [-1] * nn
        self.rowused = [0] * n
        self.colused = [0] * n
        self.watch = [[] for _ in range(3 * nn)]
        self.trail = []
        self.stats = SearchStats()
        self.full = (1 << n) - 1
        self.cells = [i * n + j for i in range(1, n) for j in range(1, n)]
        self.conflict = False
        for x in range(n):
            self._place(x, 0, x)
            if x:
                self._place(0, x, x)
        for ident in spec.required:
            f = _compile(ident, n)
            for args in itertools.product(range(n), repeat=ident.arity):
                r = f(self.T, self.RP, self.CP, *args)
                if r == VIOLATED:
                    self.conflict = True
                elif r != SATISFIED:
                    self.watch[r].append((f, args))

    def _place(self, i, j, v):
        n = self.n
        self.T[i * n + j] = v
        self.RP[i * n + v] = j
        self.CP[j * n + v] = i
        self.rowused[i] |= 1 << v
        self.colused[j] |= 1 << v

    def _assign(self, c, i, j, v, bit) -> bool:
        n = self.n
        T, RP, CP = self.T, self.RP, self.CP
        rowused, colused = self.rowused, self.colused
        T[c] = v
        RP[i * n + v] = j
        CP[j * n + v] = i
        rowused[i] |= bit
        colused[j] |= bit
        full = self.full
        ru = rowused[i]
        for jj in range(j + 1, n):
            if not full & ~(ru | colused[jj]):
                return False
        cu = colused[j]
        for ii in range(i + 1, n):
            if not full & ~(rowused[ii] | cu):
                return False
        watch, trail = self.watch, self.trail
        nn = n * n
        for key in (c, nn + i * n + v, 2 * nn + j * n + v):
            for f, args in watch[key]:
                r = f(T, RP, CP, *args)
                if r == SATISFIED:
                    continue
                if r == VIOLATED:
                    return False
                watch[r].append((f, args))
                trail.append(r)
        return True

    def _undo(self, c, i, j, v, bit, mark):
        n = self.n
        watch, trail = self.watch, self.trail
        while len(trail) > mark:
            watch[trail.pop()].pop()
        self.T[c] = -1
        self.RP[i * n + v] = -1
        self.CP[j * n + v] = -1
        self.rowused[i] &= ~bit
        self.colused[j] &= ~bit

    def tables(self) -> Iterator[list]:
        """Complete tables satisfying the required identities, in lex order."""
        if self.conflict:
            return
        spec = self.spec
        max_nodes = spec.max_nodes
        deadline = None if spec.max_seconds is None else time.monotonic() + spec.max_seconds
        start = time.monotonic()
        n = self.n
        cells = self.cells
        ncells = len(cells)
        stats = self.stats
        fixed = dict(self.prefix)

        def dfs(pos):
            if pos == ncells:
                stats.complete_tables += 1
                yield list(self.T)
                return
            c = cells[pos]
            i, j = divmod(c, n)
            avail = self.full & ~(self.rowused[i] | self.colused[j])
            if c in fixed:
                avail &= 1 << fixed[c]
            while avail:
                bit = avail & -avail
                avail ^= bit
                v = bit.bit_length() - 1
                stats.nodes += 1
                if max_nodes is not None and stats.nodes > max_nodes:
                    stats.seconds = time.monotonic() - start
                    raise BudgetExhausted("node budget exhausted", stats)
                if deadline is not None and not stats.nodes & 1023 and time.monotonic() > deadline:
                    stats.seconds = time.monotonic() - start
                    raise BudgetExhausted("time budget exhausted", stats)
                mark = len(self.trail)
                if self._assign(c, i, j, v, bit):
                    yield from dfs(pos + 1)
                self._undo(c, i, j, v, bit, mark)

        if ncells == 0:
            stats.complete_tables += 1
            yield list(self.T)
        else:
            yield from dfs(0)
        stats.seconds = time.monotonic() - start


def _accept(spec: SearchSpec, flat: list, stats: SearchStats):
    """Validate a complete table; return it as a LoopTable or None if rejected."""
    n = spec.order
    q = LoopTable(np.array(flat, dtype=np.int64).reshape(n, n))
    for ident in spec.required:
        if not check(q, ident).holds:
            raise InternalInconsistency(f"search emitted a table violating {ident}")
    if any(check(q, ident).holds for ident in spec.forbidden):
        stats.rejected_forbidden += 1
        return None
    if not all(POINT_PREDICATES[name](q) for name in spec.points):
        stats.rejected_points += 1
        return None
    stats.solutions += 1
    return q


def _solutions(spec: SearchSpec, prefix=()) -> Iterator[tuple]:
    engine = _Engine(spec, prefix)
    for flat in engine.tables():
        q = _accept(spec, flat, engine.stats)
        if q is not None:
            yield q, engine.stats
            if spec.max_solutions is not None and engine.stats.solutions >= spec.max_solutions:
                return


def find_one(spec: SearchSpec):
    """First solution in search order, as ``(LoopTable, SearchStats)``."""
    engine = _Engine(spec)
    for flat in engine.tables():
        q = _accept(spec, flat, engine.stats)
        if q is not None:
            return q, engine.stats
    raise Unsatisfiable("search space exhausted", engine.stats)


# -- canonical forms ----------------------------------------------------------------

@lru_cache(maxsize=16)
def _relabelings(n: int):
    perms = np.array([(0,) + p for p in itertools.permutations(range(1, n))], dtype=np.int64)
    inv = np.empty_like(perms)
    rows = np.arange(len(perms))[:, None]
    inv[rows, perms] = np.arange(n)[None, :]
    return perms, inv


def canonical_form(q: LoopTable) -> LoopTable:
    """Lexicographically least table over all relabelings fixing 0."""
    if q.n > 8:
        raise ValueError("canonical forms are limited to order 8")
    perms, inv = _relabelings(q.n)
    t = q.table
    relabeled = t[inv[:, :, None], inv[:, None, :]]
    relabeled = perms[np.arange(len(perms))[:, None, None], relabeled].reshape(len(perms), -1)
    alive = np.arange(len(perms))
    for col in range(relabeled.shape[1]):
        vals = relabeled[alive, col]
        alive = alive[vals == vals.min()]
        if len(alive) == 1:
            break
    return LoopTable(relabeled[alive[0]].reshape(q.n, q.n))


# -- enumeration ------------------------------------------------------------------

def _branch_prefixes(n: int) -> list:
    """Partition of the search tree at its first open cell (1, 1)."""
    if n < 2:
        return [()]
    return [((n + 1, v),) for v in range(n) if v != 1]


def _collect_branch(args):
    spec, prefix = args
    return [q.key() for q, _ in _solutions(spec, prefix)]


def enumerate_loops(spec: SearchSpec, dedup: str = "none", workers: int = 1) -> Iterator[LoopTable]:
    """All normalized tables meeting ``spec``, in lexicographic order.

    ``dedup="iso"`` keeps one canonical representative per isomorphism
    class, emitted when the class is first met.  With ``workers > 1`` the
    tree is split at the first open cell; the emitted sequence is the same.
    """
    if dedup not in ("none", "iso"):
        raise ValueError("dedup must be 'none' or 'iso'")
    if dedup == "iso" and spec.order > 8:
        raise ValueError("isomorphism dedup is limited to order 8")
    if workers > 1 and spec.order >= 3:
        n = spec.order
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = pool.map(_collect_branch, [(spec, p) for p in _branch_prefixes(n)])
            stream = (LoopTable(np.array(k).reshape(n, n)) for chunk in chunks for k in chunk)
            yield from _dedup(stream, dedup)
        return
    yield from _dedup((q for q, _ in _solutions(spec)), dedup)


def _dedup(stream, dedup):
    if dedup == "none":
        yield from stream
        return
    seen = set()
    for q in stream:
        canon = canonical_form(q)
        if canon not in seen:
            seen.add(canon)
            yield canon


def all_loops(n: int) -> list:
    """Every normalized table of order ``n`` (cell-wise backtracking)."""
    return list(enumerate_loops(SearchSpec(n)))


def rowwise_tables(n: int) -> Iterator[LoopTable]:
    """Independent generator: whole rows drawn from permutations, in lex order.

    Used only to cross-check the cell-wise search.
    """
    columns = [{j} for j in range(n)]
    rows = [list(range(n))]

    def extend(i):
        if i == n:
            yield LoopTable(rows)
            return
        for rest in itertools.permutations([x for x in range(n) if x != i]):
            row = (i,) + rest
            if any(row[j] in columns[j] for j in range(1, n)):
                continue
            for j in range(1, n):
                columns[j].add(row[j])
            rows.append(list(row))
            yield from extend(i + 1)
            rows.pop()
            for j in range(1, n):
                columns[j].discard(row[j])

    for j in range(n):
        columns[j] = {j}
    yield from extend(1)
