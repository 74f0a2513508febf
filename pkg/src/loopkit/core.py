"""Finite loops stored as normalized Cayley tables.

A loop of order ``n`` lives on ``{0, ..., n-1}`` with ``0`` as the identity
element: ``table[0][j] == j`` and ``table[i][0] == i``.  Every derived value
(division tables, nuclei, ...) is computed once and cached on the instance;
the table itself is a read-only numpy array, so instances are safe to share.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import (
    EntryOutOfRange,
    IdentityNotFirst,
    InternalInconsistency,
    NotASubloop,
    NotLatin,
    NotNormal,
    NotSquare,
)


class Inverses(NamedTuple):
    left: int
    right: int
    two_sided: int | None


class ElementOrder(NamedTuple):
    order: int
    locally_power_associative: bool


class Nuclei(NamedTuple):
    nl: tuple
    nm: tuple
    nr: tuple
    nlm: tuple
    nlr: tuple
    nrm: tuple
    nuc: tuple


@dataclass(frozen=True)
class Normality:
    """Outcome of a normality test; truthy iff the subloop is normal."""

    normal: bool
    witness: tuple | None = None

    def __bool__(self):
        return self.normal


def element_set(elements: Iterable[int]) -> tuple:
    """Sorted, duplicate-free tuple: the canonical ElementSet value."""
    return tuple(sorted({int(x) for x in elements}))


def _check_latin(t: np.ndarray) -> None:
    n = t.shape[0]
    for axis, label in ((1, "row"), (0, "column")):
        lines = t if axis == 1 else t.T
        for i, line in enumerate(lines):
            counts = np.bincount(line, minlength=n)
            if counts.max() > 1:
                raise NotLatin((label, i), int(np.argmax(counts)))


class LoopTable:
    """An immutable finite loop with identity element 0."""

    def __init__(self, table, name: str | None = None, base: int = 0):
        t = np.array(table, dtype=np.int64)
        if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
            raise NotSquare(f"table must be a non-empty square grid, got shape {t.shape}")
        n = t.shape[0]
        if t.min() < 0 or t.max() >= n:
            raise EntryOutOfRange(f"entries must lie in 0..{n - 1}")
        _check_latin(t)
        ar = np.arange(n)
        if not (np.array_equal(t[0], ar) and np.array_equal(t[:, 0], ar)):
            raise IdentityNotFirst("row 0 and column 0 must be the identity pattern")
        t.setflags(write=False)
        self.table = t
        self.n = n
        self.name = name
        # display hint for serialization only; not part of equality
        self.base = base

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], base: int = 0,
                  name: str | None = None, relabel: bool = False) -> "LoopTable":
        """Validate an integer grid whose symbols are ``base .. base+n-1``.

        With ``relabel=True`` a table whose identity element is not the
        first symbol is conjugated by the transposition moving it to 0.
        """
        rows = [list(r) for r in rows]
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise NotSquare("grid is not square")
        for i, r in enumerate(rows):
            for j, v in enumerate(r):
                if not isinstance(v, (int, np.integer)) or not base <= v < base + n:
                    raise EntryOutOfRange(f"entry {v!r} at ({i}, {j}) outside {base}..{base + n - 1}")
        t = np.array(rows, dtype=np.int64) - base
        if relabel:
            _check_latin(t)
            ar = np.arange(n)
            ids = [e for e in range(n) if np.array_equal(t[e], ar) and np.array_equal(t[:, e], ar)]
            if not ids:
                raise IdentityNotFirst("table has no two-sided identity element")
            e = ids[0]
            if e != 0:
                p = ar.copy()
                p[0], p[e] = e, 0
                t = p[t[np.ix_(p, p)]]
        return cls(t, name=name, base=base)

    # -- basics -----------------------------------------------------------

    def __len__(self):
        return self.n

    def __eq__(self, other):
        return isinstance(other, LoopTable) and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash(self.table.tobytes())

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<LoopTable{label} order={self.n}>"

    def rows(self) -> list:
        return self.table.tolist()

    def key(self) -> tuple:
        """Flat tuple of entries; the lexicographic order used everywhere."""
        return tuple(self.table.ravel().tolist())

    @cached_property
    def ldiv_table(self) -> np.ndarray:
        # ld[a, b] = a\b, the x with a*x = b
        t = self.table
        ld = np.empty_like(t)
        rows = np.arange(self.n)[:, None]
        ld[rows, t] = np.arange(self.n)[None, :]
        ld.setflags(write=False)
        return ld

    @cached_property
    def rdiv_table(self) -> np.ndarray:
        # rd[b, a] = b/a, the y with y*a = b
        t = self.table
        rd = np.empty_like(t)
        cols = np.arange(self.n)[None, :]
        rd[t, cols] = np.arange(self.n)[:, None]
        rd.setflags(write=False)
        return rd

    @cached_property
    def left_inverses(self) -> np.ndarray:
        """x -> e/x for every x (the map lambda)."""
        return self.rdiv_table[0]

    @cached_property
    def right_inverses(self) -> np.ndarray:
        """x -> x\\e for every x (the map rho)."""
        return self.ldiv_table[:, 0]

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def ldiv(self, a: int, b: int) -> int:
        return int(self.ldiv_table[a, b])

    def rdiv(self, b: int, a: int) -> int:
        return int(self.rdiv_table[b, a])

    def left_inv(self, a: int) -> int:
        return int(self.left_inverses[a])

    def right_inv(self, a: int) -> int:
        return int(self.right_inverses[a])

    def inverses(self, a: int) -> Inverses:
        left, right = self.left_inv(a), self.right_inv(a)
        return Inverses(left, right, left if left == right else None)

    def has_two_sided_inverses(self) -> bool:
        return bool(np.array_equal(self.left_inverses, self.right_inverses))

    def square(self, a: int) -> int:
        return int(self.table[a, a])

    @cached_property
    def squares(self) -> tuple:
        return element_set(np.diagonal(self.table))

    # -- powers -----------------------------------------------------------

    def _orbit_of_identity(self, a: int) -> list:
        orbit = [0]
        x = int(self.table[a, 0])
        while x != 0:
            orbit.append(x)
            x = int(self.table[a, x])
        return orbit

    def power(self, a: int, k: int) -> int:
        """``L_a^k(e)``; negative exponents iterate the inverse of ``L_a``."""
        orbit = self._orbit_of_identity(a)
        return orbit[k % len(orbit)]

    def element_order(self, a: int) -> ElementOrder:
        k = len(self._orbit_of_identity(a))
        sub = self.generated_subloop([a])
        return ElementOrder(k, self.induced(sub).is_associative())

    def associator(self, x: int, y: int, z: int) -> int:
        t = self.table
        return self.ldiv(int(t[x, t[y, z]]), int(t[t[x, y], z]))

    # -- whole-table predicates --------------------------------------------

    @cached_property
    def _assoc_cube(self) -> np.ndarray:
        # cube[x, y, z] is True iff (xy)z == x(yz)
        t = self.table
        return t[t] == t[:, t]

    def is_associative(self) -> bool:
        return bool(self._assoc_cube.all())

    def is_commutative(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    # -- derived loops ----------------------------------------------------

    def opposite(self) -> "LoopTable":
        name = f"{self.name}^op" if self.name else None
        return LoopTable(self.table.T, name=name)

    def direct_product(self, other: "LoopTable") -> "LoopTable":
        return direct_product(self, other)

    def induced(self, elements: Iterable[int]) -> "LoopTable":
        """The subloop on ``elements`` relabeled ``0..k-1`` in ascending order."""
        s = np.array(element_set(elements), dtype=np.int64)
        if len(s) == 0 or s[0] != 0:
            raise NotASubloop("subloop must contain the identity")
        index = np.full(self.n, -1, dtype=np.int64)
        index[s] = np.arange(len(s))
        sub = index[self.table[np.ix_(s, s)]]
        if (sub < 0).any():
            raise NotASubloop(f"{tuple(s.tolist())} is not closed under multiplication")
        return LoopTable(sub)

    def relabel(self, perm: Sequence[int]) -> "LoopTable":
        """Isomorphic copy where old element ``x`` becomes ``perm[x]``."""
        p = np.asarray(perm, dtype=np.int64)
        inv = np.empty_like(p)
        inv[p] = np.arange(self.n)
        return LoopTable(p[self.table[np.ix_(inv, inv)]])

    # -- subloops ---------------------------------------------------------

    def generated_subloop(self, elements: Iterable[int]) -> tuple:
        members = np.zeros(self.n, dtype=bool)
        members[0] = True
        for x in elements:
            members[int(x)] = True
        tables = (self.table, self.ldiv_table, self.rdiv_table)
        while True:
            s = np.flatnonzero(members)
            grid = np.ix_(s, s)
            grown = members.copy()
            for t in tables:
                grown[t[grid].ravel()] = True
            if grown.sum() == members.sum():
                return tuple(s.tolist())
            members = grown

    def is_subloop(self, elements: Iterable[int]) -> bool:
        s = element_set(elements)
        if not s or s[0] != 0:
            return False
        members = np.zeros(self.n, dtype=bool)
        members[list(s)] = True
        grid = np.ix_(s, s)
        return all(members[t[grid]].all() for t in (self.table, self.ldiv_table, self.rdiv_table))

    @cached_property
    def subloops(self) -> tuple:
        """Every subloop, as ElementSets sorted by (size, elements)."""
        found = {(0,)}
        frontier = [(0,)]
        while frontier:
            nxt = []
            for s in frontier:
                for x in range(self.n):
                    if x not in s:
                        t = self.generated_subloop(s + (x,))
                        if t not in found:
                            found.add(t)
                            nxt.append(t)
            frontier = nxt
        return tuple(sorted(found, key=lambda s: (len(s), s)))

    # -- nuclei, commutant, center ------------------------------------------

    def nuclei(self) -> Nuclei:
        return self._nuclei

    @cached_property
    def _nuclei(self) -> Nuclei:
        cube = self._assoc_cube
        nl = set(np.flatnonzero(cube.all(axis=(1, 2))).tolist())
        nm = set(np.flatnonzero(cube.all(axis=(0, 2))).tolist())
        nr = set(np.flatnonzero(cube.all(axis=(0, 1))).tolist())
        return Nuclei(
            element_set(nl), element_set(nm), element_set(nr),
            element_set(nl & nm), element_set(nl & nr), element_set(nr & nm),
            element_set(nl & nm & nr),
        )

    @cached_property
    def commutant(self) -> tuple:
        t = self.table
        return element_set(np.flatnonzero((t == t.T).all(axis=1)).tolist())

    @cached_property
    def center(self) -> tuple:
        c = set(self.commutant)
        nuc = self._nuclei
        z = element_set(c & set(nuc.nuc))
        for pair in (nuc.nlm, nuc.nlr, nuc.nrm):
            if element_set(c & set(pair)) != z:
                raise InternalInconsistency("C(Q) meets the pairwise nuclei in different sets")
        return z

    def commutant_and_center(self) -> tuple:
        return self.commutant, self.center

    # -- normality and quotients ----------------------------------------------

    def _coset_classes(self, s: tuple):
        """Label each element with the index of its left coset ``xS``.

        Returns ``(labels, None)`` or ``(None, witness)`` when two cosets
        overlap without being equal.
        """
        labels = np.full(self.n, -1, dtype=np.int64)
        owner = {}
        count = 0
        for x in range(self.n):
            if labels[x] >= 0:
                continue
            coset = self.table[x, list(s)]
            taken = labels[coset]
            if (taken >= 0).any():
                y = int(coset[np.argmax(taken >= 0)])
                return None, ("overlapping cosets", x, owner[int(labels[y])])
            labels[coset] = count
            owner[count] = x
            count += 1
        return labels, None

    def is_normal(self, elements: Iterable[int]) -> Normality:
        """Congruence test: are the left cosets of S the classes of a congruence?"""
        s = element_set(elements)
        if not self.is_subloop(s):
            raise NotASubloop(f"{s} is not a subloop")
        labels, witness = self._coset_classes(s)
        if labels is None:
            return Normality(False, witness)
        reps = np.array([int(np.argmax(labels == c)) for c in range(labels.max() + 1)])
        ra = reps[labels]
        for op, t in (("*", self.table), ("\\", self.ldiv_table), ("/", self.rdiv_table)):
            got = labels[t]
            want = labels[t[np.ix_(ra, ra)]]
            bad = np.argwhere(got != want)
            if len(bad):
                a, b = (int(v) for v in bad[0])
                return Normality(False, (op, a, b))
        return Normality(True)

    @cached_property
    def normal_subloops(self) -> tuple:
        return tuple(s for s in self.subloops if self.is_normal(s))

    def is_simple(self) -> bool:
        return len(self.normal_subloops) <= 2

    def quotient(self, elements: Iterable[int]):
        """Return ``(Q/N, projection)`` where ``projection[x]`` is the coset index."""
        s = element_set(elements)
        verdict = self.is_normal(s)
        if not verdict:
            raise NotNormal(verdict.witness)
        labels, _ = self._coset_classes(s)
        reps = np.array([int(np.argmax(labels == c)) for c in range(labels.max() + 1)])
        q = labels[self.table[np.ix_(reps, reps)]]
        name = f"{self.name}/N" if self.name else None
        return LoopTable(q, name=name), labels.copy()

    # -- isomorphism ------------------------------------------------------------

    @cached_property
    def _generation_recipe(self):
        """Greedy generators plus a product recipe reaching every element.

        Steps are ``("gen", g)`` or ``("mul", a, b, c)`` meaning ``c = a*b``;
        ``stages[i]`` is the number of steps after generator ``i`` closed.
        """
        t = self.table
        known = [0]
        seen = {0}
        steps, stages, gens = [], [], []
        for g in range(self.n):
            if g in seen:
                continue
            gens.append(g)
            steps.append(("gen", g))
            known.append(g)
            seen.add(g)
            grew = True
            while grew:
                grew = False
                for a, b in itertools.product(list(known), repeat=2):
                    c = int(t[a, b])
                    if c not in seen:
                        seen.add(c)
                        known.append(c)
                        steps.append(("mul", a, b, c))
                        grew = True
            stages.append((len(steps), tuple(sorted(seen))))
        return gens, steps, stages


def direct_product(p: LoopTable, q: LoopTable) -> LoopTable:
    """Componentwise product; pair ``(a, b)`` is element ``a*|Q| + b``."""
    m = q.n
    pt = p.table[:, None, :, None]
    qt = q.table[None, :, None, :]
    t = (pt * m + qt).reshape(p.n * m, p.n * m)
    name = f"{p.name}x{q.name}" if p.name and q.name else None
    return LoopTable(t, name=name)


def is_isomorphism(p: LoopTable, q: LoopTable, phi: Sequence[int]) -> bool:
    f = np.asarray(phi, dtype=np.int64)
    if p.n != q.n or len(f) != p.n or f[0] != 0 or len(set(f.tolist())) != p.n:
        return False
    return bool(np.array_equal(f[p.table], q.table[np.ix_(f, f)]))


def find_isomorphism(p: LoopTable, q: LoopTable):
    """A bijection ``phi`` (tuple) with ``phi(ab) = phi(a)phi(b)``, or None.

    Backtracks over images of a greedy generating set of ``p``, extending
    the map through a product recipe and checking it on each generated
    subloop before choosing the next generator's image.
    """
    if p.n != q.n:
        return None
    if p.n == 1:
        return (0,)
    gens, steps, stages = p._generation_recipe
    p_orders = [len(p._orbit_of_identity(x)) for x in range(p.n)]
    q_orders = [len(q._orbit_of_identity(x)) for x in range(q.n)]
    qt = q.table

    def extend(phi, used, stage):
        if stage == len(gens):
            return tuple(phi)
        start = stages[stage - 1][0] if stage else 0
        end, members = stages[stage]
        g = gens[stage]
        for image in range(1, q.n):
            if used[image] or q_orders[image] != p_orders[g]:
                continue
            phi2, used2 = list(phi), list(used)
            ok = True
            for step in steps[start:end]:
                if step[0] == "gen":
                    c, v = step[1], image
                else:
                    _, a, b, c = step
                    v = int(qt[phi2[a], phi2[b]])
                if used2[v]:
                    ok = False
                    break
                phi2[c] = v
                used2[v] = True
            if not ok:
                continue
            m = np.array(members)
            f = np.array(phi2)
            if not np.array_equal(f[p.table[np.ix_(m, m)]], qt[np.ix_(f[m], f[m])]):
                continue
            found = extend(phi2, used2, stage + 1)
            if found is not None:
                return found
        return None

    phi = [-1] * p.n
    phi[0] = 0
    used = [False] * q.n
    used[0] = True
    return extend(phi, used, 0)


# -- small families used as test material ---------------------------------------

def cyclic_group(n: int) -> LoopTable:
    ar = np.arange(n)
    return LoopTable((ar[:, None] + ar[None, :]) % n, name=f"Z{n}")


def dihedral_group(m: int) -> LoopTable:
    """Dihedral group of order ``2m``; ``r^i s^j`` is element ``i + m*j``."""
    t = np.empty((2 * m, 2 * m), dtype=np.int64)
    for x in range(2 * m):
        a, b = x % m, x // m
        for y in range(2 * m):
            c, d = y % m, y // m
            i = (a + (c if b == 0 else -c)) % m
            t[x, y] = i + m * ((b + d) % 2)
    return LoopTable(t, name=f"D{2 * m}")
