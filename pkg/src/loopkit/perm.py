"""Permutations of loop elements, translations and multiplication groups.

Permutations act on the left: ``(p * q)(x) == p(q(x))``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .core import LoopTable, element_set
from .errors import DegreeMismatch, LoopError, PreconditionViolated


class Perm:
    __slots__ = ("images",)

    def __init__(self, images: Iterable[int]):
        if isinstance(images, np.ndarray):
            images = tuple(images.tolist())
        else:
            images = tuple(int(x) for x in images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation: {images}")
        self.images = images

    @classmethod
    def _trusted(cls, images: tuple) -> "Perm":
        # skips validation; only for results of composing valid permutations
        p = object.__new__(cls)
        p.images = images
        return p

    @classmethod
    def identity(cls, n: int) -> "Perm":
        return cls(range(n))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: "Perm") -> "Perm":
        if self.degree != other.degree:
            raise DegreeMismatch(f"degrees {self.degree} and {other.degree}")
        img = self.images
        return Perm._trusted(tuple([img[x] for x in other.images]))

    def inverse(self) -> "Perm":
        inv = [0] * self.degree
        for x, y in enumerate(self.images):
            inv[y] = x
        return Perm._trusted(tuple(inv))

    def __pow__(self, k: int) -> "Perm":
        base = self if k >= 0 else self.inverse()
        out = Perm.identity(self.degree)
        for _ in range(abs(k)):
            out = base * out
        return out

    def is_identity(self) -> bool:
        return all(x == y for x, y in enumerate(self.images))

    def fixes(self, x: int) -> bool:
        return self.images[x] == x

    def __eq__(self, other):
        return isinstance(other, Perm) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return f"Perm({list(self.images)})"

    def cycles(self) -> str:
        seen, out = set(), []
        for start in range(self.degree):
            if start in seen or self.images[start] == start:
                continue
            cyc = [start]
            seen.add(start)
            x = self.images[start]
            while x != start:
                cyc.append(x)
                seen.add(x)
                x = self.images[x]
            out.append("(" + " ".join(map(str, cyc)) + ")")
        return "".join(out) or "()"


@dataclass(frozen=True)
class GenSet:
    """A labelled generating set (Lmlt, Rmlt, Mlt, Inn, or a section)."""

    label: str
    perms: tuple

    def __len__(self):
        return len(self.perms)

    def __iter__(self):
        return iter(self.perms)


def translation(q: LoopTable, a: int, side: str = "left") -> Perm:
    if side == "left":
        return Perm(q.table[a])
    if side == "right":
        return Perm(q.table[:, a])
    raise ValueError("side must be 'left' or 'right'")


def L(q: LoopTable, a: int) -> Perm:
    return translation(q, a, "left")


def R(q: LoopTable, a: int) -> Perm:
    return translation(q, a, "right")


def lambda_map(q: LoopTable) -> Perm:
    """x -> x^l (left inverse)."""
    return Perm(q.left_inverses)


def rho_map(q: LoopTable) -> Perm:
    """x -> x^r (right inverse)."""
    return Perm(q.right_inverses)


def is_autotopism(q: LoopTable, alpha: Perm, beta: Perm, gamma: Perm) -> bool:
    """alpha(x)*beta(y) == gamma(x*y) for all x, y."""
    for p in (alpha, beta, gamma):
        if p.degree != q.n:
            raise DegreeMismatch(f"permutation of degree {p.degree} on a loop of order {q.n}")
    a = np.array(alpha.images)
    b = np.array(beta.images)
    g = np.array(gamma.images)
    return bool(np.array_equal(q.table[np.ix_(a, b)], g[q.table]))


def isostrophe_atp_transfer(q: LoopTable, alpha: Perm, beta: Perm, gamma: Perm):
    """Map a triple for the principal right isostrophe of ``q`` to one for ``q``.

    ``(alpha, beta, gamma)`` is an autotopism of the isostrophe iff the
    returned ``(gamma, rho*beta*lambda, alpha)`` is an autotopism of ``q``.
    """
    for p in (alpha, beta, gamma):
        if p.degree != q.n:
            raise DegreeMismatch(f"permutation of degree {p.degree} on a loop of order {q.n}")
    return gamma, rho_map(q) * beta * lambda_map(q), alpha


def left_section(q: LoopTable, elements: Iterable[int]) -> GenSet:
    return GenSet("SectionOfSubloop", tuple(L(q, a) for a in element_set(elements)))


def lmlt_generators(q: LoopTable) -> GenSet:
    return GenSet("Lmlt", tuple(L(q, a) for a in range(1, q.n)))


def rmlt_generators(q: LoopTable) -> GenSet:
    return GenSet("Rmlt", tuple(R(q, a) for a in range(1, q.n)))


def mlt_generators(q: LoopTable) -> GenSet:
    return GenSet("Mlt", lmlt_generators(q).perms + rmlt_generators(q).perms)


def _transversal(gens: Sequence[Perm], n: int) -> dict:
    """BFS from 0: point -> a group element carrying 0 to it."""
    trans = {0: Perm.identity(n)}
    queue = [0]
    for x in queue:
        for g in gens:
            y = g(x)
            if y not in trans:
                trans[y] = g * trans[x]
                queue.append(y)
    return trans


def schreier_generators(gens: Sequence[Perm], n: int, point: int = 0) -> list:
    """Generators of the stabilizer of ``point`` in the group ``<gens>``."""
    trans = _transversal(gens, n) if point == 0 else None
    if trans is None:
        raise ValueError("only the stabilizer of 0 is supported")
    out, seen = [], set()
    for x in sorted(trans):
        for g in gens:
            s = trans[g(x)].inverse() * g * trans[x]
            if not s.is_identity() and s not in seen:
                seen.add(s)
                out.append(s)
    return out


def inner_generators(q: LoopTable) -> GenSet:
    return GenSet("Inn", tuple(schreier_generators(mlt_generators(q).perms, q.n)))


def is_inner_invariant(q: LoopTable, elements: Iterable[int], gens: GenSet | None = None) -> bool:
    s = set(element_set(elements))
    gens = inner_generators(q) if gens is None else gens
    return all(g(x) in s for g in gens for x in s)


@dataclass(frozen=True)
class SectionNormality:
    normal: bool
    witness: tuple | None = None

    def __bool__(self):
        return self.normal


def section_normal_in_mlt(q: LoopTable, elements: Iterable[int]) -> SectionNormality:
    """Is ``{L_a : a in N}`` normalized by every generator of Mlt(Q)?

    Requires ``N`` inside the left nucleus, which makes the section a group.
    Failure witness: ``(generator label, a)`` with ``g L_a g^-1`` outside it.
    """
    n_set = element_set(elements)
    if not set(n_set) <= set(q.nuclei().nl):
        raise PreconditionViolated("N is not contained in the left nucleus")
    members = set(n_set)
    sections = {a: L(q, a) for a in n_set}
    for side, gens in (("L", lmlt_generators(q)), ("R", rmlt_generators(q))):
        for x, g in enumerate(gens, start=1):
            g_inv = g.inverse()
            for a in n_set:
                c = g * sections[a] * g_inv
                b = c(0)
                if b not in members or c != sections[b]:
                    return SectionNormality(False, (f"{side}_{x}", a))
    return SectionNormality(True)


class ClosureCapExceeded(LoopError, RuntimeError):
    pass


def closure(gens: Iterable[Perm], cap: int = 10**7) -> set:
    """All products of ``gens``; diagnostics only, stops past ``cap`` elements."""
    gens = list(gens)
    if not gens:
        return set()
    ident = Perm.identity(gens[0].degree)
    group = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                p = g * h
                if p not in group:
                    group.add(p)
                    if len(group) > cap:
                        raise ClosureCapExceeded(f"group exceeds {cap} elements")
                    nxt.append(p)
        frontier = nxt
    return group
