"""Splitting a loop with centralizing endomorphic squaring as E x O.

``E`` collects the elements whose order is a power of two and ``O`` the
elements of odd order.  For a qualifying finite loop every element ``a``
of order ``2^k * m`` (``m`` odd) factors as ``a = b*c`` with
``b = a^(j*m)`` in ``E`` and ``c = a^(i*2^k)`` in ``O``, where
``i*2^k + j*m = 1``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import LoopTable, direct_product, element_set, is_isomorphism
from .errors import InternalInconsistency, IsoVerificationFailed, PreconditionViolated
from .variety import profile


def require_centralizing_squaring(q: LoopTable) -> None:
    p = profile(q)
    if not p.squaring_endomorphic:
        raise PreconditionViolated("squaring_endomorphic")
    if not p.central_squares:
        raise PreconditionViolated("central_squares")


def _squaring_power(q: LoopTable, a: int, n: int) -> int:
    for _ in range(n):
        a = q.square(a)
    return a


def e_layers(q: LoopTable) -> list:
    """``[E_0, E_1, ...]`` up to and including the first repeated layer."""
    require_centralizing_squaring(q)
    layers = []
    k = 0
    while True:
        layer = element_set(a for a in range(q.n) if q.power(a, 2 ** k) == 0)
        by_squaring = element_set(a for a in range(q.n) if _squaring_power(q, a, k) == 0)
        if layer != by_squaring:
            raise InternalInconsistency(f"E_{k} differs between powers and iterated squaring")
        layers.append(layer)
        if len(layers) > 1 and layers[-1] == layers[-2]:
            return layers
        k += 1


def e_part(q: LoopTable) -> tuple:
    return e_layers(q)[-1]


def o_part(q: LoopTable) -> tuple:
    """Elements of odd order; checked to be a central abelian subgroup."""
    require_centralizing_squaring(q)
    odd = element_set(a for a in range(q.n) if len(q._orbit_of_identity(a)) % 2 == 1)
    if not set(odd) <= set(q.center):
        raise InternalInconsistency("odd-order elements are not central")
    if not q.is_subloop(odd) or not q.induced(odd).is_associative():
        raise InternalInconsistency("odd-order elements do not form a group")
    return odd


def _two_adic(n: int):
    k = 0
    while n % 2 == 0:
        n //= 2
        k += 1
    return k, n


def bezout(a: int, b: int):
    """``(g, i, j)`` with ``i*a + j*b == g == gcd(a, b)``."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        quo = old_r // r
        old_r, r = r, old_r - quo * r
        old_s, s = s, old_s - quo * s
        old_t, t = t, old_t - quo * t
    return old_r, old_s, old_t


def bezout_minimal(two_k: int, m: int):
    """Coefficients ``(i, j)`` with ``i*two_k + j*m == 1`` and ``|i|`` least."""
    g, i, _ = bezout(two_k, m)
    if g != 1:
        raise ValueError("coefficients must be coprime")
    # solutions are i + t*m; m is odd so the two nearest to zero never tie
    i = min(i % m, i % m - m, key=abs)
    return i, (1 - i * two_k) // m


@dataclass(frozen=True)
class Split:
    b: int
    c: int
    k: int
    m: int
    i: int
    j: int


def split_element(q: LoopTable, a: int) -> Split:
    require_centralizing_squaring(q)
    n = len(q._orbit_of_identity(a))
    k, m = _two_adic(n)
    two_k = 2 ** k
    i, j = bezout_minimal(two_k, m)
    b, c = q.power(a, j * m), q.power(a, i * two_k)
    if q.mul(b, c) != a or q.power(b, two_k) != 0 or q.power(c, m) != 0:
        raise InternalInconsistency(f"split of {a} failed: b={b}, c={c}")
    alt_b, alt_c = q.power(a, (j - two_k) * m), q.power(a, (i + m) * two_k)
    if (alt_b, alt_c) != (b, c):
        raise InternalInconsistency(f"split of {a} depends on the Bezout pair")
    return Split(b, c, k, m, i, j)


@dataclass(frozen=True)
class DecompositionResult:
    E: tuple
    O: tuple
    E_layers: list
    product: LoopTable
    iso: tuple  # iso[p*|O| + q] = E[p] * O[q]

    def pairing(self) -> list:
        """Rows ``(product index, e, o, e*o)`` of the explicit isomorphism."""
        m = len(self.O)
        return [(x, self.E[x // m], self.O[x % m], self.iso[x]) for x in range(len(self.iso))]


def decompose(q: LoopTable) -> DecompositionResult:
    require_centralizing_squaring(q)
    layers = e_layers(q)
    e, o = layers[-1], o_part(q)
    for part, label in ((e, "E"), (o, "O")):
        if not q.is_normal(part):
            raise InternalInconsistency(f"{label} is not a normal subloop")
    if set(e) & set(o) != {0}:
        raise InternalInconsistency("E and O intersect nontrivially")
    for a in range(q.n):
        s = split_element(q, a)
        if s.b not in e or s.c not in o:
            raise InternalInconsistency(f"split of {a} leaves E x O")
    product = direct_product(q.induced(e), q.induced(o))
    ea, oa = np.array(e), np.array(o)
    iso = q.table[np.repeat(ea, len(o)), np.tile(oa, len(e))]
    if not is_isomorphism(product, q, iso):
        raise IsoVerificationFailed("(b, c) -> b*c is not an isomorphism E x O -> Q")
    return DecompositionResult(e, o, layers, product, tuple(iso.tolist()))
