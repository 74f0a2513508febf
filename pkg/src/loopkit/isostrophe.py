"""Principal left and right isostrophes.

The right isostrophe multiplies by ``x o y = x / y^r`` and the left one by
``x * y = x^l \\ y``.  Both share the identity element of the original loop.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .core import LoopTable
from .errors import InternalInconsistency


def principal_isostrophe(q: LoopTable, side: str = "right") -> LoopTable:
    ar = np.arange(q.n)
    if side == "right":
        t = q.rdiv_table[ar[:, None], q.right_inverses[None, :]]
    elif side == "left":
        t = q.ldiv_table[q.left_inverses[:, None], ar[None, :]]
    else:
        raise ValueError("side must be 'left' or 'right'")
    name = f"{q.name}~{side[0]}" if q.name else None
    return LoopTable(t, name=name)


class IsostropheDivisions(NamedTuple):
    ldiv: np.ndarray
    rdiv: np.ndarray
    left_inverses: np.ndarray
    right_inverses: np.ndarray


def isostrophe_divisions(q: LoopTable) -> IsostropheDivisions:
    """Division tables of the right isostrophe, from closed formulas.

    ``x \\\\ y = (y\\x)^l`` and ``x // y = x*y^r``; the result is compared
    against the divisions of the materialized isostrophe table.
    """
    iso = principal_isostrophe(q, "right")
    ldiv = q.left_inverses[q.ldiv_table.T]
    rdiv = q.table[:, q.right_inverses]
    if not (np.array_equal(ldiv, iso.ldiv_table) and np.array_equal(rdiv, iso.rdiv_table)):
        raise InternalInconsistency("isostrophe division formulas disagree with its table")
    linv, rinv = rdiv[0], ldiv[:, 0]
    if not (np.array_equal(linv, q.right_inverses) and np.array_equal(rinv, q.left_inverses)):
        raise InternalInconsistency("isostrophe inverses are not the swapped inverses of Q")
    return IsostropheDivisions(ldiv, rdiv, linv, rinv)
