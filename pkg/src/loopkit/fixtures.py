"""Bundled example loops and the facts recorded about them.

Fixture files keep the printed labels (base 1 for most tables, base 0 for
``aip5``) so they can be compared with the source tables by eye.  Facts
below are stated in those printed labels too; ``label()`` converts.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

from .core import LoopTable, dihedral_group
from .identity import eval_term, parse_term
from .loopfile import parse_loop

FIXTURE_NAMES = (
    "aip5",
    "iso_pair_dot",
    "iso_pair_circ",
    "lns_aip_nonendo6",
    "mns_aip_nonendo6",
    "mns_cs_endo_nonaip8",
    "lns_endo_aip_noncs8",
    "mns_endo_aip_nonlns8",
)

DESCRIPTIONS = {
    "aip5": "AIP loop whose element 1 has left inverse 2 and right inverse 3",
    "iso_pair_dot": "middle nuclear squares; its right isostrophe lacks right nuclear squares",
    "iso_pair_circ": "principal right isostrophe of iso_pair_dot",
    "lns_aip_nonendo6": "left nuclear squares and AIP, squaring not an endomorphism",
    "mns_aip_nonendo6": "middle nuclear squares and AIP, squaring not an endomorphism",
    "mns_cs_endo_nonaip8": "middle nuclear and commuting squares, endomorphic squaring, no AIP",
    "lns_endo_aip_noncs8": "left nuclear squares, endomorphic squaring and AIP, squares do not commute",
    "mns_endo_aip_nonlns8": "middle nuclear squares, endomorphic squaring and AIP, no left nuclear squares",
}

# Recorded properties; sets are in printed labels.
EXPECTED_PROFILES = {
    "aip5": {"aip": True, "two_sided_inverses": False},
    "iso_pair_dot": {"mns": True, "nm": (1, 2)},
    "iso_pair_circ": {"rns": False, "nr": (1, 2)},
    "lns_aip_nonendo6": {"lns": True, "aip": True, "squaring_endomorphic": False},
    "mns_aip_nonendo6": {"mns": True, "aip": True, "commuting_squares": True,
                         "squaring_endomorphic": False},
    "mns_cs_endo_nonaip8": {"mns": True, "commuting_squares": True,
                            "squaring_endomorphic": True, "aip": False},
    "lns_endo_aip_noncs8": {"lns": True, "squaring_endomorphic": True, "aip": True,
                            "commuting_squares": False},
    "mns_endo_aip_nonlns8": {"mns": True, "squaring_endomorphic": True, "aip": True,
                             "commuting_squares": True, "lns": False},
}


@dataclass(frozen=True)
class Witness:
    """``term`` evaluated at ``assignment`` equals ``value`` (printed labels)."""

    fixture: str
    term: str
    assignment: dict
    value: int


def _w(fixture, term, value, **assignment):
    return Witness(fixture, term, assignment, value)


WITNESSES = (
    _w("aip5", "x^l", 2, x=1),
    _w("aip5", "x^r", 3, x=1),
    _w("iso_pair_dot", "x*y", 4, x=3, y=5),
    # squares 4^2 = 1, 2^2 = 3, product 3; (4*2)^2 = 6^2 = 2
    _w("lns_aip_nonendo6", "x*x", 1, x=4),
    _w("lns_aip_nonendo6", "y*y", 3, y=2),
    _w("lns_aip_nonendo6", "(x*x)*(y*y)", 3, x=4, y=2),
    _w("lns_aip_nonendo6", "x*y", 6, x=4, y=2),
    _w("lns_aip_nonendo6", "(x*y)*(x*y)", 2, x=4, y=2),
    # 3^2 * 4 = 2*4 = 5 but 4 * 3^2 = 4*2 = 6
    _w("lns_aip_nonendo6", "x*x", 2, x=3),
    _w("lns_aip_nonendo6", "(x*x)*y", 5, x=3, y=4),
    _w("lns_aip_nonendo6", "y*(x*x)", 6, x=3, y=4),
    # 2^2 * 4^2 = 3*1 = 3; (2*4)^2 = 5^2 = 2
    _w("mns_aip_nonendo6", "x*x", 3, x=2),
    _w("mns_aip_nonendo6", "y*y", 1, y=4),
    _w("mns_aip_nonendo6", "(x*x)*(y*y)", 3, x=2, y=4),
    _w("mns_aip_nonendo6", "x*y", 5, x=2, y=4),
    _w("mns_aip_nonendo6", "(x*y)*(x*y)", 2, x=2, y=4),
    # (3*5)\1 = 7\1 = 5; (3\1)(5\1) = 3*8 = 6
    _w("mns_cs_endo_nonaip8", "x*y", 7, x=3, y=5),
    _w("mns_cs_endo_nonaip8", "(x*y)\\e", 5, x=3, y=5),
    _w("mns_cs_endo_nonaip8", "x\\e", 3, x=3),
    _w("mns_cs_endo_nonaip8", "y\\e", 8, y=5),
    _w("mns_cs_endo_nonaip8", "(x\\e)*(y\\e)", 6, x=3, y=5),
    # 3^2 * 3 = 2*3 = 4 but 3 * 3^2 = 3*2 = 5
    _w("lns_endo_aip_noncs8", "x*x", 2, x=3),
    _w("lns_endo_aip_noncs8", "(x*x)*x", 4, x=3),
    _w("lns_endo_aip_noncs8", "x*(x*x)", 5, x=3),
    # (3^2*3)*3 = (2*3)*3 = 4*3 = 8 but 3^2*(3*3) = 2*2 = 1
    _w("mns_endo_aip_nonlns8", "x*x", 2, x=3),
    _w("mns_endo_aip_nonlns8", "(x*x)*x", 4, x=3),
    _w("mns_endo_aip_nonlns8", "((x*x)*x)*x", 8, x=3),
    _w("mns_endo_aip_nonlns8", "(x*x)*(x*x)", 1, x=3),
)


def load_fixture(name: str) -> LoopTable:
    if name == "dihedral8":
        q = dihedral_group(4)
        q.name = name
        return q
    if name not in FIXTURE_NAMES:
        raise KeyError(f"unknown fixture {name!r}")
    text = resources.files("loopkit").joinpath("data").joinpath(f"{name}.loop").read_text(encoding="utf-8")
    return parse_loop(text, name=name)


def fixture_text(name: str) -> str:
    return resources.files("loopkit").joinpath("data").joinpath(f"{name}.loop").read_text(encoding="utf-8")


def all_fixtures() -> list:
    return [load_fixture(name) for name in FIXTURE_NAMES]


def label(q: LoopTable, element: int) -> int:
    """Printed label of a 0-based element."""
    return element + q.base


def index(q: LoopTable, printed: int) -> int:
    return printed - q.base


def evaluate_witness(w: Witness, q: LoopTable | None = None):
    """Computed value of ``w.term`` in printed labels (None if undefined)."""
    q = load_fixture(w.fixture) if q is None else q
    env = {k: index(q, v) for k, v in w.assignment.items()}
    value = eval_term(parse_term(w.term), env, q)
    return None if value is None else label(q, value)


def expected_profile_mismatches(q: LoopTable, prof) -> list:
    """Fields where a computed profile disagrees with the recorded one."""
    out = []
    for key, want in EXPECTED_PROFILES.get(q.name, {}).items():
        got = getattr(prof, key)
        if isinstance(want, tuple):
            got = tuple(label(q, x) for x in got)
        if got != want:
            out.append(f"{key}: expected {want}, computed {got}")
    return out


def power_reading(q: LoopTable, printed_x: int, exponent: int, printed_y: int) -> int:
    """Printed label of ``x^exponent * y`` under the left-iterate power convention."""
    x, y = index(q, printed_x), index(q, printed_y)
    return label(q, q.mul(q.power(x, exponent), y))
