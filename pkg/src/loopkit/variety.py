"""Property profiles: which varieties a loop belongs to.

Every flag is computed straight from its definition, never inferred from
another flag, so the profiles can serve as an oracle for implications
between the properties.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass

import numpy as np

from .core import LoopTable
from .errors import InternalInconsistency
from .identity import CATALOG, check

BOOLEAN_FIELDS = (
    "aaip", "aip", "c_loop", "central_squares", "commuting_squares", "group",
    "lalt", "left_c", "left_steiner", "lip", "lns", "mns", "power_associative",
    "ralt", "right_c", "right_steiner", "rip", "rns", "squaring_centralizing",
    "squaring_endomorphic", "steiner", "two_sided_inverses", "unipotent",
)


@dataclass(frozen=True)
class PropertyProfile:
    aaip: bool
    aip: bool
    c_loop: bool
    central_squares: bool
    commuting_squares: bool
    group: bool
    lalt: bool
    left_c: bool
    left_steiner: bool
    lip: bool
    lns: bool
    mns: bool
    power_associative: bool
    ralt: bool
    right_c: bool
    right_steiner: bool
    rip: bool
    rns: bool
    squaring_centralizing: bool
    squaring_endomorphic: bool
    steiner: bool
    two_sided_inverses: bool
    unipotent: bool
    nl: tuple
    nm: tuple
    nr: tuple
    nlm: tuple
    nlr: tuple
    nrm: tuple
    nuc: tuple
    commutant: tuple
    center: tuple

    def as_dict(self) -> dict:
        return {k: (list(v) if isinstance(v, tuple) else v) for k, v in sorted(asdict(self).items())}

    def squares_in_two_nuclei(self) -> bool:
        return (self.lns + self.mns + self.rns) >= 2


@dataclass(frozen=True)
class Verdict:
    ok: bool
    witness: object = None

    def __bool__(self):
        return self.ok


def is_power_associative(q: LoopTable) -> Verdict:
    """Is every one-generated subloop associative?  Witness: an element."""
    cube = q._assoc_cube
    for x in range(q.n):
        s = q.generated_subloop([x])
        if not cube[np.ix_(s, s, s)].all():
            return Verdict(False, x)
    return Verdict(True)


def _holds(q, name):
    return check(q, CATALOG[name]).holds


def profile(q: LoopTable) -> PropertyProfile:
    cached = q.__dict__.get("_profile")
    if cached is not None:
        return cached
    nuc = q.nuclei()
    center = q.center
    squares = set(q.squares)
    endo = _holds(q, "endomorphic_squaring")
    central = squares <= set(center)
    left_steiner = _holds(q, "left_steiner")
    p = PropertyProfile(
        aaip=_holds(q, "aaip"),
        aip=_holds(q, "aip"),
        c_loop=_holds(q, "c"),
        central_squares=central,
        commuting_squares=_holds(q, "commuting_squares"),
        group=_holds(q, "associativity"),
        lalt=_holds(q, "lalt"),
        left_c=_holds(q, "left_c1"),
        left_steiner=left_steiner,
        lip=_holds(q, "lip"),
        lns=_holds(q, "lns"),
        mns=_holds(q, "mns"),
        power_associative=bool(is_power_associative(q)),
        ralt=_holds(q, "ralt"),
        right_c=_holds(q, "right_c1"),
        right_steiner=_holds(q, "right_steiner"),
        rip=_holds(q, "rip"),
        rns=_holds(q, "rns"),
        squaring_centralizing=endo and central,
        squaring_endomorphic=endo,
        steiner=left_steiner and _holds(q, "commutativity"),
        two_sided_inverses=q.has_two_sided_inverses(),
        unipotent=_holds(q, "unipotent"),
        nl=nuc.nl, nm=nuc.nm, nr=nuc.nr,
        nlm=nuc.nlm, nlr=nuc.nlr, nrm=nuc.nrm, nuc=nuc.nuc,
        commutant=q.commutant,
        center=center,
    )
    q.__dict__["_profile"] = p
    return p


def consistency_violations(p: PropertyProfile) -> list:
    """Derived-field relations that fail; empty for every correct profile."""
    rules = {
        "c_loop == left_c and right_c": p.c_loop == (p.left_c and p.right_c),
        "steiner == left_steiner and right_steiner": p.steiner == (p.left_steiner and p.right_steiner),
        "central_squares implies power_associative": p.power_associative or not p.central_squares,
        "squaring_centralizing == squaring_endomorphic and central_squares":
            p.squaring_centralizing == (p.squaring_endomorphic and p.central_squares),
        "group implies every other inverse/square property":
            not p.group or all((p.lip, p.rip, p.lns, p.mns, p.rns, p.power_associative)),
    }
    return [rule for rule, ok in rules.items() if not ok]


@dataclass(frozen=True)
class LeftCReport:
    verdict: bool
    characterizations: dict

    def __bool__(self):
        return self.verdict


LEFT_C_CHARACTERIZATIONS = (
    ("identity", ("left_c1",)),
    ("lns+lalt", ("lns", "lalt")),
    ("mns+lalt", ("mns", "lalt")),
    ("lns+lip", ("lns", "lip")),
    ("mns+lip", ("mns", "lip")),
)


def classify_left_c(q: LoopTable) -> LeftCReport:
    """Left C membership via five characterizations that must agree."""
    report = {label: all(_holds(q, n) for n in names) for label, names in LEFT_C_CHARACTERIZATIONS}
    values = set(report.values())
    if len(values) != 1:
        raise InternalInconsistency(f"left C characterizations disagree: {report}")
    return LeftCReport(values.pop(), report)


def render_profile(p: PropertyProfile) -> str:
    lines = []
    for key, value in p.as_dict().items():
        if isinstance(value, list):
            value = "{" + ",".join(map(str, value)) + "}"
        else:
            value = "true" if value else "false"
        lines.append(f"{key}: {value}")
    return "\n".join(lines) + "\n"


def profile_json(p: PropertyProfile) -> str:
    return json.dumps(p.as_dict(), sort_keys=True)

