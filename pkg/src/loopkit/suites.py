"""Computational checks of structural theorems, grouped into suites S1..S8.

Each ``Theorem`` has a hypothesis (``applies``) and a ``check`` that returns
``None`` when the conclusion holds and a JSON-friendly witness otherwise.
Theorems marked ``expected_failure`` state implications that are known to
be false; for them a witness is the desired outcome.
"""

from __future__ import annotations

import itertools
import zlib
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .core import LoopTable
from .decomp import decompose, e_layers, o_part
from .errors import InternalInconsistency, LoopError, PreconditionViolated
from .fixtures import (
    EXPECTED_PROFILES, WITNESSES, evaluate_witness, expected_profile_mismatches, label, load_fixture,
)
from .identity import CATALOG, LEFT_C_FORMS, RIGHT_C_FORMS, CENTRAL_SQUARES_COMPONENTS, check, parse
from .isostrophe import isostrophe_divisions, principal_isostrophe
from .perm import (
    L, Perm, R, inner_generators, is_autotopism, is_inner_invariant,
    isostrophe_atp_transfer, lambda_map, rho_map, section_normal_in_mlt,
)
from .variety import classify_left_c, consistency_violations, profile


@dataclass(frozen=True)
class Theorem:
    suite: str
    name: str
    statement: str
    check: Callable
    applies: Callable = lambda q: True
    expected_failure: bool = False
    fixtures: tuple = ()  # non-empty: only these named loops qualify

    def qualifies(self, q: LoopTable) -> bool:
        if self.fixtures and q.name not in self.fixtures:
            return False
        return bool(self.applies(q))


SUITE_TITLES = {
    "S1": "autotopisms with an identity component and the nuclei",
    "S2": "inverse properties, nuclei and the center",
    "S3": "principal isostrophes",
    "S4": "translation identities under left and middle nuclear squares",
    "S5": "normality of nucleus intersections",
    "S6": "central squares and endomorphic squaring",
    "S7": "splitting off the 2-part",
    "S8": "left C loops and left Steiner loops",
}

THEOREMS: list = []


def theorem(suite, statement, applies=None, expected_failure=False, fixtures=()):
    def register(fn):
        THEOREMS.append(Theorem(suite, fn.__name__, statement, fn,
                                applies or (lambda q: True), expected_failure, tuple(fixtures)))
        return fn
    return register


# -- shared helpers -------------------------------------------------------------

def _p(q):
    return profile(q)


def _iso(q, side="right"):
    key = f"_iso_{side}"
    if key not in q.__dict__:
        q.__dict__[key] = principal_isostrophe(q, side)
    return q.__dict__[key]


def _inn(q):
    if "_inn" not in q.__dict__:
        q.__dict__["_inn"] = inner_generators(q)
    return q.__dict__["_inn"]


def _fails(q, name):
    """Witness for a catalog identity failing, else None."""
    r = check(q, CATALOG[name])
    if r.holds:
        return None
    return {"identity": name, "assignment": r.counterexample or r.undefined_at}


def _same(label_a, a, label_b, b):
    if a == b:
        return None
    return {label_a: _plain(a), label_b: _plain(b)}


def _plain(v):
    if isinstance(v, tuple):
        return list(v)
    if isinstance(v, (np.integer,)):
        return int(v)
    return v


def _first(witnesses):
    for w in witnesses:
        if w is not None:
            return w
    return None


@lru_cache(maxsize=8)
def _all_perms(n: int) -> np.ndarray:
    return np.array(list(itertools.permutations(range(n))), dtype=np.int64).reshape(-1, n)


def _rows_set(arr) -> set:
    return {tuple(r) for r in np.asarray(arr).tolist()}


# -- S1 -------------------------------------------------------------------------

@theorem("S1", "a lies in Nl, Nm, Nr iff (L_a,id,L_a), (R_a^-1,L_{a^r}^-1,id), (id,R_a,R_a) is an autotopism")
def nucleus_autotopism_forms(q):
    nuc = q.nuclei()
    ident = Perm.identity(q.n)
    for a in range(q.n):
        la, ra = L(q, a), R(q, a)
        forms = (
            ("left", a in nuc.nl, (la, ident, la)),
            ("middle", a in nuc.nm, (Perm(q.rdiv_table[:, a]), Perm(q.ldiv_table[q.right_inv(a)]), ident)),
            ("right", a in nuc.nr, (ident, ra, ra)),
        )
        for side, member, triple in forms:
            if is_autotopism(q, *triple) != member:
                return {"element": a, "nucleus": side, "member": member}
    return None


@theorem("S1", "every autotopism with one identity component is the nuclear one (exhaustive over Sym(n))",
         applies=lambda q: q.n <= 8)
def autotopisms_with_identity_component(q):
    t, ld, rd = q.table, q.ldiv_table, q.rdiv_table
    perms = _all_perms(q.n)
    nuc = q.nuclei()
    # (alpha, id, gamma): gamma = alpha is forced by y = e
    ok = (t[perms] == perms[:, t]).all(axis=(1, 2))
    w = _same("left_solutions", sorted(_rows_set(perms[ok])), "left_translations",
              sorted(_rows_set(t[list(nuc.nl)])))
    if w:
        return w
    # (id, beta, gamma): gamma = beta is forced by x = e
    ok = (t[:, perms].transpose(1, 0, 2) == perms[:, t]).all(axis=(1, 2))
    w = _same("right_solutions", sorted(_rows_set(perms[ok])), "right_translations",
              sorted(_rows_set(t[:, list(nuc.nr)].T)))
    if w:
        return w
    # (alpha, beta, id): alpha = R_{beta e}^-1 is forced by y = e
    alpha = rd[:, perms[:, 0]].T
    ok = (t[alpha[:, :, None], perms[:, None, :]] == t[None]).all(axis=(1, 2))
    found = _rows_set(perms[ok])
    want = _rows_set(ld[q.right_inverses[list(nuc.nm)]])
    return _same("middle_solutions", sorted(found), "middle_translations", sorted(want))


@theorem("S1", "LAlt, RAlt, LIP, RIP agree with their translation forms")
def translation_forms(q):
    t, ld, rd = q.table, q.ldiv_table, q.rdiv_table
    linv, rinv = q.left_inverses, q.right_inverses
    x = np.arange(q.n)
    sq = t[x, x]
    forms = {
        "lalt": all((t[a][t[a]] == t[sq[a]]).all() for a in x),
        "ralt": all((t[t[:, a], a] == t[:, sq[a]]).all() for a in x),
        "lip": all((ld[a] == t[linv[a]]).all() for a in x),
        "rip": all((rd[:, a] == t[:, rinv[a]]).all() for a in x),
    }
    for name, perm_form in forms.items():
        if perm_form != check(q, CATALOG[name]).holds:
            return {"property": name, "translation_form": perm_form}
    return None


@theorem("S1", "each nucleus and their intersections are associative subloops")
def nuclei_are_subgroups(q):
    seen = set()
    for name, s in q.nuclei()._asdict().items():
        if s in seen:
            continue
        seen.add(s)
        if not q.is_subloop(s) or not q.induced(s).is_associative():
            return {"nucleus": name, "elements": list(s)}
    return None


# -- S2 -------------------------------------------------------------------------

@theorem("S2", "LIP implies Nl = Nm", applies=lambda q: _p(q).lip)
def lip_left_equals_middle_nucleus(q):
    return _same("nl", _p(q).nl, "nm", _p(q).nm)


@theorem("S2", "RIP implies Nr = Nm", applies=lambda q: _p(q).rip)
def rip_right_equals_middle_nucleus(q):
    return _same("nr", _p(q).nr, "nm", _p(q).nm)


@theorem("S2", "AAIP implies Nl = Nr", applies=lambda q: _p(q).aaip)
def aaip_left_equals_right_nucleus(q):
    return _same("nl", _p(q).nl, "nr", _p(q).nr)


@theorem("S2", "AIP implies Nm inside C and Nlm = Nlr = Nrm = Z", applies=lambda q: _p(q).aip)
def aip_pairwise_nuclei_are_center(q):
    p = _p(q)
    if not set(p.nm) <= set(p.commutant):
        return {"nm": list(p.nm), "commutant": list(p.commutant)}
    return _first(_same(k, getattr(p, k), "center", p.center) for k in ("nlm", "nlr", "nrm"))


@theorem("S2", "both forms of AAIP agree, and both forms of AIP agree")
def inverse_property_forms_agree(q):
    for a, b in (("aaip", "aaip_right_form"), ("aip", "aip_left_form")):
        va, vb = check(q, CATALOG[a]).holds, check(q, CATALOG[b]).holds
        if va != vb:
            return {a: va, b: vb}
    return None


@theorem("S2", "Z is normal and equals the set of points fixed by every inner mapping")
def center_normal_and_inner_fixed(q):
    z = q.center
    if not q.is_normal(z):
        return {"center": list(z), "witness": _plain(q.is_normal(z).witness)}
    gens = _inn(q)
    fixed = tuple(x for x in range(q.n) if all(g(x) == x for g in gens))
    return _same("center", z, "inner_fixed_points", fixed)


@theorem("S2", "a subloop is normal (congruence test) iff it is invariant under Inn")
def congruence_matches_inner_invariance(q):
    gens = _inn(q)
    for s in q.subloops:
        a, b = bool(q.is_normal(s)), is_inner_invariant(q, s, gens)
        if a != b:
            return {"subloop": list(s), "congruence": a, "inner_invariant": b}
    return None


@theorem("S2", "an AIP loop need not have two-sided inverses", fixtures=("aip5",))
def aip_without_two_sided_inverses(q):
    left, right, _ = q.inverses(1)
    facts = {"aip": _p(q).aip, "left_inverse_of_1": label(q, left), "right_inverse_of_1": label(q, right)}
    if facts != {"aip": True, "left_inverse_of_1": 2, "right_inverse_of_1": 3}:
        return facts
    return None


# -- S3 -------------------------------------------------------------------------

@theorem("S3", "the principal right (left) isostrophe of the right (left) isostrophe is Q")
def isostrophe_is_involution(q):
    for side in ("right", "left"):
        back = principal_isostrophe(_iso(q, side), side)
        if back != q:
            return {"side": side, "twice": back.rows()}
    return None


@theorem("S3", "Nl(Q) = Nl(Q o) and Nm(Q) = Nr(Q o); dually Nr(Q) = Nr(Q *) and Nm(Q) = Nl(Q *)")
def isostrophe_nuclei(q):
    a, r, l = q.nuclei(), _iso(q, "right").nuclei(), _iso(q, "left").nuclei()
    return _first((
        _same("nl", a.nl, "nl_right_iso", r.nl),
        _same("nm", a.nm, "nr_right_iso", r.nr),
        _same("nr", a.nr, "nr_left_iso", l.nr),
        _same("nm", a.nm, "nl_left_iso", l.nl),
    ))


@theorem("S3", "Q and its right isostrophe have the same normal subloops")
def isostrophe_same_normal_subloops(q):
    return _same("normal", q.normal_subloops, "normal_in_isostrophe", _iso(q).normal_subloops)


def _random_perm(rng, n):
    return Perm(rng.permutation(n).tolist())


@theorem("S3", "(a,b,c) is an autotopism of Q o iff (c, rho b lambda, a) is one of Q")
def isostrophe_autotopism_transfer(q):
    iso = _iso(q)
    ident = Perm.identity(q.n)
    lam, rho = lambda_map(q), rho_map(q)
    triples = []
    for a in iso.nuclei().nl:
        triples.append((L(iso, a), ident, L(iso, a)))
    for a in iso.nuclei().nr:
        triples.append((ident, R(iso, a), R(iso, a)))
    # autotopisms of Q carried back to Q o
    for a in q.nuclei().nl:
        triples.append((L(q, a), lam * ident * rho, L(q, a)))
    for a in q.nuclei().nr:
        triples.append((R(q, a), lam * R(q, a) * rho, ident))
    rng = np.random.default_rng(zlib.crc32(repr(q.key()).encode()))
    for _ in range(4):
        triples.append(tuple(_random_perm(rng, q.n) for _ in range(3)))
    nuclear = len(triples) - 4
    for k, (al, be, ga) in enumerate(triples):
        lhs = is_autotopism(iso, al, be, ga)
        rhs = is_autotopism(q, *isostrophe_atp_transfer(q, al, be, ga))
        if lhs != rhs or (k < nuclear and not lhs):
            return {"triple": [list(p.images) for p in (al, be, ga)],
                    "in_isostrophe": lhs, "transferred_in_q": rhs}
    return None


@theorem("S3", "the division and inverse formulas of the right isostrophe match its table")
def isostrophe_division_formulas(q):
    try:
        isostrophe_divisions(q)
    except InternalInconsistency as exc:
        return {"error": str(exc)}
    return None


@theorem("S3", "LIP iff the left isostrophe is Q; RIP iff the right isostrophe is Q")
def inverse_property_iff_isostrophe_trivial(q):
    p = _p(q)
    for side, prop in (("left", p.lip), ("right", p.rip)):
        if (_iso(q, side) == q) != prop:
            return {"side": side, "property": prop}
    return None


@theorem("S3", "the bundled pair is a loop and its right isostrophe with Nm(Q) = Nr(Q o) = {1,2}",
         fixtures=("iso_pair_dot",))
def isostrophe_pair_fixture(q):
    circ = load_fixture("iso_pair_circ")
    iso = _iso(q)
    if iso != circ:
        return {"computed_isostrophe": iso.rows()}
    nm = tuple(label(q, a) for a in q.nuclei().nm)
    nr = tuple(label(q, a) for a in circ.nuclei().nr)
    return _same("nm", nm, "expected", (1, 2)) or _same("nr_isostrophe", nr, "expected", (1, 2))


# -- S4 -------------------------------------------------------------------------

def _lns_mns(q):
    p = _p(q)
    return p.lns and p.mns


@theorem("S4", "if a^2 is in Nl then a^2 a^l = a and L_{a^2} L_{a^l} = L_a")
def left_nuclear_square_identities(q):
    t, nl = q.table, set(q.nuclei().nl)
    for a in range(q.n):
        sq, al = int(t[a, a]), int(q.left_inverses[a])
        if sq not in nl:
            continue
        if t[sq, al] != a or not (t[sq][t[al]] == t[a]).all():
            return {"element": a}
    return None


@theorem("S4", "with LNS and MNS: L_{x^l}L_{x^2} = L_{x^ll}, L_{x^l}L_x = L_x L_{x^r}, "
               "L_x L_{x^r}^-1 = L_{x x^rr} with x x^rr in Nlm", applies=_lns_mns)
def lns_mns_translation_identities(q):
    t, ld = q.table, q.ldiv_table
    linv, rinv = q.left_inverses, q.right_inverses
    nlm = set(q.nuclei().nlm)
    for x in range(q.n):
        xl, xr = linv[x], rinv[x]
        xll, xrr = linv[xl], rinv[xr]
        u = t[x, xrr]
        checks = (
            (t[xl][t[t[x, x]]] == t[xll]).all(),
            (t[xl][t[x]] == t[x][t[xr]]).all(),
            (t[x][ld[xr]] == t[u]).all(),
            int(u) in nlm,
        )
        if not all(checks):
            return {"x": x, "identities": [bool(c) for c in checks]}
    return None


@theorem("S4", "with LNS and MNS, x(ax) = (xa)x lies in Nlm for a in Nlm", applies=_lns_mns)
def nucleus_sandwich_stays_in_nucleus(q):
    t = q.table
    nlm = q.nuclei().nlm
    for a in nlm:
        for x in range(q.n):
            u, v = int(t[x, t[a, x]]), int(t[t[x, a], x])
            if u != v or u not in nlm:
                return {"a": a, "x": x, "x(ax)": u, "(xa)x": v}
    return None


@theorem("S4", "with LNS and MNS, L_x L_a L_x^-1 = L_{xax^r} and L_x^-1 L_a L_x = L_{x\\(ax)}, "
               "both subscripts in Nlm", applies=_lns_mns)
def translation_conjugation(q):
    t, ld = q.table, q.ldiv_table
    nlm = q.nuclei().nlm
    for a in nlm:
        for x in range(q.n):
            xr = q.right_inverses[x]
            u = int(t[t[x, a], xr])
            v = int(ld[x, t[a, x]])
            conj = t[x][t[a][ld[x]]]
            back = ld[x][t[a][t[x]]]
            if u != int(t[x, t[a, xr]]) or u not in nlm or v not in nlm \
                    or not (conj == t[u]).all() or not (back == t[v]).all():
                return {"a": a, "x": x}
    return None


# -- S5 -------------------------------------------------------------------------

@theorem("S5", "Q has LNS iff its right isostrophe has LNS; then x o x = ((x^r)^2)^-1")
def lns_transfers_to_isostrophe(q):
    iso = _iso(q)
    a, b = _p(q).lns, check(iso, CATALOG["lns"]).holds
    if a != b:
        return {"lns": a, "isostrophe_lns": b}
    if a:
        for x in range(q.n):
            xr = q.right_inverses[x]
            want = q.inverses(q.square(int(xr))).two_sided
            if want is None or iso.square(x) != want:
                return {"x": x, "x_o_x": iso.square(x), "expected": want}
    return None


@theorem("S5", "Q has LNS and MNS iff its right isostrophe has LNS and RNS")
def lns_mns_iff_isostrophe_lns_rns(q):
    iso = _iso(q)
    a = _p(q).lns and _p(q).mns
    b = check(iso, CATALOG["lns"]).holds and check(iso, CATALOG["rns"]).holds
    return None if a == b else {"lns_mns": a, "isostrophe_lns_rns": b}


@theorem("S5", "MNS alone transfers to RNS of the right isostrophe (known to be false)",
         applies=lambda q: _p(q).mns, expected_failure=True)
def mns_transfers_to_isostrophe_rns(q):
    w = _fails(_iso(q), "rns")
    return None if w is None else {"isostrophe": w}


def _nucleus_normal(q, n_set, left_section=True):
    if left_section:
        sect = section_normal_in_mlt(q, n_set)
        if not sect:
            return {"section_not_normal": list(sect.witness), "set": list(n_set)}
    verdict = q.is_normal(n_set)
    if not verdict:
        return {"not_normal": list(n_set), "witness": _plain(list(verdict.witness))}
    return None


@theorem("S5", "with LNS and MNS, L_(Nlm) is normal in Mlt(Q), R_x commutes with it, and Nlm is normal",
         applies=_lns_mns)
def left_middle_nucleus_normal(q):
    nlm = q.nuclei().nlm
    t = q.table
    for a in nlm:
        for x in range(q.n):
            if not (t[a][t[:, x]] == t[t[a], x]).all():
                return {"a": a, "x": x, "commutes": False}
    return _nucleus_normal(q, nlm)


@theorem("S5", "with MNS and RNS, Nrm is normal (checked directly and in the opposite loop)",
         applies=lambda q: _p(q).mns and _p(q).rns)
def middle_right_nucleus_normal(q):
    op = q.opposite()
    if op.nuclei().nlm != q.nuclei().nrm:
        return {"opposite_nlm": list(op.nuclei().nlm), "nrm": list(q.nuclei().nrm)}
    return _nucleus_normal(op, op.nuclei().nlm) or _nucleus_normal(q, q.nuclei().nrm, False)


@theorem("S5", "with LNS and RNS, Nlr is normal and equals Nlm of the right isostrophe",
         applies=lambda q: _p(q).lns and _p(q).rns)
def left_right_nucleus_normal(q):
    nlr = q.nuclei().nlr
    return _same("nlr", nlr, "isostrophe_nlm", _iso(q).nuclei().nlm) or _nucleus_normal(q, nlr, False)


@theorem("S5", "a simple loop with squares in two nuclei is a group or has exponent two",
         applies=lambda q: _p(q).squares_in_two_nuclei() and q.is_simple())
def simple_two_nuclear_squares(q):
    p = _p(q)
    return None if p.group or p.unipotent else {"group": p.group, "unipotent": p.unipotent}


@theorem("S5", "with squares in all three nuclei, Nuc is normal",
         applies=lambda q: _p(q).lns and _p(q).mns and _p(q).rns)
def nuclear_squares_nucleus_normal(q):
    return _nucleus_normal(q, q.nuclei().nuc, False)


# -- S6 -------------------------------------------------------------------------

@theorem("S6", "squares are central iff LNS, MNS, RNS and commuting squares all hold")
def central_squares_components(q):
    a = _p(q).central_squares
    b = all(check(q, CATALOG[n]).holds for n in CENTRAL_SQUARES_COMPONENTS)
    return None if a == b else {"central_squares": a, "components": b}


@theorem("S6", "central squares imply power-associativity and x^m x^n = x^(m+n)",
         applies=lambda q: _p(q).central_squares)
def central_squares_power_associative(q):
    if not _p(q).power_associative:
        return {"power_associative": False}
    for x in range(q.n):
        k = len(q._orbit_of_identity(x))
        for m in range(-k, k + 1):
            for n in range(-k, k + 1):
                if q.mul(q.power(x, m), q.power(x, n)) != q.power(x, m + n):
                    return {"x": x, "m": m, "n": n}
    return None


@theorem("S6", "central squares imply x^2 y^2 = xy (x^-1 y^-1)^-1", applies=lambda q: _p(q).central_squares)
def central_squares_identity(q):
    return _fails(q, "cs_ident")


@theorem("S6", "with central squares, AIP iff squaring is an endomorphism",
         applies=lambda q: _p(q).central_squares)
def central_squares_aip_iff_endomorphic(q):
    p = _p(q)
    return None if p.aip == p.squaring_endomorphic else {"aip": p.aip, "endomorphic": p.squaring_endomorphic}


@theorem("S6", "with squares in two nuclei, AIP iff endomorphic squaring, and either gives central squares",
         applies=lambda q: _p(q).squares_in_two_nuclei())
def two_nuclei_aip_iff_endomorphic(q):
    p = _p(q)
    if p.aip != p.squaring_endomorphic or (p.aip and not p.central_squares):
        return {"aip": p.aip, "endomorphic": p.squaring_endomorphic, "central_squares": p.central_squares}
    return None


@theorem("S6", "bundled examples have their recorded properties and numeric witnesses",
         fixtures=tuple(EXPECTED_PROFILES))
def fixture_profiles_and_witnesses(q):
    bad = expected_profile_mismatches(q, _p(q))
    for w in WITNESSES:
        if w.fixture == q.name:
            got = evaluate_witness(w, q)
            if got != w.value:
                bad.append(f"{w.term} at {w.assignment}: expected {w.value}, computed {got}")
    return {"mismatches": bad} if bad else None


@theorem("S6", "profile flags satisfy their definitional relations")
def profile_consistency(q):
    bad = consistency_violations(_p(q))
    return {"violations": bad} if bad else None


# -- S7 -------------------------------------------------------------------------

def _centralizing(q):
    return _p(q).squaring_centralizing


@theorem("S7", "with centralizing squaring, every E_n and E are normal, associators square to e, "
               "and Q/E_1 is an abelian group", applies=_centralizing)
def even_layers_normal(q):
    layers = e_layers(q)
    for k, layer in enumerate(layers):
        if not q.is_subloop(layer) or not q.is_normal(layer):
            return {"layer": k, "elements": list(layer)}
    ld, t = q.ldiv_table, q.table
    assoc = ld[t[:, t], t[t]]  # [x,y,z] = x(yz) \ (xy)z
    if (np.diagonal(t)[assoc] != 0).any():
        return {"associator_square_not_identity": True}
    quo, _ = q.quotient(layers[1] if len(layers) > 1 else layers[0])
    if not (quo.is_associative() and quo.is_commutative()):
        return {"quotient_by_e1_abelian_group": False}
    return None


@theorem("S7", "with centralizing squaring, the odd-order elements form a central normal abelian group",
         applies=_centralizing)
def odd_part_central(q):
    try:
        o = o_part(q)
    except InternalInconsistency as exc:
        return {"error": str(exc)}
    if not q.is_normal(o) or not q.induced(o).is_commutative():
        return {"odd_part": list(o)}
    return None


@theorem("S7", "with centralizing squaring, (b, c) -> bc is an isomorphism E x O -> Q", applies=_centralizing)
def even_odd_decomposition(q):
    try:
        d = decompose(q)
    except LoopError as exc:
        return {"error": f"{type(exc).__name__}: {exc}"}
    if len(d.E) * len(d.O) != q.n:
        return {"E": list(d.E), "O": list(d.O)}
    return None


@theorem("S7", "the dihedral group of order 8 has central squares but fails the squaring precondition",
         fixtures=("dihedral8",))
def dihedral_rejected_by_decompose(q):
    if not _p(q).central_squares:
        return {"central_squares": False}
    try:
        decompose(q)
    except PreconditionViolated as exc:
        return None if exc.reason == "squaring_endomorphic" else {"reason": exc.reason}
    return {"decomposed": True}


@theorem("S7", "central squares alone make the elements of order at most two a subloop (known to be false)",
         applies=lambda q: _p(q).central_squares, expected_failure=True)
def central_squares_order_two_subloop(q):
    e1 = tuple(a for a in range(q.n) if q.square(a) == 0)
    return None if q.is_subloop(e1) else {"elements": list(e1)}


# -- S8 -------------------------------------------------------------------------

def _left_c(q):
    return _p(q).left_c


@theorem("S8", "left C iff LNS+LAlt iff MNS+LAlt iff LNS+LIP iff MNS+LIP")
def left_c_characterizations(q):
    try:
        classify_left_c(q)
    except InternalInconsistency as exc:
        return {"error": str(exc)}
    return None


@theorem("S8", "the four defining identities of left C loops agree, as do their mirrors")
def left_c_forms_agree(q):
    for forms in (LEFT_C_FORMS, RIGHT_C_FORMS):
        verdicts = {f: check(q, CATALOG[f]).holds for f in forms}
        if len(set(verdicts.values())) != 1:
            return verdicts
    return None


@theorem("S8", "left C loops have Nl = Nm", applies=_left_c)
def left_c_nuclei_coincide(q):
    return _same("nl", _p(q).nl, "nm", _p(q).nm)


@theorem("S8", "C iff left C and right C")
def c_iff_left_and_right_c(q):
    p = _p(q)
    return None if p.c_loop == (p.left_c and p.right_c) else {"c": p.c_loop, "left_c": p.left_c,
                                                                 "right_c": p.right_c}


@theorem("S8", "in a left C loop L_(Nl) is normal in Mlt(Q) and Nl is normal", applies=_left_c)
def left_c_left_nucleus_normal(q):
    return _nucleus_normal(q, q.nuclei().nl)


@theorem("S8", "a left C loop modulo its left nucleus is left Steiner", applies=_left_c)
def left_c_quotient_left_steiner(q):
    quo, _ = q.quotient(q.nuclei().nl)
    return _fails(quo, "left_steiner")


@theorem("S8", "x(xy) = y iff LAlt and exponent two iff LIP and exponent two iff unipotent left C")
def left_steiner_characterizations(q):
    p = _p(q)
    forms = {"identity": p.left_steiner, "lalt": p.lalt and p.unipotent,
             "lip": p.lip and p.unipotent, "left_c": p.left_c and p.unipotent}
    return None if len(set(forms.values())) == 1 else forms


_STEINER_CHAIN = tuple(parse(s) for s in (
    "x*y = ((x*y)*x)*x",
    "((x*y)*x)*x = ((x*y)*((x*y)*y))*x",
    "((x*y)*((x*y)*y))*x = y*x",
))


@theorem("S8", "Steiner iff left and right Steiner; left and right Steiner forces commutativity step by step")
def steiner_iff_both_sides(q):
    p = _p(q)
    if p.steiner != (p.left_steiner and p.right_steiner):
        return {"steiner": p.steiner, "left": p.left_steiner, "right": p.right_steiner}
    if p.left_steiner and p.right_steiner:
        for step, ident in enumerate(_STEINER_CHAIN):
            r = check(q, ident)
            if not r:
                return {"step": step, "assignment": r.counterexample}
    return None


@theorem("S8", "a C loop modulo its nucleus is Steiner", applies=lambda q: _p(q).c_loop)
def c_quotient_steiner(q):
    nuc = q.nuclei().nuc
    w = _nucleus_normal(q, nuc, False)
    if w:
        return w
    quo, _ = q.quotient(nuc)
    return _fails(quo, "left_steiner") or _fails(quo, "commutativity")


@theorem("S8", "a simple left C loop is a group or left Steiner",
         applies=lambda q: _p(q).left_c and q.is_simple())
def simple_left_c(q):
    p = _p(q)
    return None if p.group or p.left_steiner else {"group": p.group, "left_steiner": p.left_steiner}


@theorem("S8", "x((y(yx))z) = (yx)((yx)z), also as L_x L_{y(yx)} = L_{yx}^2, holds iff left C and AIP")
def aip_left_c_single_axiom(q):
    p = _p(q)
    a = check(q, CATALOG["aip_left_c"]).holds
    t = q.table
    perm_form = all((t[x][t[t[y, t[y, x]]]] == t[t[y, x]][t[t[y, x]]]).all()
                    for x in range(q.n) for y in range(q.n))
    b = p.left_c and p.aip
    return None if a == b == perm_form else {"axiom": a, "translation_form": perm_form, "left_c_and_aip": b}


@theorem("S8", "AIP left C loops have centralizing squaring and split as E x O",
         applies=lambda q: _p(q).left_c and _p(q).aip)
def aip_left_c_decomposes(q):
    if not _p(q).squaring_centralizing:
        return {"squaring_centralizing": False}
    return even_odd_decomposition(q)


SUITES = tuple(SUITE_TITLES)


def theorems_for(suites) -> list:
    wanted = set(suites)
    return [t for t in THEOREMS if t.suite in wanted]
