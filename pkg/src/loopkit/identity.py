"""Loop identities: terms, a small parser, evaluation and universal checking.

Concrete syntax::

    identity := term '=' term
    term     := factor (('\\' | '/') factor)*        left-associative
    factor   := atom ('*' atom)*                     left-associative
    atom     := var | 'e' | '(' term ')' | atom '^l' | atom '^r' | atom '^-1'

Postfix inverses bind tightest, then ``*``, then the divisions, so
``x*x\\y`` reads as ``(x*x)\\y``.  ``^l`` is the left inverse ``e/x``,
``^r`` the right inverse ``x\\e`` and ``^-1`` the two-sided inverse, which
is undefined at elements whose one-sided inverses differ.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping

import numpy as np

from .core import LoopTable
from .errors import LoopError


class Term:
    __slots__ = ()


@dataclass(frozen=True)
class Var(Term):
    name: str


@dataclass(frozen=True)
class E(Term):
    pass


@dataclass(frozen=True)
class Mul(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class LDiv(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class RDiv(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class LInv(Term):
    arg: Term


@dataclass(frozen=True)
class RInv(Term):
    arg: Term


@dataclass(frozen=True)
class TwoInv(Term):
    arg: Term


_BINARY = {Mul: "*", LDiv: "\\", RDiv: "/"}
_POSTFIX = {LInv: "^l", RInv: "^r", TwoInv: "^-1"}


def variables(t: Term, acc: list | None = None) -> list:
    """Variable names in order of first occurrence."""
    acc = [] if acc is None else acc
    if isinstance(t, Var):
        if t.name not in acc:
            acc.append(t.name)
    elif type(t) in _BINARY:
        variables(t.left, acc)
        variables(t.right, acc)
    elif type(t) in _POSTFIX:
        variables(t.arg, acc)
    return acc


@dataclass(frozen=True)
class Identity:
    lhs: Term
    rhs: Term
    vars: tuple

    @classmethod
    def of(cls, lhs: Term, rhs: Term) -> "Identity":
        acc = variables(lhs)
        variables(rhs, acc)
        return cls(lhs, rhs, tuple(acc))

    def __str__(self):
        return f"{format_term(self.lhs)} = {format_term(self.rhs)}"

    @property
    def arity(self) -> int:
        return len(self.vars)

    def uses_divisions(self) -> bool:
        return _uses_divisions(self.lhs) or _uses_divisions(self.rhs)


def _uses_divisions(t: Term) -> bool:
    if isinstance(t, (Var, E)):
        return False
    if isinstance(t, Mul):
        return _uses_divisions(t.left) or _uses_divisions(t.right)
    return True


def format_term(t: Term) -> str:
    """Fully parenthesized rendering; ``parse`` inverts it exactly."""
    if isinstance(t, Var):
        return t.name
    if isinstance(t, E):
        return "e"
    if type(t) in _BINARY:
        return f"({format_term(t.left)}{_BINARY[type(t)]}{format_term(t.right)})"
    return format_term(t.arg) + _POSTFIX[type(t)]


# -- parsing ------------------------------------------------------------------

class IdentitySyntaxError(LoopError, ValueError):
    def __init__(self, position: int, message: str):
        self.position = position
        super().__init__(f"at position {position}: {message}")


class UnknownToken(IdentitySyntaxError):
    pass


class UnboundVariable(LoopError, KeyError):
    pass


_TOKEN = re.compile(r"\s*(?:(?P<post>\^-1|\^l|\^r)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[()*\\/=]))")


def _tokenize(text: str) -> list:
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise UnknownToken(pos, f"unexpected character {text[pos]!r}")
        start = m.start(m.lastgroup)
        tokens.append((m.lastgroup, m.group(m.lastgroup), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        kind, val, pos = self.take()
        if val != value or kind == "name":
            raise IdentitySyntaxError(pos, f"expected {value!r}, found {val or 'end of input'!r}")

    def identity(self):
        lhs = self.term()
        self.expect("=")
        rhs = self.term()
        kind, val, pos = self.peek()
        if kind != "end":
            raise IdentitySyntaxError(pos, f"trailing input {val!r}")
        return Identity.of(lhs, rhs)

    def term(self):
        t = self.factor()
        while self.peek()[1] in ("\\", "/") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.factor()
            t = LDiv(t, rhs) if op == "\\" else RDiv(t, rhs)
        return t

    def factor(self):
        t = self.atom()
        while self.peek()[:2] == ("op", "*"):
            self.take()
            t = Mul(t, self.atom())
        return t

    def atom(self):
        kind, val, pos = self.take()
        if kind == "name":
            t = E() if val == "e" else Var(val)
        elif (kind, val) == ("op", "("):
            t = self.term()
            self.expect(")")
        else:
            raise IdentitySyntaxError(pos, f"expected a term, found {val or 'end of input'!r}")
        while self.peek()[0] == "post":
            t = {"^l": LInv, "^r": RInv, "^-1": TwoInv}[self.take()[1]](t)
        return t


def parse(text: str) -> Identity:
    return _Parser(text).identity()


def parse_term(text: str) -> Term:
    p = _Parser(text)
    t = p.term()
    kind, val, pos = p.peek()
    if kind != "end":
        raise IdentitySyntaxError(pos, f"trailing input {val!r}")
    return t


# -- transforms ----------------------------------------------------------------

def mirror_term(t: Term) -> Term:
    """The term computing ``t`` in the opposite loop."""
    if isinstance(t, (Var, E)):
        return t
    if isinstance(t, Mul):
        return Mul(mirror_term(t.right), mirror_term(t.left))
    if isinstance(t, LDiv):
        return RDiv(mirror_term(t.right), mirror_term(t.left))
    if isinstance(t, RDiv):
        return LDiv(mirror_term(t.right), mirror_term(t.left))
    if isinstance(t, LInv):
        return RInv(mirror_term(t.arg))
    if isinstance(t, RInv):
        return LInv(mirror_term(t.arg))
    return TwoInv(mirror_term(t.arg))


def mirror(identity: Identity) -> Identity:
    """Q satisfies ``mirror(id)`` iff the opposite of Q satisfies ``id``."""
    return Identity.of(mirror_term(identity.lhs), mirror_term(identity.rhs))


# -- evaluation ---------------------------------------------------------------

UNDEFINED = None


def eval_term(t: Term, assignment: Mapping[str, int], q: LoopTable):
    """Evaluate at one assignment; returns an element or ``UNDEFINED``."""
    if isinstance(t, Var):
        try:
            return int(assignment[t.name])
        except KeyError:
            raise UnboundVariable(t.name) from None
    if isinstance(t, E):
        return 0
    if type(t) in _BINARY:
        a = eval_term(t.left, assignment, q)
        b = eval_term(t.right, assignment, q)
        if a is UNDEFINED or b is UNDEFINED:
            return UNDEFINED
        if isinstance(t, Mul):
            return q.mul(a, b)
        if isinstance(t, LDiv):
            return q.ldiv(a, b)
        return q.rdiv(a, b)
    a = eval_term(t.arg, assignment, q)
    if a is UNDEFINED:
        return UNDEFINED
    if isinstance(t, LInv):
        return q.left_inv(a)
    if isinstance(t, RInv):
        return q.right_inv(a)
    return q.inverses(a).two_sided


@dataclass(frozen=True)
class CheckResult:
    holds: bool
    counterexample: dict | None = None
    undefined_at: dict | None = None

    def __bool__(self):
        return self.holds


@lru_cache(maxsize=64)
def _assignment_grid(n: int, k: int) -> np.ndarray:
    # row i enumerates variable i's values; columns run in lexicographic order
    grid = np.indices((n,) * k).reshape(k, -1)
    grid.setflags(write=False)
    return grid


def _eval_array(t: Term, env: dict, q: LoopTable):
    """Vectorized evaluation: returns ``(values, defined_mask_or_None)``."""
    if isinstance(t, Var):
        return env[t.name], None
    if isinstance(t, E):
        return np.zeros(env["#size"], dtype=np.int64), None
    if type(t) in _BINARY:
        a, da = _eval_array(t.left, env, q)
        b, db = _eval_array(t.right, env, q)
        table = (q.table if isinstance(t, Mul)
                 else q.ldiv_table if isinstance(t, LDiv) else q.rdiv_table)
        d = da if db is None else (db if da is None else da & db)
        return table[a, b], d
    a, d = _eval_array(t.arg, env, q)
    if isinstance(t, LInv):
        return q.left_inverses[a], d
    if isinstance(t, RInv):
        return q.right_inverses[a], d
    lv, rv = q.left_inverses[a], q.right_inverses[a]
    ok = lv == rv
    return lv, ok if d is None else d & ok


def check(q: LoopTable, identity: Identity) -> CheckResult:
    """Test ``identity`` at every assignment, in lexicographic order.

    The first failing assignment is reported, either as a counterexample
    or, when a two-sided inverse is needed but missing, as ``undefined_at``.
    """
    k = identity.arity
    grid = _assignment_grid(q.n, k)
    env = {name: grid[i] for i, name in enumerate(identity.vars)}
    env["#size"] = grid.shape[1]
    lv, ld = _eval_array(identity.lhs, env, q)
    rv, rd = _eval_array(identity.rhs, env, q)
    defined = ld if rd is None else (rd if ld is None else ld & rd)
    bad = lv != rv
    if defined is not None:
        bad |= ~defined
    if not bad.any():
        return CheckResult(True)
    idx = int(np.argmax(bad))
    assignment = {name: int(grid[i, idx]) for i, name in enumerate(identity.vars)}
    if defined is not None and not defined[idx]:
        return CheckResult(False, undefined_at=assignment)
    return CheckResult(False, counterexample=assignment)


def holds(q: LoopTable, identity: Identity | str) -> bool:
    if isinstance(identity, str):
        identity = CATALOG[identity] if identity in CATALOG else parse(identity)
    return check(q, identity).holds


# -- catalog ------------------------------------------------------------------

_LEFT_C_FORMS = (
    "x*(y*(y*z)) = (x*(y*y))*z",
    "(x*x)*(y*z) = (x*(x*y))*z",
    "x*(x*(y*z)) = (x*(x*y))*z",
    "x*(x*(y*z)) = ((x*x)*y)*z",
)

_CATALOG_TEXT = {
    "associativity": "(x*y)*z = x*(y*z)",
    "commutativity": "x*y = y*x",
    "lns": "(x*x)*(y*z) = ((x*x)*y)*z",
    "mns": "(x*(y*y))*z = x*((y*y)*z)",
    "rns": "(x*y)*(z*z) = x*(y*(z*z))",
    "commuting_squares": "(x*x)*y = y*(x*x)",
    "c": "((x*y)*y)*z = x*(y*(y*z))",
    "lalt": "x*(x*y) = (x*x)*y",
    "ralt": "(x*y)*y = x*(y*y)",
    "lip": "x^l*(x*y) = y",
    "rip": "(x*y)*y^r = x",
    "aaip": "(x*y)^l = y^l*x^l",
    "aaip_right_form": "(x*y)^r = y^r*x^r",
    "aip": "(x*y)^r = x^r*y^r",
    "aip_left_form": "(x*y)^l = x^l*y^l",
    "left_steiner": "x*(x*y) = y",
    "unipotent": "x*x = e",
    "endomorphic_squaring": "(x*y)*(x*y) = (x*x)*(y*y)",
    "cs_ident": "(x*x)*(y*y) = (x*y)*(x^-1*y^-1)^-1",
    "aip_left_c": "x*((y*(y*x))*z) = (y*x)*((y*x)*z)",
}

# every square lies in Z(Q) iff these four hold
CENTRAL_SQUARES_COMPONENTS = ("lns", "mns", "rns", "commuting_squares")
LEFT_C_FORMS = tuple(f"left_c{i}" for i in range(1, 5))
RIGHT_C_FORMS = tuple(f"right_c{i}" for i in range(1, 5))


def _build_catalog() -> dict:
    cat = {name: parse(text) for name, text in _CATALOG_TEXT.items()}
    for i, text in enumerate(_LEFT_C_FORMS, start=1):
        cat[f"left_c{i}"] = parse(text)
        cat[f"right_c{i}"] = mirror(cat[f"left_c{i}"])
    cat["right_steiner"] = mirror(cat["left_steiner"])
    return dict(sorted(cat.items()))


CATALOG = _build_catalog()


def catalog() -> dict:
    """Name -> Identity for every identity the workbench knows by name."""
    return dict(CATALOG)


def resolve(spec: str) -> Identity:
    """A catalog name or identity text."""
    return CATALOG[spec] if spec in CATALOG else parse(spec)
