import numpy as np
from hypothesis import given, settings

from loopkit.core import cyclic_group
from loopkit.fixtures import load_fixture
from loopkit.identity import holds
from loopkit.isostrophe import isostrophe_divisions, principal_isostrophe

from strategies import loops


def test_printed_pair():
    dot, circ = load_fixture("iso_pair_dot"), load_fixture("iso_pair_circ")
    assert principal_isostrophe(dot, "right") == circ
    assert principal_isostrophe(circ, "right") == dot
    assert dot.nuclei().nm == circ.nuclei().nr == (0, 1)
    assert holds(dot, "mns") and not holds(circ, "rns")


@settings(max_examples=60, deadline=None)
@given(loops())
def test_isostrophes_are_involutions_with_shared_identity(q):
    for side in ("left", "right"):
        iso = principal_isostrophe(q, side)
        assert principal_isostrophe(iso, side) == q
        assert (iso.table[0] == np.arange(q.n)).all()


@settings(max_examples=60, deadline=None)
@given(loops())
def test_division_formulas(q):
    d = isostrophe_divisions(q)
    iso = principal_isostrophe(q)
    assert (d.left_inverses == iso.left_inverses).all()
    assert (d.right_inverses == iso.right_inverses).all()


def test_isostrophe_of_group_is_itself():
    z5 = cyclic_group(5)
    assert principal_isostrophe(z5, "left") == z5
    assert principal_isostrophe(z5, "right") == z5


def test_bad_side():
    import pytest
    with pytest.raises(ValueError):
        principal_isostrophe(cyclic_group(2), "up")
