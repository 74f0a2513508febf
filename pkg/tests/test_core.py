import numpy as np
import pytest
from hypothesis import given, settings

from loopkit.core import (
    LoopTable, cyclic_group, dihedral_group, direct_product, find_isomorphism, is_isomorphism,
)
from loopkit.errors import (
    EntryOutOfRange, IdentityNotFirst, InternalInconsistency, NotASubloop, NotLatin, NotNormal, NotSquare,
)
from loopkit.fixtures import load_fixture

from strategies import loops, loops_of_order, small_loops


def test_rejects_non_square():
    with pytest.raises(NotSquare):
        LoopTable([[0, 1]])
    with pytest.raises(NotSquare):
        LoopTable.from_rows([[0, 1], [1]])


def test_rejects_out_of_range_entry():
    with pytest.raises(EntryOutOfRange):
        LoopTable([[0, 1], [1, 2]])
    with pytest.raises(EntryOutOfRange):
        LoopTable.from_rows([[1, 2], [2, 1]], base=0)


def test_rejects_repeated_entry_with_location():
    with pytest.raises(NotLatin) as info:
        LoopTable([[0, 1, 2], [1, 1, 0], [2, 0, 1]])
    assert info.value.where in (("row", 1), ("column", 1))
    assert info.value.witness == 1


def test_identity_must_come_first_unless_relabeled():
    rows = [[1, 0, 2], [0, 1, 2], [2, 2, 2]]
    with pytest.raises(NotLatin):
        LoopTable(rows)
    z3_shifted = [[1, 2, 0], [2, 0, 1], [0, 1, 2]]  # identity is 2
    with pytest.raises(IdentityNotFirst):
        LoopTable(z3_shifted)
    q = LoopTable.from_rows(z3_shifted, relabel=True)
    assert find_isomorphism(q, cyclic_group(3)) is not None


def test_base_one_rows_are_rebased():
    q = LoopTable.from_rows([[1, 2], [2, 1]], base=1)
    assert q.rows() == [[0, 1], [1, 0]]
    assert q.base == 1


def test_cyclic_powers_and_orders():
    z6 = cyclic_group(6)
    assert z6.power(1, 6) == 0
    assert z6.power(1, -1) == 5
    assert z6.element_order(1) == (6, True)
    assert z6.element_order(2).order == 3
    assert z6.generated_subloop([2]) == (0, 2, 4)


def test_aip5_inverses_and_divisions():
    q = load_fixture("aip5")
    assert q.inverses(1) == (2, 3, None)
    assert not q.has_two_sided_inverses()
    assert q.mul(1, 1) == 4
    assert q.ldiv(1, 0) == 3
    assert q.rdiv(0, 1) == 2


@settings(max_examples=60, deadline=None)
@given(loops())
def test_divisions_invert_multiplication(q):
    x = np.arange(q.n)
    t, ld, rd = q.table, q.ldiv_table, q.rdiv_table
    assert (t[x[:, None], ld] == x[None, :]).all()       # a*(a\b) = b
    assert (ld[x[:, None], t] == x[None, :]).all()       # a\(a*b) = b
    assert (t[rd, x[None, :]] == x[:, None]).all()       # (b/a)*a = b
    assert (rd[t, x[None, :]] == x[:, None]).all()       # (b*a)/a = b
    assert (t[q.left_inverses, x] == 0).all()
    assert (t[x, q.right_inverses] == 0).all()


@settings(max_examples=60, deadline=None)
@given(loops())
def test_nuclei_match_associator_definition(q):
    nuc = q.nuclei()
    rng = range(q.n)
    nl = tuple(a for a in rng if all(q.associator(a, y, z) == 0 for y in rng for z in rng))
    nm = tuple(a for a in rng if all(q.associator(x, a, z) == 0 for x in rng for z in rng))
    nr = tuple(a for a in rng if all(q.associator(x, y, a) == 0 for x in rng for y in rng))
    assert (nuc.nl, nuc.nm, nuc.nr) == (nl, nm, nr)
    assert set(nuc.nuc) == set(nl) & set(nm) & set(nr)


@settings(max_examples=40, deadline=None)
@given(loops())
def test_center_is_normal_subloop_inside_commutant(q):
    assert set(q.center) <= set(q.commutant)
    assert q.is_subloop(q.center)
    assert q.is_normal(q.center)


def test_center_cross_check_raises_on_corruption():
    q = cyclic_group(4)
    q.__dict__["commutant"] = (0, 1)  # corrupt the cache
    q.__dict__["_nuclei"] = q._nuclei._replace(nlm=(0,))
    with pytest.raises(InternalInconsistency):
        q.center


def test_subloops_of_klein_group():
    v4 = direct_product(cyclic_group(2), cyclic_group(2))
    assert v4.subloops == ((0,), (0, 1), (0, 2), (0, 3), (0, 1, 2, 3))
    assert len(v4.normal_subloops) == 5
    assert not v4.is_simple()


def test_is_normal_rejects_non_subloop():
    with pytest.raises(NotASubloop):
        cyclic_group(4).is_normal((0, 1))


def test_non_normal_subgroup_of_s3():
    s3 = dihedral_group(3)
    verdict = s3.is_normal((0, 3))
    assert not verdict and verdict.witness is not None
    assert s3.is_normal((0, 1, 2))
    with pytest.raises(NotNormal):
        s3.quotient((0, 3))


def test_quotient_of_z6():
    quo, proj = cyclic_group(6).quotient((0, 3))
    assert find_isomorphism(quo, cyclic_group(3)) is not None
    assert proj.tolist() == [0, 1, 2, 0, 1, 2]


def test_induced_relabels_and_checks_closure():
    z6 = cyclic_group(6)
    assert z6.induced((0, 2, 4)) == cyclic_group(3)
    with pytest.raises(NotASubloop):
        z6.induced((0, 1))


def test_direct_product_pairs_and_isomorphism():
    p = direct_product(cyclic_group(2), cyclic_group(3))
    assert p.mul(1 * 3 + 1, 1 * 3 + 2) == 0 * 3 + 0
    phi = find_isomorphism(p, cyclic_group(6))
    assert phi is not None and is_isomorphism(p, cyclic_group(6), phi)


def test_find_isomorphism_separates_z4_and_klein():
    v4 = direct_product(cyclic_group(2), cyclic_group(2))
    assert find_isomorphism(cyclic_group(4), v4) is None


@settings(max_examples=40, deadline=None)
@given(loops(max_order=5), loops(max_order=5))
def test_find_isomorphism_agrees_with_relabel_search(p, q):
    import itertools
    brute = None
    if p.n == q.n:
        for rest in itertools.permutations(range(1, p.n)):
            if is_isomorphism(p, q, (0,) + rest):
                brute = True
                break
    found = find_isomorphism(p, q)
    assert (found is not None) == bool(brute)
    if found is not None:
        assert is_isomorphism(p, q, found)


def test_dihedral_group_is_a_nonabelian_group():
    d8 = dihedral_group(4)
    assert d8.is_associative() and not d8.is_commutative()
    assert d8.center == (0, 2)


def test_opposite_swaps_left_and_right_nuclei():
    for q in loops_of_order(5)[:30]:
        a, b = q.nuclei(), q.opposite().nuclei()
        assert (a.nl, a.nm, a.nr) == (b.nr, b.nm, b.nl)


def test_order_four_loops_are_groups():
    assert all(q.is_associative() for q in small_loops(4))
    assert sum(not q.is_associative() for q in loops_of_order(5)) == 50
