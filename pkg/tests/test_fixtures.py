import pytest

from loopkit.fixtures import (
    EXPECTED_PROFILES, FIXTURE_NAMES, WITNESSES, all_fixtures, evaluate_witness, load_fixture, power_reading,
)


def test_all_fixtures_load():
    qs = all_fixtures()
    assert [q.name for q in qs] == list(FIXTURE_NAMES)
    assert [q.n for q in qs] == [5, 6, 6, 6, 6, 8, 8, 8]
    assert set(EXPECTED_PROFILES) == set(FIXTURE_NAMES)


@pytest.mark.parametrize("w", WITNESSES, ids=lambda w: f"{w.fixture}:{w.term}")
def test_numeric_witness(w):
    assert evaluate_witness(w) == w.value


def test_cube_reading_for_non_central_squares_example():
    # only the x^2*x reading fits the table: 3^2*3 = 4 while 3^3 itself is 5
    q = load_fixture("lns_endo_aip_noncs8")
    assert power_reading(q, 3, 2, 3) == 4
    assert q.power(2, 3) + 1 == 5
    assert power_reading(q, 3, 3, 3) != 4


def test_unknown_fixture():
    with pytest.raises(KeyError):
        load_fixture("nope")


def test_dihedral_fixture():
    q = load_fixture("dihedral8")
    assert q.n == 8 and q.name == "dihedral8"
