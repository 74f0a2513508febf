import pytest
from hypothesis import given, settings

from loopkit.errors import NotLatin
from loopkit.fixtures import FIXTURE_NAMES, fixture_text
from loopkit.loopfile import ParseError, format_loop, load_loop, parse_loop, save_loop

from strategies import loops


def test_parses_comments_and_base():
    q = parse_loop("# z2\norder 2\n\nbase 1\n1 2\n# middle\n2 1\n")
    assert q.rows() == [[0, 1], [1, 0]]
    assert q.base == 1


def test_base_defaults_to_zero():
    assert parse_loop("order 1\n0\n").base == 0


@pytest.mark.parametrize("text, line", [
    ("", 1),
    ("orders 2\n0 1\n1 0\n", 1),
    ("order 65\n", 1),
    ("order 0\n", 1),
    ("order 2\nbase 2\n0 1\n1 0\n", 2),
    ("order 2\n0 1\n", 3),
    ("order 2\n0 1\n1 0\n1 0\n", 4),
    ("order 2\n0 x\n1 0\n", 2),
    ("order 2\n0 1 1\n1 0\n", 2),
])
def test_parse_errors_report_line(text, line):
    with pytest.raises(ParseError) as info:
        parse_loop(text)
    assert info.value.line == line


def test_repeated_row_entry_is_not_latin():
    with pytest.raises(NotLatin):
        parse_loop("order 3\n0 1 2\n1 1 0\n2 0 1\n")


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_fixture_files_are_canonical(name):
    text = fixture_text(name)
    assert format_loop(parse_loop(text)) == text


def test_save_load_round_trip_is_byte_identical(tmp_path):
    text = fixture_text("iso_pair_dot")
    src = tmp_path / "dot.loop"
    src.write_text(text, encoding="utf-8")
    q = load_loop(src)
    assert q.name == "dot"
    dst = tmp_path / "copy.loop"
    save_loop(dst, q)
    assert dst.read_bytes() == src.read_bytes()


@settings(max_examples=40, deadline=None)
@given(loops())
def test_format_parse_round_trip(q):
    for base in (0, 1):
        again = parse_loop(format_loop(q, base))
        assert again == q and again.base == base
