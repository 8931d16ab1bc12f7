"""Parsing, canonical serialization, and report formatting."""

import os
from fractions import Fraction

import pytest

from conftest import FIXTURES, fixture_text
from ordkit.families import SetFamily
from ordkit.graphfam import ESCAPE_DEMO_NAMES
from ordkit.poset import Poset, antichain, chain, layered
from ordkit.textio import (
    ParseError,
    format_value,
    mask_text,
    parse_family,
    parse_poset,
    render_report,
    serialize_family,
    serialize_poset,
)


def test_poset_round_trip():
    for p in (chain(4), antichain(3), layered(3), Poset.from_covers(0, [])):
        assert parse_poset(serialize_poset(p)) == p


def test_poset_parse_basics():
    p = parse_poset("poset 3\n\ncover 0 1\ncover 1 2\n")
    assert p.n == 3
    assert p.leq(0, 2)
    assert parse_poset("\n\nposet 2\n").n == 2
    assert serialize_poset(Poset.from_covers(0, [])) == "poset 0\n"


def test_poset_parse_errors():
    with pytest.raises(ParseError, match="missing 'poset <n>' header"):
        parse_poset("")
    with pytest.raises(ParseError, match="expected 'poset <n>'"):
        parse_poset("pset 3\n")
    with pytest.raises(ParseError, match="bad size"):
        parse_poset("poset x\n")
    with pytest.raises(ParseError, match="negative size"):
        parse_poset("poset -1\n")
    with pytest.raises(ParseError, match="expected 'cover <i> <j>'"):
        parse_poset("poset 2\ncover 0\n")
    with pytest.raises(ParseError, match="expected 'cover <i> <j>'"):
        parse_poset("poset 2\nedge 0 1\n")
    with pytest.raises(ParseError, match="must be integers"):
        parse_poset("poset 2\ncover 0 b\n")
    with pytest.raises(ParseError, match="out of range"):
        parse_poset("poset 2\ncover 0 2\n")

    try:
        parse_poset("poset 2\ncover 0 2\n")
    except ParseError as exc:
        assert exc.line_no == 2
        assert str(exc).startswith("line 2:")

    with pytest.raises(ParseError):
        parse_poset("poset 2\ncover 0 1\ncover 1 0\n")


def test_family_parse_basics():
    fam = parse_family("family 3\nset\nset 0 2\n")
    assert fam.n == 3
    assert fam.members == (0, 0b101)
    assert parse_family("family 0\nset\n").members == (0,)


def test_family_parse_errors():
    with pytest.raises(ParseError, match="missing 'family <n>' header"):
        parse_family("\n\n")
    with pytest.raises(ParseError, match="expected 'set <elements...>'"):
        parse_family("family 2\nmember 0\n")
    with pytest.raises(ParseError, match="must be integers"):
        parse_family("family 2\nset a\n")
    with pytest.raises(ParseError, match="out of range"):
        parse_family("family 2\nset 2\n")
    with pytest.raises(ParseError, match="strictly ascending"):
        parse_family("family 3\nset 2 0\n")
    with pytest.raises(ParseError, match="strictly ascending"):
        parse_family("family 3\nset 1 1\n")


def test_family_duplicate_warns():
    with pytest.warns(UserWarning, match="duplicate of the set on line 2"):
        fam = parse_family("family 2\nset 0\nset 0\nset 1\n")
    assert fam.members == (1, 2)


def test_family_round_trip():
    fam = SetFamily(4, [0b1010, 0, 0b1, 0b1111])
    text = serialize_family(fam)
    assert parse_family(text) == fam
    assert serialize_family(parse_family(text)) == text


def test_serialization_orders_by_elements():
    fam = SetFamily(3, [0b110, 0b1, 0b101])
    assert serialize_family(fam) == "family 3\nset 0\nset 0 2\nset 1 2\n"


def test_fixtures_are_canonical():
    for name in sorted(os.listdir(FIXTURES)):
        text = fixture_text(name)
        if name.endswith(".fam"):
            assert serialize_family(parse_family(text)) == text, name
        else:
            assert name.endswith(".poset")
            assert serialize_poset(parse_poset(text)) == text, name


def test_mask_text():
    assert mask_text(0) == "{}"
    assert mask_text(0b101) == "{0,2}"
    assert mask_text(0b11, ESCAPE_DEMO_NAMES) == "{a,b}"
    assert mask_text(0b1100000, ESCAPE_DEMO_NAMES) == "{x4,x5}"


def test_format_value():
    assert format_value(True) == "true"
    assert format_value(False) == "false"
    assert format_value(Fraction(1, 2)) == "1/2"
    assert format_value(Fraction(2)) == "2/1"
    assert format_value(5) == "5"
    assert format_value("ok") == "ok"
    assert format_value((0, 3)) == "0,3"
    assert format_value([Fraction(1, 2), True]) == "1/2,true"


def test_render_report():
    out = render_report({"b": 1, "a": Fraction(1, 2)})
    assert out == "a=1/2\nb=1\n"
    out = render_report([("z", True), ("k", (1, 2))])
    assert out == "k=1,2\nz=true\n"
