import json
from fractions import Fraction

import pytest

from membercover import (
    Halfplane,
    Point,
    UnitSquare,
    generate,
    parse_instance,
    serialize_instance,
)
from membercover.instances import InstanceParseError


MINIMAL_SQUARES = '{"kind":"squares","S":[["1/2","1/2"]],"Sprime":[],"ranges":[[1,1]]}'


def test_parse_minimal():
    doc = parse_instance(MINIMAL_SQUARES)
    assert doc.kind == "squares"
    assert doc.s == (Point.of("1/2", "1/2"),)
    assert doc.ranges[0] == UnitSquare(0, Point.of(1, 1))


def test_rational_is_exact():
    doc = parse_instance('{"kind":"squares","S":[["1/3",0]],"Sprime":[],"ranges":[]}')
    assert doc.s[0].x == Fraction(1, 3)


def test_float_rejected():
    with pytest.raises(InstanceParseError):
        parse_instance('{"kind":"squares","S":[[0.5,0]],"Sprime":[],"ranges":[]}')


def test_zero_normal_names_range():
    with pytest.raises(InstanceParseError) as err:
        parse_instance('{"kind":"halfplanes","S":[],"Sprime":[],"ranges":[[1,1,0],[0,0,3]]}')
    assert "1" in str(err.value)


def test_bad_json_reports_line():
    with pytest.raises(InstanceParseError) as err:
        parse_instance('{"kind": "squares",\n broken')
    assert err.value.line == 2


def test_roundtrip_canonical():
    doc = parse_instance(MINIMAL_SQUARES)
    text = serialize_instance(doc)
    again = parse_instance(text)
    assert again == doc
    assert serialize_instance(again) == text


def test_roundtrip_halfplanes():
    doc = generate("halfplanes", n_points=4, n_ranges=5, seed=3)
    text = serialize_instance(doc)
    assert parse_instance(text) == doc


def test_generator_deterministic():
    a = generate("squares", n_points=5, n_ranges=6, seed=7)
    b = generate("squares", n_points=5, n_ranges=6, seed=7)
    assert serialize_instance(a) == serialize_instance(b)
    c = generate("squares", n_points=5, n_ranges=6, seed=8)
    assert serialize_instance(a) != serialize_instance(c)


def test_generator_zero_ranges():
    doc = generate("squares", n_points=2, n_ranges=0, seed=1)
    assert doc.ranges == ()


def test_generator_sweep_valid():
    for seed in range(500):
        kind = "squares" if seed % 2 else "halfplanes"
        doc = generate(kind, n_points=3, n_ranges=4, extent=3, seed=seed)
        again = parse_instance(serialize_instance(doc))
        assert again == doc
        assert all(isinstance(r, (UnitSquare, Halfplane)) for r in doc.ranges)
        if kind == "halfplanes":
            corners = [(0, 0), (3, 0), (0, 3), (3, 3)]
            for h in doc.ranges:
                values = [h.a * cx + h.b * cy + h.c for cx, cy in corners]
                # boundary line meets the extent box
                assert min(values) <= 0 <= max(values)


def test_digest_stable():
    doc = parse_instance(MINIMAL_SQUARES)
    assert doc.digest() == parse_instance(serialize_instance(doc)).digest()
