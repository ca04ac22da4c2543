import json
import random

import pytest
from hypothesis import given, settings

from eqpatch import fincat as fc
from eqpatch import samplers
from eqpatch import serialize as ser
from eqpatch.birkhoff import Cocycle
from eqpatch.equalizer import bl_eq_context
from eqpatch.errors import ParseError
from eqpatch.patching import bl_context, random_eq_object
from eqpatch.rings import Laurent, PrimeField, Rationals

from strategies import ring_and_elements, rings, seeds


@given(ring_and_elements(n=4))
def test_element_round_trip(data):
    R, xs = data
    for x in xs:
        assert ser.decode_elem(R, json.loads(ser.dumps(ser.encode_elem(x)))) == x


@given(rings)
def test_ring_round_trip(R):
    assert ser.decode_ring(ser.encode_ring(R)) == R


@given(rings, seeds)
@settings(max_examples=20)
def test_matrix_and_module_round_trip(R, seed):
    rng = random.Random(seed)
    m = samplers.matrix(R, 2, 3, rng)
    assert ser.decode_matrix(ser.encode_matrix(m)) == m
    M = samplers.module(R, rng, 3, 2)
    assert ser.decode_module(ser.encode_module(M)) == M


@given(seeds)
@settings(max_examples=15)
def test_eq_object_round_trip(seed):
    ctx = bl_context(PrimeField(5))
    x = random_eq_object(ctx, random.Random(seed), max_rank=2, window=2)
    y = ser.decode_eq_object(ctx.eq, json.loads(ser.dumps(ser.encode_eq_object(x))))
    assert y.carriers == x.carriers and y.glue.matrix == x.glue.matrix


@given(seeds)
@settings(max_examples=15)
def test_cocycle_round_trip(seed):
    for k in (PrimeField(5), Rationals()):
        c = Cocycle(samplers.windowed_invertible(Laurent(k), 2, random.Random(seed), -2, 2))
        assert ser.decode_cocycle(ser.encode_cocycle(c)).matrix == c.matrix


def test_fincat_round_trip():
    for name, make in fc.LIBRARY.items():
        C = make()
        D = ser.decode_fincat(json.loads(ser.dumps(ser.encode_fincat(C))))
        assert len(D.objects) == len(C.objects) and len(D.morphisms) == len(C.morphisms), name


def test_dumps_is_sorted_and_stable():
    a = ser.dumps({"b": 1, "a": [2, {"d": 3, "c": 4}]})
    assert a == ser.dumps(json.loads(a))
    assert a.index('"a"') < a.index('"b"')


@pytest.mark.parametrize(
    "payload, path",
    [
        ({"field": "f5", "matrix": {"rows": 1, "cols": 1, "entries": [[{"coeffs": ["x"], "offset": 0}]]}}, "$.matrix.entries[0][0].coeffs[0]"),
        ({"field": "f5", "matrix": {"rows": 1, "cols": 2, "entries": [[{"coeffs": ["1"], "offset": 0}]]}}, "$.matrix"),
        ({"field": "f9", "matrix": {"rows": 0, "cols": 0, "entries": []}}, "$.field"),
        ({"matrix": {"rows": 0, "cols": 0, "entries": []}}, "$"),
    ],
)
def test_cocycle_parse_errors_name_the_path(payload, path):
    with pytest.raises(ParseError) as e:
        ser.decode_cocycle(payload, "$")
    assert str(e.value).startswith(path)


def test_singular_cocycle_is_a_parse_error():
    d = {"field": "f5", "matrix": {"rows": 1, "cols": 1, "entries": [[{"coeffs": ["1", "1"], "offset": 0}]]}}
    with pytest.raises(ParseError):
        ser.decode_cocycle(d, "$")


def test_eq_object_wrong_lane_count():
    ctx = bl_eq_context(PrimeField(5))
    with pytest.raises(ParseError):
        ser.decode_eq_object(ctx, {"carriers": [], "glue": {"rows": 0, "cols": 0, "entries": []}}, "$")


def test_load_json_reports_location(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{\n  "a": [1, 2,\n}')
    with pytest.raises(ParseError) as e:
        ser.load_json(str(p))
    assert "bad.json:3" in str(e.value)
