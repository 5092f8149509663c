import json
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from catent import generate as gen
from catent import io as cio
from catent.category import chain
from catent.errors import FormatError, NotAMorphism

DATA = Path(__file__).parent / "data"


@pytest.mark.parametrize("text,value", [
    ("3", Fraction(3)), ("-1/2", Fraction(-1, 2)), (" 4 / 6 ", Fraction(2, 3)), (7, Fraction(7)),
])
def test_parse_rational(text, value):
    assert cio.parse_rational(text) == value


@pytest.mark.parametrize("bad", [0.5, True, "1.5", "a/b", "1/0", None, [1]])
def test_parse_rational_rejects(bad):
    with pytest.raises(FormatError):
        cio.parse_rational(bad)


@given(st.fractions())
def test_rational_round_trip(x):
    assert cio.parse_rational(cio.format_rational(x)) == x


def test_format_integers_without_denominator():
    assert cio.format_rational(Fraction(4, 2)) == "2"
    assert cio.vector_to_json([Fraction(1, 3), 0]) == ["1/3", "0"]


def test_category_round_trip(rng):
    for _ in range(20):
        C = gen.random_category(rng, rng.randint(1, 5), multiplicities=True)
        obj = json.loads(json.dumps(cio.category_to_json(C)))
        assert cio.category_from_json(obj) == C


def test_triple_round_trip(rng):
    for _ in range(20):
        T = gen.random_triple(rng, 5)
        obj = json.loads(json.dumps(cio.triple_to_json(T)))
        assert cio.triple_from_json(obj) == T


def test_default_labels():
    C = cio.category_from_json({"zeta": [[1, 1], [0, 1]]})
    assert C.labels == ("a0", "a1")


def test_relative_paths():
    T = cio.load_triple(DATA / "chain2_half.json")
    assert T.category == chain(2, ["a", "b"])
    f = cio.load_morphism(DATA / "collapse_quarter.json")
    assert f.target.p.weights == (1,)


def test_morphism_target_checked():
    obj = {
        "source": "finprob_quarter.json",
        "object_map": [0, 0],
        "target": {"category": "point.json", "p": ["1"], "phi": [["2"]]},
    }
    with pytest.raises(NotAMorphism):
        cio.morphism_from_json(obj, DATA)


@pytest.mark.parametrize("obj", [
    {"labels": ["a"]},
    {"zeta": [[1.0]]},
    {"zeta": [[True]]},
])
def test_bad_category(obj):
    with pytest.raises(FormatError):
        cio.category_from_json(obj)


def test_bad_morphism():
    with pytest.raises(FormatError):
        cio.morphism_from_json({"source": "finprob_quarter.json", "object_map": [0, 0]}, DATA)
    with pytest.raises(FormatError):
        cio.morphism_from_json({"source": "finprob_quarter.json", "object_map": ["0", 0],
                                "codomain": "point.json"}, DATA)


def test_load_matrix_forms(tmp_path):
    (tmp_path / "m.json").write_text('{"matrix": [["1", "1/2"], ["1/2", "1"]]}')
    (tmp_path / "z.json").write_text('{"zeta": [[1, 1], [0, 1]]}')
    assert cio.load_matrix(tmp_path / "m.json") == cio.load_matrix(DATA / "similarity.json")
    assert cio.load_matrix(tmp_path / "z.json").tolist() == [[1, 1], [0, 1]]


def test_invalid_json(tmp_path):
    (tmp_path / "x.json").write_text("{not json")
    with pytest.raises(FormatError):
        cio.load_category(tmp_path / "x.json")
