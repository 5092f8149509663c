"""JSON (de)serialisation of categories, triples and morphisms.

Rationals are written as strings ``"p/q"`` (or ``"p"`` for integers) and
read back from such strings or from JSON integers.  JSON floats are
rejected so that round trips stay exact.

File layouts::

    category  {"labels": [str], "zeta": [[int]]}
    triple    {"category": <category or path>, "p": [rat], "phi": [[rat]],
               "signed": bool}
    morphism  {"source": <triple or path>, "object_map": [int],
               "codomain": <category or path>, "target": <triple or path>}

In a morphism file either ``codomain`` or ``target`` must be given; when
``target`` is present it is checked against the pushforward.  Paths are
resolved relative to the file that mentions them.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path
from typing import Optional, Union

from .category import FinCategory, validate_category
from .errors import FormatError
from .linalg import RationalMatrix
from .triples import Triple, TripleMorphism, make_morphism, validate_triple

_RATIONAL = re.compile(r"^\s*[+-]?\d+(\s*/\s*\d+)?\s*$")

PathLike = Union[str, Path]


def parse_rational(value) -> Fraction:
    if isinstance(value, bool):
        raise FormatError(f"boolean {value!r} is not a rational")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str) and _RATIONAL.match(value):
        try:
            return Fraction(value.replace(" ", ""))
        except ZeroDivisionError:
            raise FormatError(f"zero denominator in {value!r}") from None
    raise FormatError(f"expected an integer or a 'p/q' string, got {value!r}")


def format_rational(value) -> str:
    return str(Fraction(value))


def parse_vector(values) -> list:
    if not isinstance(values, list):
        raise FormatError("expected a JSON array of rationals")
    return [parse_rational(x) for x in values]


def parse_matrix(rows) -> RationalMatrix:
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise FormatError("expected a JSON array of arrays")
    return RationalMatrix.from_rows([parse_vector(r) for r in rows])


def vector_to_json(v) -> list:
    return [format_rational(x) for x in v]


def matrix_to_json(M: RationalMatrix) -> list:
    return [vector_to_json(M.row(i)) for i in range(M.rows)]


def load_json(path: PathLike):
    with open(path) as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: {exc}") from None


def _resolve(obj, base: Optional[Path]):
    """Inline objects pass through; strings are loaded as relative paths."""
    if isinstance(obj, str):
        path = Path(obj)
        if base is not None and not path.is_absolute():
            path = base / path
        return load_json(path), path.parent
    return obj, base


def category_from_json(obj, strict: bool = True) -> FinCategory:
    if not isinstance(obj, dict) or "zeta" not in obj:
        raise FormatError("category needs a 'zeta' field")
    zeta = obj["zeta"]
    labels = obj.get("labels")
    if labels is None:
        labels = [f"a{i}" for i in range(len(zeta))]
    for row in zeta:
        for x in row:
            if isinstance(x, bool) or not isinstance(x, int):
                raise FormatError(f"zeta entries must be JSON integers, got {x!r}")
    return validate_category(labels, zeta, strict=strict)


def category_to_json(C: FinCategory) -> dict:
    return {"labels": list(C.labels), "zeta": [list(row) for row in C.zeta]}


def triple_from_json(obj, base: Optional[Path] = None, strict: bool = True) -> Triple:
    if not isinstance(obj, dict) or not {"category", "p", "phi"} <= obj.keys():
        raise FormatError("triple needs 'category', 'p' and 'phi' fields")
    cat_obj, _ = _resolve(obj["category"], base)
    category = category_from_json(cat_obj, strict=strict)
    return validate_triple(
        category,
        parse_vector(obj["p"]),
        parse_matrix(obj["phi"]),
        signed=bool(obj.get("signed", False)),
    )


def triple_to_json(T: Triple) -> dict:
    return {
        "category": category_to_json(T.category),
        "p": vector_to_json(T.p),
        "phi": matrix_to_json(T.phi),
        "signed": T.signed,
    }


def morphism_from_json(obj, base: Optional[Path] = None, strict: bool = True) -> TripleMorphism:
    if not isinstance(obj, dict) or not {"source", "object_map"} <= obj.keys():
        raise FormatError("morphism needs 'source' and 'object_map' fields")
    src_obj, src_base = _resolve(obj["source"], base)
    source = triple_from_json(src_obj, src_base, strict)
    target = None
    if "target" in obj:
        tgt_obj, tgt_base = _resolve(obj["target"], base)
        target = triple_from_json(tgt_obj, tgt_base, strict)
        codomain = target.category
    elif "codomain" in obj:
        cod_obj, _ = _resolve(obj["codomain"], base)
        codomain = category_from_json(cod_obj, strict)
    else:
        raise FormatError("morphism needs a 'codomain' or a 'target'")
    object_map = obj["object_map"]
    if not isinstance(object_map, list) or not all(
        isinstance(x, int) and not isinstance(x, bool) for x in object_map
    ):
        raise FormatError("object_map must be an array of integers")
    return make_morphism(source, codomain, object_map, target)


def morphism_to_json(f: TripleMorphism) -> dict:
    return {
        "source": triple_to_json(f.source),
        "target": triple_to_json(f.target),
        "object_map": list(f.functor.object_map),
    }


def load_category(path: PathLike, strict: bool = True) -> FinCategory:
    return category_from_json(load_json(path), strict)


def load_triple(path: PathLike, strict: bool = True) -> Triple:
    return triple_from_json(load_json(path), Path(path).parent, strict)


def load_morphism(path: PathLike, strict: bool = True) -> TripleMorphism:
    return morphism_from_json(load_json(path), Path(path).parent, strict)


def load_matrix(path: PathLike) -> RationalMatrix:
    obj = load_json(path)
    if isinstance(obj, dict):
        obj = obj.get("matrix", obj.get("zeta"))
    return parse_matrix(obj)
