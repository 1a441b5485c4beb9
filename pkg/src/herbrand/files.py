"""JSON file formats for modules and G-sets.

A module file looks like::

    {"n": 2, "generators": 2, "relations": [[2, 0]], "sigma": [[1, 1], [0, -1]]}

``sigma`` is a list of ``generators`` rows acting on column vectors.  Any
integer may be given as a decimal string so that big values survive JSON
readers with 53-bit numbers.
"""

from __future__ import annotations

import json
import re

from .cohomology import CyclicModule, validate_module
from .errors import HerbrandError, ParseError
from .permutation import GSet

SAFE_INT = 2 ** 53


def _position(text: str, key: str) -> tuple[int, int]:
    m = re.search(r'"%s"' % re.escape(key), text)
    if not m:
        return 1, 1
    line = text.count("\n", 0, m.start()) + 1
    column = m.start() - (text.rfind("\n", 0, m.start()) + 1) + 1
    return line, column


def _load(text: str) -> dict:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(data, dict):
        raise ParseError("top level must be an object", 1, 1)
    return data


def _int(value, text: str, key: str) -> int:
    if isinstance(value, bool):
        raise ParseError(f"{key}: expected an integer", *_position(text, key))
    if isinstance(value, int):
        return value
    if isinstance(value, str) and re.fullmatch(r"\s*[-+]?\d+\s*", value):
        return int(value)
    raise ParseError(f"{key}: expected an integer, got {value!r}", *_position(text, key))


def _rows(value, width: int, text: str, key: str) -> list[list[int]]:
    if not isinstance(value, list):
        raise ParseError(f"{key}: expected a list of rows", *_position(text, key))
    rows = []
    for i, row in enumerate(value):
        if not isinstance(row, list) or len(row) != width:
            raise ParseError(f"{key}[{i}]: expected a row of length {width}",
                             *_position(text, key))
        rows.append([_int(x, text, key) for x in row])
    return rows


def parse_module_file(text: str) -> CyclicModule:
    data = _load(text)
    for key in ("n", "generators", "sigma"):
        if key not in data:
            raise ParseError(f"missing field {key!r}", 1, 1)
    n = _int(data["n"], text, "n")
    k = _int(data["generators"], text, "generators")
    if n < 1 or k < 0:
        raise ParseError("n must be positive and generators nonnegative", *_position(text, "n"))
    sigma = _rows(data["sigma"], k, text, "sigma")
    if len(sigma) != k:
        raise ParseError(f"sigma: expected {k} rows, got {len(sigma)}", *_position(text, "sigma"))
    relations = _rows(data.get("relations", []), k, text, "relations")
    module = CyclicModule.build(n, sigma, relations)
    report = validate_module(module)
    if not report.valid:
        raise HerbrandError(
            f"{report.code} at generator {report.generator}, witness {list(report.witness or ())}",
            "VALIDATION_ERROR")
    return module


def json_int(v: int):
    return v if -SAFE_INT < v < SAFE_INT else str(v)


def module_to_dict(module: CyclicModule) -> dict:
    return {
        "n": module.n,
        "generators": module.k,
        "relations": [[json_int(x) for x in r] for r in module.relations.basis],
        "sigma": [[json_int(x) for x in r] for r in module.sigma],
    }


def dump_module(module: CyclicModule) -> str:
    return json.dumps(module_to_dict(module), separators=(", ", ": "))


def parse_gset(spec: str) -> GSet:
    """Either inline ``n:i0,i1,...`` or JSON ``{"n": .., "image": [..]}``."""
    spec = spec.strip()
    if spec.startswith("{"):
        data = _load(spec)
        if "n" not in data or "image" not in data:
            raise ParseError("G-set needs 'n' and 'image'", 1, 1)
        image = data["image"]
        if not isinstance(image, list):
            raise ParseError("image: expected a list", *_position(spec, "image"))
        return GSet.of(_int(data["n"], spec, "n"), [_int(x, spec, "image") for x in image])
    m = re.fullmatch(r"(\d+)\s*:\s*([\d,\s]*)", spec)
    if not m:
        raise ParseError(f"cannot read G-set {spec!r}; expected n:i0,i1,...", 1, 1)
    image = [int(x) for x in m.group(2).replace(",", " ").split()]
    return GSet.of(int(m.group(1)), image)


def dump_gset(x: GSet) -> str:
    return f"{x.n}:" + ",".join(map(str, x.image))
