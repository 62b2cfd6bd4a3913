"""Input documents: one JSON object per file.

Two kinds are understood::

    {"kind": "fusion", "name": "lee-yang-rho",
     "sectors": ["id", "rho"], "iota": "id",
     "matrix": [[0, 1],
                [1, 1]]}

    {"kind": "character_table", "name": "S3",
     "class_sizes": [1, 3, 2], "irrep_names": ["triv", "sgn", "std"],
     "characters": [[1, 1, 1], [1, -1, 1], [2, 0, -1]], "rep": "std"}

``matrix[i][j]`` is the multiplicity of sector ``i`` in ``sector_j o rho``.
Complex character values are written as ``[re, im]`` pairs.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from numbers import Real

from .fusion import FusionData
from .groups import CharacterTable, fusion_from_characters

__all__ = ["InputError", "InputDocument", "parse_input", "emit", "FIELDS"]

FIELDS = {
    "fusion": ("kind", "name", "sectors", "iota", "matrix"),
    "character_table": ("kind", "name", "class_sizes", "characters", "irrep_names", "rep"),
}


class InputError(ValueError):
    pass


@dataclass(frozen=True)
class InputDocument:
    kind: str
    name: str
    fusion: FusionData | None = None
    table: CharacterTable | None = None
    rep: str | None = None

    def fusion_data(self) -> FusionData:
        if self.kind == "fusion":
            return self.fusion
        return fusion_from_characters(self.table, self.rep)

    def to_dict(self) -> dict:
        if self.kind == "fusion":
            f = self.fusion
            return {
                "kind": "fusion",
                "name": self.name,
                "sectors": list(f.sectors),
                "iota": f.sectors[f.iota],
                "matrix": [list(r) for r in f.matrix],
            }
        t = self.table
        return {
            "kind": "character_table",
            "name": self.name,
            "class_sizes": list(t.class_sizes),
            "irrep_names": list(t.irrep_names),
            "characters": [[_emit_number(c) for c in row] for row in t.characters],
            "rep": self.rep,
        }


def _line_of(text: str, key: str) -> int | None:
    m = re.search(r'"%s"\s*:' % re.escape(key), text)
    return text.count("\n", 0, m.start()) + 1 if m else None


def _where(text: str, key: str) -> str:
    line = _line_of(text, key)
    return f"field {key!r}" + (f" (line {line})" if line else "")


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def _number(value, where: str) -> complex:
    if isinstance(value, Real) and not isinstance(value, bool):
        return complex(value)
    if (isinstance(value, list) and len(value) == 2
            and all(isinstance(v, Real) and not isinstance(v, bool) for v in value)):
        return complex(value[0], value[1])
    raise InputError(f"{where}: expected a number or [re, im] pair, got {value!r}")


def _emit_number(c: complex):
    if c.imag == 0:
        r = c.real
        return int(r) if r == int(r) else r
    return [c.real, c.imag]


def _string_list(doc: dict, key: str, text: str) -> list[str]:
    value = doc[key]
    if not isinstance(value, list) or not all(isinstance(v, str) and v for v in value):
        raise InputError(f"{_where(text, key)}: expected a list of non-empty strings")
    return value


def parse_input(text: str) -> InputDocument:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"syntax error at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise InputError("document must be a JSON object")
    kind = doc.get("kind")
    if kind not in FIELDS:
        raise InputError(f"{_where(text, 'kind')}: expected one of {sorted(FIELDS)}, got {kind!r}")
    allowed = FIELDS[kind]
    for key in doc:
        if key not in allowed:
            raise InputError(f"unknown {_where(text, key)} for kind {kind!r}")
    for key in allowed:
        if key not in doc:
            raise InputError(f"missing field {key!r} for kind {kind!r}")
    name = doc["name"]
    if not isinstance(name, str):
        raise InputError(f"{_where(text, 'name')}: expected a string")

    if kind == "fusion":
        sectors = _string_list(doc, "sectors", text)
        iota = doc["iota"]
        if iota not in sectors:
            raise InputError(f"{_where(text, 'iota')}: label {iota!r} is not among the sectors {sectors}")
        matrix = doc["matrix"]
        if not isinstance(matrix, list) or len(matrix) != len(sectors):
            raise InputError(f"{_where(text, 'matrix')}: expected {len(sectors)} rows")
        for i, row in enumerate(matrix):
            if not isinstance(row, list) or len(row) != len(sectors):
                got = len(row) if isinstance(row, list) else type(row).__name__
                raise InputError(
                    f"{_where(text, 'matrix')}: row {i} ({sectors[i]}) has length {got}, expected {len(sectors)}"
                )
            for j, x in enumerate(row):
                if not _is_int(x):
                    raise InputError(f"{_where(text, 'matrix')}: entry [{i}][{j}] = {x!r} is not an integer")
        return InputDocument("fusion", name, fusion=FusionData(sectors, sectors.index(iota), matrix))

    names = _string_list(doc, "irrep_names", text)
    sizes = doc["class_sizes"]
    if not isinstance(sizes, list) or not all(_is_int(n) and n > 0 for n in sizes):
        raise InputError(f"{_where(text, 'class_sizes')}: expected a list of positive integers")
    chars = doc["characters"]
    if not isinstance(chars, list) or len(chars) != len(names):
        raise InputError(f"{_where(text, 'characters')}: expected {len(names)} rows, one per irrep")
    rows = []
    for i, row in enumerate(chars):
        if not isinstance(row, list) or len(row) != len(sizes):
            raise InputError(
                f"{_where(text, 'characters')}: row {i} ({names[i]}) must have {len(sizes)} values"
            )
        rows.append([_number(v, f"{_where(text, 'characters')} row {i}") for v in row])
    rep = doc["rep"]
    if rep not in names:
        raise InputError(f"{_where(text, 'rep')}: {rep!r} is not among the irreps {names}")
    table = CharacterTable(name, sizes, rows, names)
    problems = table.defects()
    if problems:
        raise InputError(f"{_where(text, 'characters')}: " + "; ".join(problems))
    return InputDocument("character_table", name, table=table, rep=rep)


def _inline(value) -> str:
    return json.dumps(value, ensure_ascii=False)


def emit(doc: InputDocument) -> str:
    """Serialize ``doc``; nested arrays get one row per line."""
    body = doc.to_dict()
    lines = []
    for key, value in body.items():
        if isinstance(value, list) and value and isinstance(value[0], list):
            rows = ",\n    ".join(_inline(r) for r in value)
            lines.append(f'  "{key}": [\n    {rows}\n  ]')
        else:
            lines.append(f'  "{key}": {_inline(value)}')
    return "{\n" + ",\n".join(lines) + "\n}\n"
