"""Built-in example documents."""
from __future__ import annotations

import re

from .documents import InputDocument
from .fusion import FusionData
from .groups import CharacterTable, builtin_table

__all__ = ["catalog", "ENTRIES"]


def _inner(d: int) -> InputDocument:
    return InputDocument("fusion", f"inner-{d}", fusion=FusionData(["id"], 0, [[d]]))


ENTRIES = {
    "inner-<d>": "inner endomorphism implemented by a d-dimensional Hilbert space; ordinary Cuntz algebra O_d",
    "a4-iota": "A4 subfactor, inclusion iota with iota rho = iota + alpha, alpha rho = iota; finite skeleton",
    "lee-yang-rho": "Lee-Yang rules rho^2 = id + rho on the endomorphism side; infinite skeleton",
    "s3-std": "S3 fixed points, rho given by the two-dimensional irrep; k(t) = t^2/(1-t-t^2)",
    "z2-sign": "Z2 fixed points, rho given by the sign representation; d(rho) = 1",
}

def _characters(name: str, group: str, rep: str) -> InputDocument:
    t = builtin_table(group)
    # the document name doubles as the table name so that emit/parse round-trips
    table = CharacterTable(name, t.class_sizes, t.characters, t.irrep_names)
    return InputDocument("character_table", name, table=table, rep=rep)


_BUILDERS = {
    "a4-iota": lambda: InputDocument("fusion", "a4-iota", fusion=FusionData(["iota", "alpha"], 0, [[1, 1], [1, 0]])),
    "lee-yang-rho": lambda: InputDocument("fusion", "lee-yang-rho", fusion=FusionData(["id", "rho"], 0, [[0, 1], [1, 1]])),
    "s3-std": lambda: _characters("s3-std", "S3", "std"),
    "z2-sign": lambda: _characters("z2-sign", "Z2", "sgn"),
}


def catalog(name: str | None = None):
    """Without a name, the ``(name, description)`` list; otherwise the document."""
    if name is None:
        return list(ENTRIES.items())
    m = re.fullmatch(r"inner-(\d+)", name)
    if m and int(m.group(1)) >= 1:
        return _inner(int(m.group(1)))
    try:
        return _BUILDERS[name]()
    except KeyError:
        raise KeyError(f"unknown catalog entry {name!r}; available: {', '.join(ENTRIES)}") from None
