"""Fusion data from finite-group character tables.

For a representation ``D`` of a finite group, the sectors are the irreducible
representations occurring in tensor powers of ``D`` and the fusion matrix
records ``chi_j * chi_D`` decomposed into irreducibles.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Sequence

from .fusion import FusionData

__all__ = [
    "CharacterTableError",
    "CharacterTable",
    "ROUNDING_TOLERANCE",
    "fusion_from_characters",
    "invariant_dims",
    "builtin_table",
    "BUILTIN_TABLES",
]

ROUNDING_TOLERANCE = 1e-6
ORTHOGONALITY_TOLERANCE = 1e-9


class CharacterTableError(ValueError):
    pass


@dataclass(frozen=True)
class CharacterTable:
    group_name: str
    class_sizes: tuple[int, ...]
    characters: tuple[tuple[complex, ...], ...]
    irrep_names: tuple[str, ...]

    def __init__(self, group_name, class_sizes, characters, irrep_names):
        object.__setattr__(self, "group_name", group_name)
        object.__setattr__(self, "class_sizes", tuple(class_sizes))
        object.__setattr__(self, "characters", tuple(tuple(complex(c) for c in row) for row in characters))
        object.__setattr__(self, "irrep_names", tuple(irrep_names))

    @property
    def order(self) -> int:
        return sum(self.class_sizes)

    def index(self, name: str) -> int:
        try:
            return self.irrep_names.index(name)
        except ValueError:
            raise KeyError(f"unknown irrep {name!r} in {self.group_name}") from None

    def inner(self, a: Sequence[complex], b: Sequence[complex]) -> complex:
        """``<a, b> = (1/|G|) sum_c |c| a(c) conj(b(c))``."""
        return sum(n * x * y.conjugate() for n, x, y in zip(self.class_sizes, a, b)) / self.order

    def defects(self) -> list[str]:
        out = []
        k = len(self.class_sizes)
        if any((not isinstance(n, int)) or n <= 0 for n in self.class_sizes):
            out.append("class sizes must be positive integers")
        if len(self.characters) != len(self.irrep_names):
            out.append(f"{len(self.characters)} character rows for {len(self.irrep_names)} irrep names")
        if len(set(self.irrep_names)) != len(self.irrep_names):
            out.append("irrep names are not distinct")
        for name, row in zip(self.irrep_names, self.characters):
            if len(row) != k:
                out.append(f"character {name} has {len(row)} values for {k} classes")
        if out:
            return out
        for name, row in zip(self.irrep_names, self.characters):
            dim = row[0]
            if abs(dim.imag) > ORTHOGONALITY_TOLERANCE or dim.real < 0.5 or abs(dim.real - round(dim.real)) > ORTHOGONALITY_TOLERANCE:
                out.append(f"character {name} has non-integer dimension {dim}")
        for i, a in enumerate(self.characters):
            for j, b in enumerate(self.characters):
                expected = 1.0 if i == j else 0.0
                if abs(self.inner(a, b) - expected) > ORTHOGONALITY_TOLERANCE:
                    out.append(f"rows {self.irrep_names[i]} and {self.irrep_names[j]} violate orthogonality")
        if not any(all(abs(c - 1) <= ORTHOGONALITY_TOLERANCE for c in row) for row in self.characters):
            out.append("no trivial character")
        return out

    def validate(self) -> None:
        problems = self.defects()
        if problems:
            raise CharacterTableError(f"invalid character table {self.group_name}: " + "; ".join(problems))

    def trivial_index(self) -> int:
        for i, row in enumerate(self.characters):
            if all(abs(c - 1) <= ORTHOGONALITY_TOLERANCE for c in row):
                return i
        raise CharacterTableError("no trivial character")


def _round_multiplicity(value: complex, what: str) -> int:
    nearest = round(value.real)
    if abs(value - nearest) > ROUNDING_TOLERANCE or nearest < 0:
        raise CharacterTableError(f"{what} = {value} is not a non-negative integer")
    return int(nearest)


def fusion_from_characters(table: CharacterTable, rep: int | str) -> FusionData:
    """Fusion data for tensoring with the irrep ``rep``, with the trivial irrep as ``iota``.

    Only irreps reachable from the trivial one by repeated tensoring are kept,
    in table order.
    """
    table.validate()
    d = table.index(rep) if isinstance(rep, str) else rep
    chi_d = table.characters[d]
    r = len(table.characters)
    full = [[0] * r for _ in range(r)]
    for j, chi_j in enumerate(table.characters):
        prod = [a * b for a, b in zip(chi_j, chi_d)]
        for i, chi_i in enumerate(table.characters):
            full[i][j] = _round_multiplicity(
                table.inner(prod, chi_i),
                f"multiplicity of {table.irrep_names[i]} in {table.irrep_names[j]} x {table.irrep_names[d]}",
            )
    triv = table.trivial_index()
    seen, frontier = {triv}, [triv]
    while frontier:
        j = frontier.pop()
        for i in range(r):
            if full[i][j] and i not in seen:
                seen.add(i)
                frontier.append(i)
    keep = sorted(seen)
    return FusionData(
        [table.irrep_names[i] for i in keep],
        keep.index(triv),
        [[full[i][j] for j in keep] for i in keep],
    )


def invariant_dims(table: CharacterTable, rep: int | str, n: int) -> int:
    """Dimension of the invariant subspace of ``D^{(x) n}``: ``(1/|G|) sum_c |c| chi_D(c)^n``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    table.validate()
    d = table.index(rep) if isinstance(rep, str) else rep
    total = sum(size * chi**n for size, chi in zip(table.class_sizes, table.characters[d]))
    return _round_multiplicity(total / table.order, f"invariants in {table.irrep_names[d]}^{n}")


_w = cmath.exp(2j * cmath.pi / 3)

BUILTIN_TABLES: dict[str, CharacterTable] = {
    "Z2": CharacterTable("Z2", [1, 1], [[1, 1], [1, -1]], ["triv", "sgn"]),
    "Z3": CharacterTable(
        "Z3", [1, 1, 1],
        [[1, 1, 1], [1, _w, _w**2], [1, _w**2, _w]],
        ["triv", "omega", "omega2"],
    ),
    # classes: identity, transpositions, 3-cycles
    "S3": CharacterTable("S3", [1, 3, 2], [[1, 1, 1], [1, -1, 1], [2, 0, -1]], ["triv", "sgn", "std"]),
}


def builtin_table(name: str) -> CharacterTable:
    try:
        return BUILTIN_TABLES[name]
    except KeyError:
        raise KeyError(f"no built-in character table {name!r}; have {sorted(BUILTIN_TABLES)}") from None
