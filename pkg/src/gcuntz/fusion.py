"""Fusion data for right multiplication by an endomorphism.

A :class:`FusionData` holds the sector labels, the index of the distinguished
sector ``iota`` and the integer matrix ``N`` with ``N[i][j]`` the multiplicity
of sector ``i`` inside ``sector_j o rho``.  Columns are indexed by the source
sector, so ``(N**n)[j][iota]`` counts paths of length ``n`` from ``iota`` to
``j`` on the fusion graph.

All matrix arithmetic in this module is exact (Python integers).
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from numbers import Integral
from typing import Sequence

__all__ = [
    "FusionDataError",
    "FusionData",
    "ReducedFusion",
    "QuantumDimensions",
    "Defect",
    "ValidationResult",
    "validate",
    "require_valid",
    "reduced_matrix",
    "reachable_sectors",
    "coreachable_sectors",
    "matmul",
    "matvec",
    "matpow",
    "identity",
    "is_zero",
]

IntMatrix = tuple[tuple[int, ...], ...]


class FusionDataError(ValueError):
    """Raised when an operation receives fusion data that fails validation."""


@dataclass(frozen=True)
class FusionData:
    sectors: tuple[str, ...]
    iota: int
    matrix: IntMatrix

    def __init__(self, sectors: Sequence[str], iota: int, matrix: Sequence[Sequence[int]]):
        # Stored as given; call validate() before relying on any invariant.
        object.__setattr__(self, "sectors", tuple(sectors))
        object.__setattr__(self, "iota", iota)
        object.__setattr__(self, "matrix", tuple(tuple(row) for row in matrix))

    @property
    def size(self) -> int:
        return len(self.sectors)

    def index(self, label: str) -> int:
        try:
            return self.sectors.index(label)
        except ValueError:
            raise KeyError(f"unknown sector {label!r}") from None

    def out_edges(self, source: int) -> list[tuple[int, int, int]]:
        """Edges ``(source, target, slot)`` leaving ``source``, in lexicographic order."""
        return [
            (source, target, slot)
            for target in range(self.size)
            for slot in range(self.matrix[target][source])
        ]

    def transpose(self) -> IntMatrix:
        return tuple(zip(*self.matrix)) if self.matrix else ()


@dataclass(frozen=True)
class ReducedFusion:
    """The fusion matrix with the ``iota`` row and column set to zero."""

    matrix: IntMatrix
    iota: int


@dataclass(frozen=True)
class QuantumDimensions:
    """Frobenius vector normalized to ``values[iota] == 1``."""

    values: tuple[float, ...]
    tolerance: float

    def __getitem__(self, i):
        return self.values[i]

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)


@dataclass(frozen=True)
class Defect:
    invariant: str
    message: str
    location: tuple = ()

    def __str__(self) -> str:
        return self.message


@dataclass(frozen=True)
class ValidationResult:
    defects: tuple[Defect, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.defects

    def __bool__(self) -> bool:
        return self.ok

    def messages(self) -> list[str]:
        return [d.message for d in self.defects]


def _is_int(x) -> bool:
    return isinstance(x, Integral) and not isinstance(x, bool)


def validate(data: FusionData) -> ValidationResult:
    """Check every structural invariant of ``data`` and collect the defects.

    Besides the shape, label and sign checks, every sector has to be reachable
    from ``iota`` and has to lead back to it.  Fusion graphs coming from a
    rational system of sectors are strongly connected, and the state and
    Perron analysis depend on that.
    """
    defects: list[Defect] = []
    s = len(data.sectors)
    if s == 0:
        defects.append(Defect("sectors", "no sectors given"))
    seen: dict[str, int] = {}
    for i, name in enumerate(data.sectors):
        if not isinstance(name, str) or not name:
            defects.append(Defect("sectors", f"sector {i} has an empty or non-text name", (i,)))
        elif name in seen:
            defects.append(Defect("sectors", f"duplicate sector name {name!r} at {seen[name]} and {i}", (i,)))
        else:
            seen[name] = i
    if not _is_int(data.iota) or not 0 <= data.iota < s:
        defects.append(Defect("iota", f"iota index {data.iota!r} out of range for {s} sectors"))

    shape_ok = len(data.matrix) == s
    if not shape_ok:
        defects.append(Defect("square", f"matrix has {len(data.matrix)} rows, expected {s}"))
    for i, row in enumerate(data.matrix):
        if len(row) != s:
            shape_ok = False
            defects.append(Defect("square", f"matrix row {i} has length {len(row)}, expected {s}", (i,)))
        for j, entry in enumerate(row):
            if not _is_int(entry):
                shape_ok = False
                defects.append(Defect("integer", f"non-integer multiplicity {entry!r} at ({i}, {j})", (i, j)))
            elif entry < 0:
                shape_ok = False
                defects.append(Defect("non-negative", f"negative multiplicity {entry} at ({i}, {j})", (i, j)))

    if defects or not shape_ok:
        return ValidationResult(tuple(defects))

    for j in range(s):
        if not any(data.matrix[i][j] for i in range(s)):
            defects.append(Defect("fusion", f"sector {data.sectors[j]} has empty fusion with rho (zero column)", (j,)))
    reach = reachable_sectors(data)
    for i in range(s):
        if i not in reach:
            defects.append(Defect("reachable", f"sector {data.sectors[i]} unreachable from iota", (i,)))
    back = coreachable_sectors(data)
    for i in sorted(reach - back):
        defects.append(Defect("returns", f"sector {data.sectors[i]} cannot return to iota", (i,)))
    return ValidationResult(tuple(defects))


def require_valid(data: FusionData) -> None:
    result = validate(data)
    if not result.ok:
        raise FusionDataError("invalid fusion data: " + "; ".join(result.messages()))


def _closure(start: int, neighbours) -> set[int]:
    seen = {start}
    queue = deque([start])
    while queue:
        j = queue.popleft()
        for i in neighbours(j):
            if i not in seen:
                seen.add(i)
                queue.append(i)
    return seen


def reachable_sectors(data: FusionData) -> set[int]:
    """Indices ``i`` with ``(N**n)[i][iota] > 0`` for some ``n >= 0``."""
    s = len(data.matrix)
    return _closure(data.iota, lambda j: (i for i in range(s) if data.matrix[i][j] > 0))


def coreachable_sectors(data: FusionData) -> set[int]:
    """Indices ``j`` with ``(N**n)[iota][j] > 0`` for some ``n >= 0``."""
    s = len(data.matrix)
    return _closure(data.iota, lambda i: (j for j in range(s) if data.matrix[i][j] > 0))


def _mask(matrix: Sequence[Sequence[int]], iota: int) -> IntMatrix:
    return tuple(
        tuple(0 if (i == iota or j == iota) else x for j, x in enumerate(row))
        for i, row in enumerate(matrix)
    )


def reduced_matrix(data: FusionData | ReducedFusion) -> ReducedFusion:
    if isinstance(data, ReducedFusion):
        return ReducedFusion(_mask(data.matrix, data.iota), data.iota)
    require_valid(data)
    return ReducedFusion(_mask(data.matrix, data.iota), data.iota)


def identity(s: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(s)) for i in range(s))


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> IntMatrix:
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def matvec(a: Sequence[Sequence[int]], v: Sequence[int]) -> list[int]:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def matpow(a: Sequence[Sequence[int]], n: int) -> IntMatrix:
    result = identity(len(a))
    base = tuple(tuple(r) for r in a)
    while n:
        if n & 1:
            result = matmul(result, base)
        base = matmul(base, base)
        n >>= 1
    return result


def is_zero(a: Sequence[Sequence[int]]) -> bool:
    return all(x == 0 for row in a for x in row)
