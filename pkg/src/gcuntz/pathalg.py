"""Path model of the generalized Cuntz algebra.

Intertwiner bases are realized as multiplicity-labelled paths on the fusion
graph starting at ``iota``: an edge ``(j, i, slot)`` with
``0 <= slot < N[i][j]`` is one basis isometry of ``(sigma_i, sigma_j o rho)``.
A path pair ``(p, q)`` with a common target stands for ``T_p T_q^*``.
Bases are orthonormal and words multiply by the prefix rule; associator data
of the underlying category is not modelled.

Coefficients may be any numbers; with ints/Fractions and exact dimensions
(the inner case) every operation here is exact.
"""
from __future__ import annotations

import functools
from collections import defaultdict
from dataclasses import dataclass
from numbers import Number
from typing import Iterable, Mapping, Sequence

from .fusion import FusionData, matpow, require_valid
from .spectral import SpectralProfile

__all__ = [
    "MAX_PATH_LENGTH",
    "MAX_PATHS",
    "PathLimitError",
    "Path",
    "PathPairOperator",
    "AlgebraElement",
    "SkeletonBasis",
    "enumerate_paths",
    "first_return_basis",
    "skeleton_basis",
    "multiply",
    "star",
    "embed",
    "phi_state",
    "support_expectation",
    "skeleton_expand",
    "remainder_norm",
    "remainder_bound",
    "kms_check",
    "random_element",
]

MAX_PATH_LENGTH = 16
MAX_PATHS = 10**6

Edge = tuple[int, int, int]


class PathLimitError(RuntimeError):
    """Raised when an enumeration would exceed the configured length or count cap."""


@dataclass(frozen=True, order=True)
class Path:
    source: int
    edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        at = self.source
        for frm, to, slot in self.edges:
            if frm != at:
                raise ValueError(f"edges do not chain: expected to leave {at}, got {frm}")
            if slot < 0:
                raise ValueError("negative multiplicity slot")
            at = to

    @property
    def target(self) -> int:
        return self.edges[-1][1] if self.edges else self.source

    def __len__(self) -> int:
        return len(self.edges)

    def extend(self, edges: Sequence[Edge]) -> Path:
        return Path(self.source, self.edges + tuple(edges))

    def startswith(self, other: Path) -> bool:
        return len(other.edges) <= len(self.edges) and self.edges[: len(other.edges)] == other.edges

    def suffix(self, start: int) -> tuple[Edge, ...]:
        return self.edges[start:]

    def check(self, data: FusionData) -> None:
        for frm, to, slot in self.edges:
            if slot >= data.matrix[to][frm]:
                raise ValueError(f"slot {slot} exceeds multiplicity {data.matrix[to][frm]} of {frm}->{to}")

    def label(self, data: FusionData) -> str:
        names = [data.sectors[self.source]]
        for frm, to, slot in self.edges:
            tag = f"[{slot}]" if data.matrix[to][frm] > 1 else ""
            names.append(f"{data.sectors[to]}{tag}")
        return ">".join(names)


@dataclass(frozen=True, order=True)
class PathPairOperator:
    """``T_ket T_bra^*``; ket and bra must end at the same sector."""

    ket: Path
    bra: Path

    def __post_init__(self):
        if self.ket.target != self.bra.target:
            raise ValueError(f"ket ends at {self.ket.target}, bra at {self.bra.target}")

    @property
    def target(self) -> int:
        return self.ket.target

    @property
    def degree(self) -> int:
        return len(self.ket) - len(self.bra)

    @property
    def level(self) -> tuple[int, int]:
        return len(self.ket), len(self.bra)


def _clean(terms: Mapping[PathPairOperator, Number]) -> dict[PathPairOperator, Number]:
    return {k: v for k, v in terms.items() if v != 0}


class AlgebraElement:
    """Finite linear combination of path pairs over one fusion graph.

    ``==`` compares up to the embedding ``(p, q) ~ sum_e (pe, qe)``; use
    :meth:`isclose` for floating coefficients.
    """

    __slots__ = ("data", "terms")
    __hash__ = None

    def __init__(self, data: FusionData, terms: Mapping[PathPairOperator, Number] | None = None):
        self.data = data
        self.terms = _clean(terms or {})

    @classmethod
    def pair(cls, data: FusionData, ket: Path, bra: Path, coeff: Number = 1) -> AlgebraElement:
        return cls(data, {PathPairOperator(ket, bra): coeff})

    @classmethod
    def identity(cls, data: FusionData) -> AlgebraElement:
        empty = Path(data.iota)
        return cls.pair(data, empty, empty)

    @classmethod
    def zero(cls, data: FusionData) -> AlgebraElement:
        return cls(data)

    def _check(self, other: AlgebraElement) -> None:
        if self.data != other.data:
            raise ValueError("algebra elements over different fusion data")

    def __add__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return AlgebraElement(self.data, out)

    def __neg__(self):
        return AlgebraElement(self.data, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return multiply(self, other)
        return AlgebraElement(self.data, {k: v * other for k, v in self.terms.items()})

    def __rmul__(self, scalar):
        return AlgebraElement(self.data, {k: scalar * v for k, v in self.terms.items()})

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    def star(self) -> AlgebraElement:
        return star(self)

    @property
    def degrees(self) -> set[int]:
        return {k.degree for k in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees) <= 1

    def degree(self) -> int:
        degrees = self.degrees
        if len(degrees) != 1:
            raise ValueError(f"element is not gauge-homogeneous (degrees {sorted(degrees)})")
        return degrees.pop()

    def normal_form(self) -> dict[PathPairOperator, Number]:
        """Embed every term to the deepest level of its gauge degree and merge."""
        depth: dict[int, int] = {}
        for k in self.terms:
            depth[k.degree] = max(depth.get(k.degree, 0), len(k.bra))
        out: dict[PathPairOperator, Number] = defaultdict(int)
        for k, v in self.terms.items():
            for kk in _raise_pair(self.data, k, depth[k.degree] - len(k.bra)):
                out[kk] += v
        return _clean(out)

    def isclose(self, other: AlgebraElement, tolerance: float = 0.0) -> bool:
        self._check(other)
        diff = (self - other).normal_form()
        return all(abs(v) <= tolerance for v in diff.values())

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.data == other.data and self.isclose(other)

    def __repr__(self) -> str:
        parts = [f"{v}*({k.ket.label(self.data)} | {k.bra.label(self.data)})" for k, v in sorted(self.terms.items())]
        return "AlgebraElement(" + (" + ".join(parts) or "0") + ")"


@dataclass(frozen=True)
class SkeletonBasis:
    """First-return loops at ``iota`` grouped by length."""

    loops: dict[int, tuple[Path, ...]]

    def count(self, n: int) -> int:
        return len(self.loops.get(n, ()))


@functools.lru_cache(maxsize=None)
def _out_edges(data: FusionData, source: int) -> tuple[Edge, ...]:
    return tuple(data.out_edges(source))


@functools.lru_cache(maxsize=4096)
def _walks(data: FusionData, start: int, length: int, avoid: int | None = None) -> tuple[tuple[Edge, ...], ...]:
    """All edge sequences of ``length`` from ``start``; ``avoid`` is never entered."""
    if length == 0:
        return ((),)
    out = []
    for e in _out_edges(data, start):
        if e[1] == avoid:
            continue
        for rest in _walks(data, e[1], length - 1, avoid):
            out.append((e,) + rest)
    return tuple(out)


def _raise_pair(data: FusionData, pair: PathPairOperator, steps: int) -> Iterable[PathPairOperator]:
    if steps == 0:
        return (pair,)
    return (
        PathPairOperator(pair.ket.extend(w), pair.bra.extend(w))
        for w in _walks(data, pair.target, steps)
    )


def _check_caps(n: int, count: int, max_len: int, max_paths: int) -> None:
    if n > max_len:
        raise PathLimitError(f"path length {n} exceeds the cap {max_len}")
    if count > max_paths:
        raise PathLimitError(f"{count} paths exceed the cap {max_paths}")


def enumerate_paths(
    data: FusionData,
    n: int,
    target: int,
    max_len: int = MAX_PATH_LENGTH,
    max_paths: int = MAX_PATHS,
) -> list[Path]:
    """All paths of length ``n`` from ``iota`` to ``target``, in lexicographic order."""
    require_valid(data)
    if n < 0:
        raise ValueError("path length must be non-negative")
    count = matpow(data.matrix, n)[target][data.iota]
    _check_caps(n, count, max_len, max_paths)
    # alive[k][v]: some path of length k leads from v to target
    alive = [[v == target for v in range(data.size)]]
    for _ in range(n):
        prev = alive[-1]
        alive.append([any(prev[i] and data.matrix[i][v] for i in range(data.size)) for v in range(data.size)])

    out: list[Path] = []

    def walk(at: int, edges: tuple[Edge, ...], left: int):
        if left == 0:
            out.append(Path(data.iota, edges))
            return
        for e in _out_edges(data, at):
            if alive[left - 1][e[1]]:
                walk(e[1], edges + (e,), left - 1)

    if alive[n][data.iota]:
        walk(data.iota, (), n)
    return out


def first_return_basis(
    data: FusionData,
    n: int,
    max_len: int = MAX_PATH_LENGTH,
    max_paths: int = MAX_PATHS,
) -> list[Path]:
    """Loops ``iota -> iota`` of length ``n`` that do not visit ``iota`` in between."""
    from .series import k_direct

    if n < 1:
        raise ValueError("first-return loops have length >= 1")
    iota = data.iota
    _check_caps(n, k_direct(data, n), max_len, max_paths)
    if n == 1:
        return [Path(iota, (e,)) for e in _out_edges(data, iota) if e[1] == iota]
    # alive[k][v]: from v a walk of k steps outside iota then one step into iota exists
    alive = [[v != iota and data.matrix[iota][v] > 0 for v in range(data.size)]]
    for _ in range(n - 2):
        prev = alive[-1]
        alive.append([
            v != iota and any(prev[i] and data.matrix[i][v] for i in range(data.size))
            for v in range(data.size)
        ])
    out: list[Path] = []

    def walk(at: int, edges: tuple[Edge, ...], left: int):
        if left == 1:
            for e in _out_edges(data, at):
                if e[1] == iota:
                    out.append(Path(iota, edges + (e,)))
            return
        for e in _out_edges(data, at):
            if e[1] != iota and alive[left - 2][e[1]]:
                walk(e[1], edges + (e,), left - 1)

    walk(iota, (), n)
    return out


def skeleton_basis(data: FusionData, max_len: int) -> SkeletonBasis:
    return SkeletonBasis({n: tuple(first_return_basis(data, n, max_len=max(max_len, MAX_PATH_LENGTH)))
                          for n in range(1, max_len + 1)})


def _pair_product(x: PathPairOperator, y: PathPairOperator) -> PathPairOperator | None:
    p, q = x.ket, x.bra
    p2, q2 = y.ket, y.bra
    if len(q) <= len(p2):
        if p2.startswith(q):
            return PathPairOperator(p.extend(p2.suffix(len(q))), q2)
    elif q.startswith(p2):
        return PathPairOperator(p, q2.extend(q.suffix(len(p2))))
    return None


def multiply(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    x._check(y)
    out: dict[PathPairOperator, Number] = defaultdict(int)
    for kx, vx in x.terms.items():
        for ky, vy in y.terms.items():
            k = _pair_product(kx, ky)
            if k is not None:
                out[k] += vx * vy
    return AlgebraElement(x.data, out)


def _conj(v):
    return v.conjugate() if hasattr(v, "conjugate") else v


def star(x: AlgebraElement) -> AlgebraElement:
    return AlgebraElement(x.data, {PathPairOperator(k.bra, k.ket): _conj(v) for k, v in x.terms.items()})


def embed(x: AlgebraElement, steps: int = 1) -> AlgebraElement:
    """Raise every term by ``steps`` levels: ``(p, q) -> sum_w (p w, q w)``."""
    out: dict[PathPairOperator, Number] = defaultdict(int)
    for k, v in x.terms.items():
        for kk in _raise_pair(x.data, k, steps):
            out[kk] += v
    return AlgebraElement(x.data, out)


def phi_state(x: AlgebraElement, dims: Sequence, d_rho) -> Number:
    """Gauge-invariant state: ``phi(p, p) = F[target] / d_rho**len(p)``, zero off the diagonal."""
    total = 0
    for k, v in x.terms.items():
        if k.ket == k.bra:
            total += v * dims[k.target] / d_rho ** len(k.ket)
    return total


def support_expectation(data: FusionData, profile: SpectralProfile, n: int) -> float:
    """``phi(E_n)`` for the support projection ``E_n`` of the length-``n`` skeleton layer."""
    terms = {PathPairOperator(loop, loop): 1 for loop in first_return_basis(data, n)}
    return phi_state(AlgebraElement(data, terms), profile.dims, profile.d_rho)


def skeleton_expand(x: AlgebraElement, depth: int) -> tuple[AlgebraElement, AlgebraElement]:
    """Split ``x`` into loop pairs plus a remainder that stayed off ``iota`` for ``depth`` steps.

    Terms ending at ``iota`` are already pairs of ``iota``-loops.  Every other
    term is pushed one edge further per step; pieces that land on ``iota``
    move to the approximant, the rest carry on.  ``approx + remainder == x``
    holds exactly in the algebra.
    """
    data, iota = x.data, x.data.iota
    approx: dict[PathPairOperator, Number] = defaultdict(int)
    frontier: dict[PathPairOperator, Number] = defaultdict(int)
    for k, v in x.terms.items():
        (approx if k.target == iota else frontier)[k] += v
    for _ in range(depth):
        nxt: dict[PathPairOperator, Number] = defaultdict(int)
        for k, v in frontier.items():
            for e in _out_edges(data, k.target):
                kk = PathPairOperator(k.ket.extend((e,)), k.bra.extend((e,)))
                (approx if e[1] == iota else nxt)[kk] += v
        frontier = nxt
    return AlgebraElement(data, approx), AlgebraElement(data, frontier)


def remainder_norm(remainder: AlgebraElement, profile: SpectralProfile) -> float:
    """Squared Hilbert norm ``phi(r^* r)`` of a remainder."""
    value = phi_state(star(remainder) * remainder, profile.dims, profile.d_rho)
    return float(getattr(value, "real", value))


def remainder_bound(x: AlgebraElement, depth: int, profile: SpectralProfile) -> float:
    """Bound on ``remainder_norm`` after ``depth`` expansion steps of ``x``.

    Each term ``c (p, q)`` off ``iota`` leaves a remainder of squared norm at
    most ``|c|^2 env(R) / d^len(q)``; the triangle inequality combines terms.
    """
    d = profile.d_rho
    root = sum(abs(v) / d ** (len(k.bra) / 2) for k, v in x.terms.items() if k.target != x.data.iota)
    return root**2 * profile.envelope(depth)


def kms_check(x: AlgebraElement, y: AlgebraElement, profile: SpectralProfile, tolerance: float = 1e-9):
    """Compare ``phi(x y)`` with ``d^(n - m) phi(y x)`` for ``x`` of bra length n, ket length m."""
    g = x.degree()
    dims, d = profile.dims, profile.d_rho
    lhs = phi_state(x * y, dims, d)
    rhs = d ** (-g) * phi_state(y * x, dims, d)
    return lhs, rhs, abs(lhs - rhs) <= tolerance * max(1.0, abs(lhs), abs(rhs))


def random_element(
    data: FusionData,
    rng,
    terms: int = 4,
    max_len: int = 3,
    degree: int | None = None,
    complex_coeffs: bool = True,
) -> AlgebraElement:
    """Random element built from paths of length ``<= max_len``.

    With ``degree`` set, every term has ket length minus bra length equal to it.
    """
    by_target: dict[tuple[int, int], list[Path]] = {}
    for n in range(max_len + 1):
        for t in range(data.size):
            by_target[n, t] = enumerate_paths(data, n, t)
    out: dict[PathPairOperator, Number] = defaultdict(int)
    attempts = 0
    while len(out) < terms and attempts < 50 * terms:
        attempts += 1
        if degree is None:
            m, n = rng.integers(0, max_len + 1, size=2)
        else:
            lo, hi = max(0, -degree), min(max_len, max_len - degree)
            if lo > hi:
                raise ValueError(f"degree {degree} impossible with max_len {max_len}")
            n = int(rng.integers(lo, hi + 1))
            m = n + degree
        t = int(rng.integers(0, data.size))
        kets, bras = by_target[int(m), t], by_target[int(n), t]
        if not kets or not bras:
            continue
        ket = kets[int(rng.integers(len(kets)))]
        bra = bras[int(rng.integers(len(bras)))]
        c = complex(rng.normal(), rng.normal()) if complex_coeffs else float(rng.normal())
        out[PathPairOperator(ket, bra)] += c
    return AlgebraElement(data, out)
