"""Perron-Frobenius analysis of a fusion matrix.

The quantum dimensions ``F`` satisfy ``d(sigma_j) d(rho) = sum_i N[i][j] d(sigma_i)``,
i.e. ``F`` is the Perron eigenvector of the transpose ``N^T``.  For a
self-conjugate ``rho`` (symmetric ``N``) this is the same as ``N F = d F``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .fusion import (
    FusionData,
    QuantumDimensions,
    ReducedFusion,
    identity,
    is_zero,
    matmul,
    matvec,
    reduced_matrix,
    require_valid,
)

__all__ = [
    "DEFAULT_TOLERANCE",
    "MAX_ITERATIONS",
    "ConvergenceError",
    "Classification",
    "SpectralProfile",
    "Lemma41Result",
    "perron",
    "power_iteration",
    "nilpotency_index",
    "spectral_radius",
    "classify",
    "kms_temperature",
    "lemma41_partial_sums",
]

DEFAULT_TOLERANCE = 1e-12
MAX_ITERATIONS = 10**6
# window of matrix powers used to bound sup_R ||N_red^R|| / r^R
DECAY_WINDOW = 64


class ConvergenceError(ArithmeticError):
    pass


class Classification(str, enum.Enum):
    EXCEPTIONAL = "exceptional"
    GENERIC = "generic"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class SpectralProfile:
    d_rho: float
    dims: QuantumDimensions
    nilpotency_index: int | None
    classification: Classification
    reduced_radius: float
    reduced_opnorm: float
    decay_rate: float
    kms_temperature: float | None
    decay_constant: float
    data: FusionData = field(repr=False, compare=False)

    @property
    def reduced(self) -> ReducedFusion:
        return reduced_matrix(self.data)

    def envelope(self, steps: int) -> float:
        """Upper bound for ``sum_i F_i (N_red^R)[i][j] / d^R`` over all ``j``.

        Equals ``C (reduced_radius / d_rho)^R`` in the generic case; in the
        nilpotent case it is ``C / d^R`` below the nilpotency index and zero
        from there on.
        """
        if self.nilpotency_index is not None:
            if steps >= self.nilpotency_index:
                return 0.0
            return self.decay_constant / self.d_rho**steps
        return self.decay_constant * self.decay_rate**steps


def power_iteration(matrix, tolerance: float = DEFAULT_TOLERANCE, max_iter: int = MAX_ITERATIONS):
    """Dominant eigenpair of a non-negative irreducible matrix.

    Iterates with ``A + 1`` so that periodic (imprimitive) matrices converge
    too; the shift does not move the eigenvector.  Stops on the residual
    ``||A x - lam x|| <= tolerance ||x||`` with ``lam`` the Rayleigh quotient.
    """
    a = np.asarray(matrix, dtype=float)
    n = a.shape[0]
    x = np.ones(n) / math.sqrt(n)
    for _ in range(max_iter):
        y = a @ x
        lam = float(x @ y) / float(x @ x)
        if np.linalg.norm(y - lam * x) <= tolerance * np.linalg.norm(x):
            return lam, x
        x = y + x
        x /= np.linalg.norm(x)
    raise ConvergenceError(f"power iteration did not reach residual {tolerance} in {max_iter} steps")


def perron(data: FusionData, tolerance: float = DEFAULT_TOLERANCE) -> tuple[float, QuantumDimensions]:
    require_valid(data)
    d_rho, x = power_iteration(data.transpose(), tolerance)
    f = x / x[data.iota]
    if not np.all(f > 0):
        raise ConvergenceError(f"Frobenius vector not positive: {f}")
    values = [float(v) for v in f]
    values[data.iota] = 1.0
    return d_rho, QuantumDimensions(tuple(values), tolerance)


def nilpotency_index(red: ReducedFusion | Sequence[Sequence[int]]) -> int | None:
    """Smallest ``m >= 1`` with ``M**m == 0``, or ``None``.

    An ``s x s`` nilpotent matrix has index at most ``s``, so ``s`` powers suffice.
    """
    m = red.matrix if isinstance(red, ReducedFusion) else tuple(tuple(r) for r in red)
    s = len(m)
    power = identity(s)
    for k in range(1, s + 1):
        power = matmul(power, m)
        if is_zero(power):
            return k
    return None


def _components(matrix: Sequence[Sequence[int]], vertices: list[int]) -> list[list[int]]:
    """Strongly connected components of the graph ``j -> i`` when ``matrix[i][j] > 0``."""
    reach = {}
    for v in vertices:
        seen, stack = {v}, [v]
        while stack:
            j = stack.pop()
            for i in vertices:
                if matrix[i][j] > 0 and i not in seen:
                    seen.add(i)
                    stack.append(i)
        reach[v] = seen
    comps, done = [], set()
    for v in vertices:
        if v in done:
            continue
        comp = sorted(u for u in reach[v] if v in reach[u])
        done.update(comp)
        comps.append(comp)
    return comps


def spectral_radius(matrix: Sequence[Sequence[int]], tolerance: float = DEFAULT_TOLERANCE) -> float:
    """Spectral radius of a non-negative integer matrix.

    The spectrum is the union of the spectra of the strongly connected
    blocks, each of which is irreducible, so the radius is the largest of
    their Perron roots.
    """
    s = len(matrix)
    best = 0.0
    for comp in _components(matrix, list(range(s))):
        block = [[matrix[i][j] for j in comp] for i in comp]
        if len(comp) == 1:
            best = max(best, float(block[0][0]))
        else:
            lam, _ = power_iteration(block, tolerance)
            best = max(best, lam)
    return best


def kms_temperature(d_rho: float) -> float | None:
    if d_rho <= 1.0 + 1e-9:
        return None
    return 2 * math.pi / math.log(d_rho)


def _decay_constant(red, dims, iota: int, nilp: int | None, radius: float) -> float:
    f_q = np.array([v for i, v in enumerate(dims) if i != iota])
    fq_norm = float(np.linalg.norm(f_q)) if f_q.size else 0.0
    m = np.array(red, dtype=float)
    power = np.eye(len(red))
    window = nilp if nilp is not None else DECAY_WINDOW
    best = 0.0
    for steps in range(window):
        norm = float(np.linalg.norm(power, 2))
        scale = 1.0 if nilp is not None else radius**steps
        best = max(best, norm / scale)
        power = power @ m
    return fq_norm * best


def classify(data: FusionData, tolerance: float = DEFAULT_TOLERANCE) -> SpectralProfile:
    d_rho, dims = perron(data, tolerance)
    red = reduced_matrix(data)
    nilp = nilpotency_index(red)
    if nilp is not None:
        radius = 0.0
    else:
        radius = spectral_radius(red.matrix, tolerance)
    opnorm = float(np.linalg.norm(np.array(red.matrix, dtype=float), 2))
    return SpectralProfile(
        d_rho=d_rho,
        dims=dims,
        nilpotency_index=nilp,
        classification=Classification.EXCEPTIONAL if nilp is not None else Classification.GENERIC,
        reduced_radius=radius,
        reduced_opnorm=opnorm,
        decay_rate=radius / d_rho,
        kms_temperature=kms_temperature(d_rho),
        decay_constant=_decay_constant(red.matrix, dims, data.iota, nilp, radius),
        data=data,
    )


@dataclass(frozen=True)
class Lemma41Result:
    """Partial sums ``S_T = sum_{n<=T} dim(k_n) / d^n`` for ``T = 1..terms``.

    ``residual_weights[T-1]`` is the Frobenius weight of the walks that left
    ``iota`` and have not returned after ``T`` steps.  Because ``F`` is a
    Perron vector, ``S_T + W_T == 1`` holds exactly at every ``T``, so it is
    the exact tail of the series; ``envelope`` bounds it by
    ``C (reduced_radius / d)^(T-1)``.
    """

    partial_sums: tuple[float, ...]
    residual_weights: tuple[float, ...]
    envelope: tuple[float, ...]
    k_dims: tuple[int, ...]
    monotone: bool
    bounded: bool
    closure_residual: float

    @property
    def final(self) -> float:
        return self.partial_sums[-1]


def lemma41_partial_sums(
    data: FusionData,
    profile: SpectralProfile,
    terms: int,
    tolerance: float = 1e-9,
) -> Lemma41Result:
    require_valid(data)
    if terms < 1:
        raise ValueError("need at least one term")
    iota, d = data.iota, profile.d_rho
    red = reduced_matrix(data).matrix
    row = data.matrix[iota]
    v = [data.matrix[i][iota] if i != iota else 0 for i in range(data.size)]
    u_norm = math.sqrt(sum(x * x for x in v))
    f = profile.dims.values

    sums, weights, envelope, kdims = [], [], [], []
    total = 0.0
    for t in range(1, terms + 1):
        if t == 1:
            k = row[iota]
        else:
            k = sum(row[j] * v[j] for j in range(data.size))
            v = matvec(red, v)
        kdims.append(k)
        total += k / d**t
        sums.append(total)
        weights.append(sum(f[i] * v[i] for i in range(data.size) if i != iota) / d**t)
        envelope.append(profile.envelope(t - 1) * u_norm / d)

    monotone = all(b >= a for a, b in zip(sums, sums[1:]))
    bounded = max(sums) <= 1 + tolerance
    closure = max(abs(s + w - 1) for s, w in zip(sums, weights))
    return Lemma41Result(tuple(sums), tuple(weights), tuple(envelope), tuple(kdims), monotone, bounded, closure)
