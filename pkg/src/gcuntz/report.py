"""Analysis orchestration and the verification block."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import groups, pathalg, series, spectral
from .documents import InputDocument
from .fusion import FusionData, matpow, require_valid

__all__ = ["Check", "AnalysisReport", "analyze", "verify", "SIG_DIGITS"]

SIG_DIGITS = 15
CHECK_TOLERANCE = 1e-9
SPOT_CHECK_LENGTH = 6
SPOT_CHECK_MAX_PATHS = 10**5
STATE_SAMPLES = 10


@dataclass
class Check:
    name: str
    passed: bool
    residual: float = 0.0
    detail: str = ""

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "residual": _num(self.residual), "detail": self.detail}


def _num(x):
    if x is None:
        return None
    if isinstance(x, float):
        if math.isinf(x):
            return "infinite"
        return float(f"{x:.{SIG_DIGITS}g}")
    return x


@dataclass
class AnalysisReport:
    input: dict
    order: int
    h_coeffs: list[int]
    k_coeffs: list[int]
    d_rho: float
    quantum_dims: dict[str, float]
    classification: str
    nilpotency_index: int | None
    skeleton_dim: int | float
    kms_temperature: float | None
    reduced_radius: float
    reduced_opnorm: float
    decay_rate: float
    lemma41: dict
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "input": self.input,
            "order": self.order,
            "h_coeffs": self.h_coeffs,
            "k_coeffs": self.k_coeffs,
            "d_rho": _num(self.d_rho),
            "quantum_dims": {k: _num(v) for k, v in self.quantum_dims.items()},
            "classification": self.classification,
            "nilpotency_index": self.nilpotency_index,
            "skeleton_dim": _num(self.skeleton_dim),
            "kms_temperature": _num(self.kms_temperature),
            "reduced_radius": _num(self.reduced_radius),
            "reduced_opnorm": _num(self.reduced_opnorm),
            "decay_rate": _num(self.decay_rate),
            "lemma41_partial_sums": {
                "terms": self.lemma41["terms"],
                "partial_sums": [_num(x) for x in self.lemma41["partial_sums"]],
                "tail_bounds": [_num(x) for x in self.lemma41["tail_bounds"]],
                "envelope": [_num(x) for x in self.lemma41["envelope"]],
            },
            "verification": {"passed": self.passed, "checks": [c.to_dict() for c in self.checks]},
        }


def _series_checks(data: FusionData, order: int) -> tuple[list[Check], series.RationalSeries, series.RationalSeries]:
    h = series.h_series(data, order)
    k = series.k_from_h(h)
    checks = []
    direct = [series.k_direct(data, n) for n in range(1, order + 1)]
    diff = max((abs(k[n] - direct[n - 1]) for n in range(1, order + 1)), default=0)
    checks.append(Check("series_oracle", diff == 0, float(diff), "k from 1 - 1/h vs first-return matrix products"))
    ident = h * (1 - k)
    err = max(abs(c - (1 if n == 0 else 0)) for n, c in enumerate(ident))
    checks.append(Check("renewal_identity", err == 0, float(err), "h (1 - k) = 1 through the truncation order"))
    bad = [n for n, c in enumerate(k) if c.denominator != 1 or c < 0]
    checks.append(Check("k_nonnegative_integers", not bad, float(len(bad)),
                        f"offending orders {bad}" if bad else "all k_n are dimensions"))
    return checks, h, k


def _spectral_checks(data: FusionData, profile: spectral.SpectralProfile) -> list[Check]:
    f = np.array(profile.dims.values)
    nt = np.array(data.transpose(), dtype=float)
    residual = float(np.linalg.norm(nt @ f - profile.d_rho * f) / np.linalg.norm(f))
    checks = [
        Check("perron_residual", residual <= CHECK_TOLERANCE and bool(np.all(f > 0)), residual,
              "F N = d F with F > 0"),
        Check("reduced_gap", profile.reduced_radius < profile.d_rho,
              profile.d_rho - profile.reduced_radius, "spectral radius of N_red below d(rho)"),
    ]
    s = data.size
    window = [series.k_direct(data, n) for n in range(s + 1, 2 * s + 2)]
    finite_by_window = not any(window)
    skel = series.skeleton_dim(data, profile)
    consistent = (finite_by_window == (profile.nilpotency_index is not None)) and (math.isinf(skel) != finite_by_window)
    checks.append(Check("classification_vs_skeleton", consistent, 0.0 if consistent else 1.0,
                        f"{profile.classification}; skeleton dim {skel}"))

    k1, d = data.matrix[data.iota][data.iota], profile.d_rho
    lower_ok = k1 <= d + CHECK_TOLERANCE
    upper_ok = d <= skel + CHECK_TOLERANCE
    eq_low = abs(k1 - d) <= CHECK_TOLERANCE
    eq_high = (not math.isinf(skel)) and abs(skel - d) <= CHECK_TOLERANCE
    eq_skel = skel == k1
    # for an automorphism (d = 1) every layer weighs d^-n = 1 and the equality clause is void
    proper = d > 1 + CHECK_TOLERANCE
    ok = lower_ok and upper_ok and (not proper or eq_low == eq_high == eq_skel)
    checks.append(Check("dimension_bounds", ok, 0.0 if ok else 1.0,
                        f"dim k_1 = {k1} <= d = {d:.12g} <= dim K = {skel}"))
    return checks


def _lemma41_check(data, profile, terms) -> tuple[Check, spectral.Lemma41Result]:
    res = spectral.lemma41_partial_sums(data, profile, terms, CHECK_TOLERANCE)
    ok = res.monotone and res.bounded and res.closure_residual <= CHECK_TOLERANCE
    return Check("support_partial_sums", ok, res.closure_residual,
                 f"S_{terms} = {res.final:.12g}; monotone={res.monotone} bounded={res.bounded}"), res


def _path_checks(data: FusionData, max_len: int) -> list[Check]:
    out = []
    bad, skipped = [], 0
    for n in range(0, min(SPOT_CHECK_LENGTH, max_len) + 1):
        power = matpow(data.matrix, n)
        for j in range(data.size):
            expected = power[j][data.iota]
            if expected > SPOT_CHECK_MAX_PATHS:
                skipped += 1
                continue
            if len(pathalg.enumerate_paths(data, n, j, max_len=max_len)) != expected:
                bad.append((n, j))
    out.append(Check("path_counts", not bad, float(len(bad)),
                     f"paths match matrix powers; {skipped} oversized cases skipped"))
    bad = []
    for n in range(1, min(SPOT_CHECK_LENGTH, max_len) + 1):
        expected = series.k_direct(data, n)
        if expected > SPOT_CHECK_MAX_PATHS:
            continue
        if len(pathalg.first_return_basis(data, n, max_len=max_len)) != expected:
            bad.append(n)
    out.append(Check("first_return_counts", not bad, float(len(bad)), "first-return loops match k_n"))
    return out


def _state_check(data: FusionData, profile: spectral.SpectralProfile, seed: int = 0) -> Check:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(STATE_SAMPLES):
        x = pathalg.random_element(data, rng, terms=3, max_len=2)
        a = pathalg.phi_state(x, profile.dims, profile.d_rho)
        b = pathalg.phi_state(pathalg.embed(x), profile.dims, profile.d_rho)
        worst = max(worst, abs(a - b))
    return Check("state_embedding", worst <= CHECK_TOLERANCE, worst, "phi(embed x) = phi(x)")


def _character_check(doc: InputDocument, h: series.RationalSeries) -> Check:
    top = min(h.order, 16)
    diffs = [abs(int(h[n]) - groups.invariant_dims(doc.table, doc.rep, n)) for n in range(top + 1)]
    return Check("character_oracle", max(diffs) == 0, float(max(diffs)),
                 f"dim h_n vs character sums for n <= {top}")


def _run(doc: InputDocument, order: int, tolerance: float, max_path_len: int):
    data = doc.fusion_data()
    require_valid(data)
    checks, h, k = _series_checks(data, order)
    profile = spectral.classify(data, tolerance)
    checks += _spectral_checks(data, profile)
    terms = max(1, order)
    lemma_check, lemma = _lemma41_check(data, profile, terms)
    checks.append(lemma_check)
    checks += _path_checks(data, max_path_len)
    checks.append(_state_check(data, profile))
    if doc.kind == "character_table":
        checks.append(_character_check(doc, h))
    return data, h, k, profile, lemma, checks


def verify(doc: InputDocument, order: int = series.DEFAULT_ORDER,
           tolerance: float = spectral.DEFAULT_TOLERANCE, max_path_len: int = pathalg.MAX_PATH_LENGTH) -> list[Check]:
    return _run(doc, order, tolerance, max_path_len)[-1]


def analyze(doc: InputDocument, order: int = series.DEFAULT_ORDER,
            tolerance: float = spectral.DEFAULT_TOLERANCE, max_path_len: int = pathalg.MAX_PATH_LENGTH) -> AnalysisReport:
    data, h, k, profile, lemma, checks = _run(doc, order, tolerance, max_path_len)
    return AnalysisReport(
        input=doc.to_dict(),
        order=order,
        h_coeffs=[int(c) for c in h],
        k_coeffs=[int(c) for c in k][1:],
        d_rho=profile.d_rho,
        quantum_dims=dict(zip(data.sectors, profile.dims.values)),
        classification=str(profile.classification),
        nilpotency_index=profile.nilpotency_index,
        skeleton_dim=series.skeleton_dim(data, profile),
        kms_temperature=profile.kms_temperature,
        reduced_radius=profile.reduced_radius,
        reduced_opnorm=profile.reduced_opnorm,
        decay_rate=profile.decay_rate,
        lemma41={
            "terms": len(lemma.partial_sums),
            "partial_sums": list(lemma.partial_sums),
            "tail_bounds": list(lemma.residual_weights),
            "envelope": list(lemma.envelope),
        },
        checks=checks,
    )
