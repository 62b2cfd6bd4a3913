import math

import numpy as np
import pytest

from gcuntz.fusion import FusionData, FusionDataError, reduced_matrix
from gcuntz.series import INFINITE, k_direct, skeleton_dim
from gcuntz.spectral import (
    Classification,
    classify,
    kms_temperature,
    lemma41_partial_sums,
    nilpotency_index,
    perron,
    power_iteration,
    spectral_radius,
)

from oracles import perron_root

PHI = (1 + 5**0.5) / 2


def test_perron_lee_yang(lee_yang):
    d, dims = perron(lee_yang)
    assert abs(d - PHI) < 1e-9
    assert dims[0] == 1.0 and abs(dims[1] - PHI) < 1e-9


def test_perron_s3(catalog_data):
    data = catalog_data["s3-std"]
    assert data.matrix == ((0, 0, 1), (0, 0, 1), (1, 1, 1))
    d, dims = perron(data)
    assert abs(d - perron_root(data.matrix)) < 1e-9
    assert abs(d - 2) < 1e-9
    assert np.allclose(dims.values, [1, 1, 2], atol=1e-9)


def test_perron_periodic_matrix():
    # bipartite graph: plain power iteration would oscillate
    data = FusionData(["a", "b"], 0, [[0, 2], [2, 0]])
    d, dims = perron(data)
    assert abs(d - 2) < 1e-12 and abs(dims[1] - 1) < 1e-12


def test_perron_uses_left_eigenvector():
    data = FusionData(["a", "b"], 0, [[1, 2], [1, 0]])
    d, dims = perron(data)
    n = np.array(data.matrix, dtype=float)
    f = np.array(dims.values)
    assert np.allclose(f @ n, d * f, atol=1e-10)
    # the right eigenvector would be (1, 1/2)
    assert abs(d - 2) < 1e-10 and abs(dims[1] - 1) < 1e-10


def test_perron_rejects_invalid():
    with pytest.raises(FusionDataError):
        perron(FusionData(["a", "b"], 0, [[1, 0], [0, 1]]))


def test_power_iteration_symmetric():
    lam, x = power_iteration([[2, 1], [1, 2]])
    assert abs(lam - 3) < 1e-10
    assert abs(abs(x[0]) - abs(x[1])) < 1e-10


@pytest.mark.parametrize(
    "matrix, expected",
    [
        ([[0, 0], [0, 0]], 1),
        ([[0, 1], [0, 0]], 2),
        ([[0, 0, 0], [1, 0, 0], [0, 1, 0]], 3),
        ([[0, 1], [1, 0]], None),
        ([[1]], None),
        ([], 0),
    ],
)
def test_nilpotency_index(matrix, expected):
    if expected == 0:
        assert nilpotency_index(matrix) is None
    else:
        assert nilpotency_index(matrix) == expected


def test_nilpotency_on_reductions(a4, lee_yang):
    assert nilpotency_index(reduced_matrix(a4)) == 1
    assert nilpotency_index(reduced_matrix(lee_yang)) is None


def test_spectral_radius_block_triangular():
    m = [[2, 0, 0], [5, 0, 1], [0, 1, 0]]
    assert abs(spectral_radius(m) - 2) < 1e-12


def test_classify_examples(a4, lee_yang):
    p = classify(a4)
    assert p.classification is Classification.EXCEPTIONAL
    assert p.nilpotency_index == 1 and p.reduced_radius == 0.0 and p.decay_rate == 0.0
    q = classify(lee_yang)
    assert q.classification is Classification.GENERIC
    assert q.nilpotency_index is None
    assert abs(q.reduced_radius - 1) < 1e-12
    assert abs(q.decay_rate - 1 / PHI) < 1e-9
    assert round(q.decay_rate, 6) == 0.618034
    assert abs(q.reduced_opnorm - 1) < 1e-12


def test_envelope_shapes(a4, lee_yang):
    p = classify(a4)
    assert p.envelope(0) > 0 and p.envelope(1) == 0.0 and p.envelope(5) == 0.0
    q = classify(lee_yang)
    assert abs(q.envelope(3) / q.envelope(2) - q.decay_rate) < 1e-12


@pytest.mark.parametrize(
    "d, expected",
    [(math.e, 2 * math.pi), (PHI, 13.057005210545986), (4.0, math.pi / math.log(2))],
)
def test_kms_temperature(d, expected):
    assert abs(kms_temperature(d) - expected) < 1e-9


def test_kms_temperature_undefined_for_automorphisms():
    assert kms_temperature(1.0) is None


def test_lemma41_exact_for_finite_skeleton(a4, catalog_data, profiles):
    res = lemma41_partial_sums(a4, classify(a4), 5)
    assert res.k_dims == (1, 1, 0, 0, 0)
    assert abs(res.partial_sums[1] - 1) < 1e-12
    inner = catalog_data["inner-3"]
    res = lemma41_partial_sums(inner, profiles["inner-3"], 3)
    assert res.partial_sums == (1.0, 1.0, 1.0)


def test_lemma41_lee_yang(lee_yang):
    res = lemma41_partial_sums(lee_yang, classify(lee_yang), 30)
    assert res.partial_sums[0] == 0.0
    assert abs(res.partial_sums[1] - PHI**-2) < 1e-12
    assert abs(res.final - 0.99999913) < 1e-8
    assert res.monotone and res.bounded and res.closure_residual < 1e-12
    assert all(w <= e + 1e-12 for w, e in zip(res.residual_weights, res.envelope))


def test_lemma41_needs_a_term(a4):
    with pytest.raises(ValueError):
        lemma41_partial_sums(a4, classify(a4), 0)


def test_perron_root_and_residual_on_family(family):
    for data in family:
        p = classify(data)
        assert abs(p.d_rho - perron_root(data.matrix)) < 1e-8 * max(1.0, p.d_rho)
        f = np.array(p.dims.values)
        n = np.array(data.matrix, dtype=float)
        assert np.all(f > 0) and f[data.iota] == 1.0
        assert np.linalg.norm(f @ n - p.d_rho * f) <= 1e-9 * np.linalg.norm(f)


def test_reduced_gap_on_family(family):
    for data in family:
        p = classify(data)
        assert p.reduced_radius < p.d_rho
        red = np.array(reduced_matrix(data).matrix, dtype=float)
        if red.any():
            assert abs(p.reduced_radius - max(abs(np.linalg.eigvals(red)))) < 1e-6 * max(1.0, p.d_rho)


def test_classification_matches_skeleton_finiteness(family):
    kinds = set()
    for data in family:
        p = classify(data)
        finite = skeleton_dim(data, p) is not INFINITE
        s = data.size
        window_empty = not any(k_direct(data, n) for n in range(s + 1, 2 * s + 2))
        assert finite == (p.classification is Classification.EXCEPTIONAL) == window_empty
        kinds.add(p.classification)
    assert kinds == {Classification.EXCEPTIONAL, Classification.GENERIC}


def test_dimension_bounds(family, catalog_data, profiles):
    cases = list(zip(family, map(classify, family))) + [(catalog_data[n], profiles[n]) for n in catalog_data]
    for data, p in cases:
        k1 = data.matrix[data.iota][data.iota]
        skel = skeleton_dim(data, p)
        assert k1 <= p.d_rho + 1e-9 <= skel + 2e-9
        if p.d_rho > 1 + 1e-9:
            low = abs(k1 - p.d_rho) < 1e-9
            high = skel is not INFINITE and abs(skel - p.d_rho) < 1e-9
            assert low == high == (skel == k1)


def test_lemma41_on_family(family):
    for data in family:
        p = classify(data)
        res = lemma41_partial_sums(data, p, 32)
        assert res.monotone and res.bounded
        assert res.closure_residual < 1e-9
