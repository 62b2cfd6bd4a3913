"""Independent reference computations used by the tests.

Nothing here goes through the package's own matrix-power, series or path code.
"""
import numpy as np
import sympy as sp

_t = sp.symbols("t")


def expand(expr_text, order):
    """Taylor coefficients of a rational function of ``t`` via sympy."""
    expr = sp.sympify(expr_text, locals={"t": _t})
    poly = sp.series(expr, _t, 0, order + 1).removeO()
    return [int(poly.coeff(_t, n)) for n in range(order + 1)]


def _sequences(vertices, length):
    if length == 0:
        return np.zeros((0, 1), dtype=np.int64)
    grids = np.meshgrid(*([np.asarray(vertices)] * length), indexing="ij")
    return np.stack([g.ravel() for g in grids])


def first_return_count(matrix, iota, n):
    """Brute force: sum over every vertex sequence iota, v_1..v_{n-1}, iota with v_t != iota."""
    m = np.asarray(matrix, dtype=np.int64)
    if n == 1:
        return int(m[iota, iota])
    others = [v for v in range(m.shape[0]) if v != iota]
    if not others:
        return 0
    seq = _sequences(others, n - 1)
    w = m[seq[0], iota] * m[iota, seq[-1]]
    for a, b in zip(seq[:-1], seq[1:]):
        w = w * m[b, a]
    return int(w.sum())


def walk_counts(matrix, iota, n):
    """Brute force: multiplicity-weighted count of all length-n walks from iota, per end vertex."""
    m = np.asarray(matrix, dtype=np.int64)
    s = m.shape[0]
    if n == 0:
        out = np.zeros(s, dtype=np.int64)
        out[iota] = 1
        return out
    seq = _sequences(range(s), n)
    w = m[seq[0], iota]
    for a, b in zip(seq[:-1], seq[1:]):
        w = w * m[b, a]
    return np.bincount(seq[-1], weights=w, minlength=s).astype(np.int64)


def perron_root(matrix):
    """Largest real root of the exact characteristic polynomial."""
    lam = sp.symbols("lam")
    poly = sp.Matrix(matrix).charpoly(lam)
    roots = [complex(r) for r in sp.Poly(poly, lam).nroots(n=30, maxsteps=2000)]
    return max(abs(r) for r in roots)
