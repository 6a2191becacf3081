"""Floating-point symmetric eigencomputations and numeric rank.

The eigensolver is a cyclic Jacobi iteration with two-sided rotations,
deterministic for a given input, intended for the small dense matrices this
package works with (n <= 64). Eigenvalues come back ascending with an
orthonormal eigenvector matrix Q whose columns match.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exactla import parse_matrix_text

_MAX_N = 64


def _as_array(a):
    if isinstance(a, SymMatrix):
        return a.array
    arr = np.asarray(a, dtype=float)
    if arr.ndim != 2:
        raise ValueError("expected a 2-d array")
    return arr


class SymMatrix:
    """Symmetric float matrix; symmetry is enforced by storage."""

    def __init__(self, data, tol=1e-9):
        arr = np.asarray(data, dtype=float)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError("SymMatrix needs a square array")
        scale = max(1.0, float(np.max(np.abs(arr))) if arr.size else 0.0)
        if arr.size and float(np.max(np.abs(arr - arr.T))) > tol * scale:
            raise ValueError("input is not symmetric within tolerance")
        self._a = (arr + arr.T) / 2.0
        self._a.flags.writeable = False
        self._eig = None

    @property
    def n(self):
        return self._a.shape[0]

    @property
    def array(self):
        return self._a

    def eigensystem(self):
        if self._eig is None:
            self._eig = sym_eigen(self._a)
        return self._eig

    def eigenvalues(self):
        return self.eigensystem()[0]

    def __repr__(self):
        return "SymMatrix(n=%d)" % self.n


def sym_eigen(a):
    """Eigenvalues (ascending) and orthonormal Q for a symmetric matrix.

    Cyclic Jacobi sweeps; converges quadratically once the off-diagonal mass
    is small. Residual satisfies ||AQ - Q diag|| <= 1e-9 * ||A|| for the sizes
    supported here.
    """
    a = _as_array(a).copy()
    n = a.shape[0]
    if n > _MAX_N:
        raise ValueError("sym_eigen supports n <= %d" % _MAX_N)
    if n == 0:
        return np.zeros(0), np.zeros((0, 0))
    v = np.eye(n)
    norm = np.linalg.norm(a)
    if norm == 0.0 or n == 1:
        vals = np.diag(a).copy()
        order = np.argsort(vals, kind="stable")
        return vals[order], v[:, order]
    eps = 1e-15 * norm
    for _sweep in range(60):
        strict = a - np.diag(np.diag(a))
        off = float(np.linalg.norm(strict))
        if off <= eps * n:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= 1e-18 * norm:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(theta, 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                rp = a[:, p].copy()
                rq = a[:, q].copy()
                a[:, p] = c * rp - s * rq
                a[:, q] = s * rp + c * rq
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                a[p, q] = 0.0
                a[q, p] = 0.0
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    else:
        raise RuntimeError("Jacobi iteration did not converge")
    vals = np.diag(a).copy()
    order = np.argsort(vals, kind="stable")
    return vals[order], v[:, order]


@dataclass(frozen=True)
class MultiplicityList:
    """Clustered spectrum: distinct values ascending with their multiplicities."""

    values: tuple
    multiplicities: tuple
    tol: float
    ambiguous: bool = False

    @property
    def ordered(self):
        return self.multiplicities

    @property
    def total(self):
        return sum(self.multiplicities)

    def __iter__(self):
        return iter(zip(self.values, self.multiplicities))


def multiplicity_list(values, tol=1e-8) -> MultiplicityList:
    """Cluster sorted eigenvalues at tolerance tol.

    Consecutive values separated by at most tol join one cluster, reported at
    the cluster mean. A gap strictly between tol and 10*tol flags the result
    ambiguous; callers deciding multiplicities should treat that as a warning.
    """
    vals = sorted(float(x) for x in values)
    if not vals:
        return MultiplicityList((), (), tol)
    groups = [[vals[0]]]
    ambiguous = False
    for prev, cur in zip(vals, vals[1:]):
        gap = cur - prev
        if gap <= tol:
            groups[-1].append(cur)
        else:
            if gap < 10.0 * tol:
                ambiguous = True
            groups.append([cur])
    means = tuple(sum(g) / len(g) for g in groups)
    mults = tuple(len(g) for g in groups)
    return MultiplicityList(means, mults, tol, ambiguous)


def numeric_rank(m, tol=1e-8) -> int:
    """Rank by elimination with partial pivoting; pivots below tol * max|entry|
    of the input count as zero. Monotone nonincreasing in tol."""
    a = np.array(_as_array(m), dtype=float)
    rows, cols = a.shape
    if a.size == 0:
        return 0
    threshold = tol * max(1e-300, float(np.max(np.abs(a))))
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = r + int(np.argmax(np.abs(a[r:, c])))
        if abs(a[piv, c]) <= threshold:
            continue
        a[[r, piv]] = a[[piv, r]]
        a[r + 1:] -= np.outer(a[r + 1:, c] / a[r, c], a[r])
        r += 1
    return r


def random_orthogonal(n, seed) -> np.ndarray:
    """Orthonormalized seeded Gaussian sample; QR with sign-fixed diagonal."""
    rng = np.random.default_rng(seed)
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    q = q * np.sign(np.where(np.diag(r) == 0.0, 1.0, np.diag(r)))
    err = float(np.max(np.abs(q.T @ q - np.eye(n)))) if n else 0.0
    if err > 1e-12:
        raise RuntimeError("orthogonality residual %.2e above 1e-12" % err)
    return q


def parse_float_matrix(text: str) -> np.ndarray:
    """Matrix text (entries p/q, integer, or decimal) as a float array."""
    m = parse_matrix_text(text)
    return m.to_float()


def read_float_matrix(path) -> np.ndarray:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_float_matrix(fh.read())
