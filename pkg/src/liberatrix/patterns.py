"""Symmetric matrix pattern classes over a graph, and the flattening orders.

Three membership classes for a symmetric A and graph G on the same vertex set:

  "S"      off-diagonal entry (i,j) nonzero exactly when {i,j} is an edge
  "S_cl"   off-diagonal support contained in the edge set (entries may vanish)
  "S_cl0"  as "S_cl" with zero diagonal

Every flattening follows the lexicographic order on index pairs. Vertex
arguments are 1-based, matching Graph.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exactla import RatMatrix
from .graphs import Graph, build_graph

CLASS_TAGS = ("S", "S_cl", "S_cl0")


def _is_exact(a):
    return isinstance(a, RatMatrix)


def _square_view(a):
    """(n, get) for RatMatrix or array-like; get is 0-based."""
    if isinstance(a, RatMatrix):
        if a.rows != a.cols:
            raise ValueError("expected a square matrix")
        return a.rows, lambda i, j: a[i, j]
    arr = np.asarray(a, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError("expected a square matrix")
    return arr.shape[0], lambda i, j: arr[i, j]


def _nonzero_test(a, tol):
    if _is_exact(a):
        return lambda x: x != 0
    return lambda x: abs(x) > tol


def in_class(a, g: Graph, cls: str, tol: float = 1e-8) -> bool:
    """Membership of symmetric a in the named pattern class over g."""
    if cls not in CLASS_TAGS:
        raise ValueError("unknown class %r" % (cls,))
    n, get = _square_view(a)
    if n != g.n:
        raise ValueError("matrix order %d does not match graph order %d" % (n, g.n))
    nonzero = _nonzero_test(a, tol)
    for i in range(n):
        for j in range(i, n):
            if nonzero(get(i, j) - get(j, i)):
                raise ValueError("matrix is not symmetric")
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            hit = nonzero(get(i - 1, j - 1))
            if g.has_edge(i, j):
                if cls == "S" and not hit:
                    return False
            elif hit:
                return False
    if cls == "S_cl0":
        for i in range(n):
            if nonzero(get(i, i)):
                return False
    return True


def pattern_of(a, tol: float = 1e-8) -> Graph:
    """Graph on the off-diagonal support of a symmetric matrix."""
    n, get = _square_view(a)
    nonzero = _nonzero_test(a, tol)
    edges = [
        (i, j)
        for i in range(1, n + 1)
        for j in range(i + 1, n + 1)
        if nonzero(get(i - 1, j - 1)) or nonzero(get(j - 1, i - 1))
    ]
    return build_graph(n, edges)


@dataclass(frozen=True)
class PatternedMatrix:
    """A matrix together with its graph and a verified membership tag."""

    matrix: object
    graph: Graph
    tag: str
    tol: float = 1e-8

    def __post_init__(self):
        if not in_class(self.matrix, self.graph, self.tag, self.tol):
            raise ValueError("matrix is not in class %s of the given graph" % self.tag)


def pair_position(n: int, i: int, j: int) -> int:
    """0-based slot of the pair (i,j), i<j, in the lexicographic pair order."""
    if not (1 <= i < j <= n):
        raise ValueError("need 1 <= i < j <= n")
    return (i - 1) * n - (i - 1) * i // 2 + (j - i - 1)


def _pack(values, exact):
    return list(values) if exact else np.array(values, dtype=float)


def vec_wedge(k):
    """Strictly upper triangular entries, pair-lex order; length C(n,2)."""
    n, get = _square_view(k)
    vals = [get(i, j) for i in range(n) for j in range(i + 1, n)]
    return _pack(vals, _is_exact(k))


def vec_triangle(a):
    """Upper triangular entries including the diagonal; length C(n+1,2)."""
    n, get = _square_view(a)
    vals = [get(i, j) for i in range(n) for j in range(i, n)]
    return _pack(vals, _is_exact(a))


def vec_square(a):
    """All entries in row-major order; length n^2."""
    n, get = _square_view(a)
    vals = [get(i, j) for i in range(n) for j in range(n)]
    return _pack(vals, _is_exact(a))


def basis_X(n: int, i: int, j: int) -> RatMatrix:
    """Symmetric unit pair matrix: ones at (i,j) and (j,i), i<j, 1-based."""
    if not (1 <= i < j <= n):
        raise ValueError("need 1 <= i < j <= n")
    m = RatMatrix.zeros(n, n)
    m[i - 1, j - 1] = Fraction(1)
    m[j - 1, i - 1] = Fraction(1)
    return m


def basis_K(n: int, i: int, j: int) -> RatMatrix:
    """Skew unit pair matrix: +1 at (i,j), -1 at (j,i), i<j, 1-based."""
    if not (1 <= i < j <= n):
        raise ValueError("need 1 <= i < j <= n")
    m = RatMatrix.zeros(n, n)
    m[i - 1, j - 1] = Fraction(1)
    m[j - 1, i - 1] = Fraction(-1)
    return m


SAMPLE_MODES = ("unit-off-diagonal", "random-rational", "random-diagonal-collisions")


def _nonzero_rational(rng: random.Random) -> Fraction:
    k = rng.choice([x for x in range(-99, 100) if x != 0])
    d = rng.randint(1, 9)
    return Fraction(k, d)


def _any_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-99, 99), rng.randint(1, 9))


def sample_S(g: Graph, seed, mode: str = "random-rational") -> RatMatrix:
    """Seeded rational sample from S(g).

    Modes: "unit-off-diagonal" puts 1 on every edge with zero diagonal;
    "random-rational" draws nonzero edge entries and free diagonal entries;
    "random-diagonal-collisions" additionally forces at least one repeated
    diagonal value, the degenerate stratum generic draws almost never hit.
    """
    if mode not in SAMPLE_MODES:
        raise ValueError("unknown sampling mode %r" % (mode,))
    rng = random.Random(seed)
    n = g.n
    m = RatMatrix.zeros(n, n)
    for (i, j) in g.edges:
        val = Fraction(1) if mode == "unit-off-diagonal" else _nonzero_rational(rng)
        m[i - 1, j - 1] = val
        m[j - 1, i - 1] = val
    if mode != "unit-off-diagonal":
        for i in range(n):
            m[i, i] = _any_rational(rng)
    if mode == "random-diagonal-collisions":
        if n < 2:
            raise ValueError("diagonal collisions need at least two vertices")
        i, j = rng.sample(range(n), 2)
        m[j, j] = m[i, i]
    assert in_class(m, g, "S")
    return m
