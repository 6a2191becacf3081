"""Strong property checks for symmetric patterned matrices.

A symmetric matrix A with pattern graph G has the strong spectral property
(kind "ssp") when the only symmetric X with zero diagonal, support inside the
nonedges of G, and [A, X] = O is X = O; the strong Arnold property (kind
"sap") replaces the commutator condition with AX = O. Both reduce to full row
rank of a verification matrix whose rows are indexed by the nonedges of G:
the commutator rows are flattened over the strict upper triangle, the product
rows over all n^2 slots. The relative variant "with respect to H", for a
supergraph H of G, asks only the rows indexed by nonedges of H to be
independent.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exactla import (
    RatMatrix,
    charpoly,
    commutator,
    full_row_rank,
    kernel_basis,
    left_kernel_basis,
    poly_gcd,
    rank,
)
from .graphs import Graph, complement
from .numla import numeric_rank
from .patterns import basis_X, in_class, vec_square, vec_wedge

KINDS = ("ssp", "sap")


def normalize_kind(kind: str) -> str:
    k = str(kind).lower()
    if k not in KINDS:
        raise ValueError("kind must be one of %s" % (KINDS,))
    return k


@dataclass(frozen=True)
class VerificationMatrix:
    kind: str
    rows: tuple  # nonedge pairs, lexicographic
    matrix: object  # RatMatrix, or float ndarray for numeric input
    source: object
    graph: Graph

    @property
    def exact(self):
        return isinstance(self.matrix, RatMatrix)

    def row_index(self, pair) -> int:
        return self.rows.index(tuple(sorted(pair)))


def _float_pair_matrix(n, i, j):
    x = np.zeros((n, n))
    x[i - 1, j - 1] = 1.0
    x[j - 1, i - 1] = 1.0
    return x


def psi(a, g: Graph, kind: str, tol: float = 1e-8) -> VerificationMatrix:
    """Verification matrix of a over g; exact for rational input."""
    kind = normalize_kind(kind)
    if not in_class(a, g, "S_cl", tol):
        raise ValueError("matrix support must lie inside the graph's edges")
    if not in_class(a, g, "S", tol):
        warnings.warn("matrix has vanishing entries on some edges", stacklevel=2)
    n = g.n
    nonedges = g.nonedges()
    exact = isinstance(a, RatMatrix)
    ncols = n * (n - 1) // 2 if kind == "ssp" else n * n
    if exact:
        rows = []
        for (i, j) in nonedges:
            x = basis_X(n, i, j)
            rows.append(vec_wedge(commutator(a, x)) if kind == "ssp"
                        else vec_square(a @ x))
        m = RatMatrix.from_rows(rows) if rows else RatMatrix.zeros(0, ncols)
    else:
        arr = np.asarray(a, dtype=float)
        m = np.zeros((len(nonedges), ncols))
        for r, (i, j) in enumerate(nonedges):
            x = _float_pair_matrix(n, i, j)
            prod = arr @ x
            m[r] = vec_wedge(prod - x @ arr) if kind == "ssp" else vec_square(prod)
    return VerificationMatrix(kind, nonedges, m, a, g)


@dataclass(frozen=True)
class StrongPropertyResult:
    answer: bool
    kind: str
    rank: int
    nullity: int
    rows: tuple
    certificate: tuple = ()

    def __bool__(self):
        return self.answer


def _reassemble(coeffs, pairs, n):
    x = RatMatrix.zeros(n, n)
    for c, (i, j) in zip(coeffs, pairs):
        x[i - 1, j - 1] = c
        x[j - 1, i - 1] = c
    return x


def _verify_certificate(a, g: Graph, kind, x, pairs_graph: Graph):
    # the reassembled X must be a genuine obstruction
    assert in_class(x, complement(pairs_graph), "S_cl0")
    if kind == "ssp":
        assert commutator(a, x).is_zero()
    else:
        assert (a @ x).is_zero()
    assert not x.is_zero()


def _exact_verdict(a, g, kind, vm, sel_idx, sel_pairs, wrt_graph):
    sub = vm.matrix.submatrix(row_idx=sel_idx)
    r = rank(sub)
    m = len(sel_idx)
    if r == m:
        return StrongPropertyResult(True, kind, r, 0, sel_pairs)
    cert = []
    lk = left_kernel_basis(sub)
    for t in range(lk.rows):
        x = _reassemble(lk.row(t), sel_pairs, g.n)
        _verify_certificate(a, g, kind, x, wrt_graph)
        cert.append(x)
    return StrongPropertyResult(False, kind, r, m - r, sel_pairs, tuple(cert))


def has_strong_property(a, g: Graph, kind: str, tol: float = 1e-8) -> StrongPropertyResult:
    """Full-row-rank test of the verification matrix, with an obstruction
    certificate (kernel elements reassembled and re-verified) on failure."""
    kind = normalize_kind(kind)
    vm = psi(a, g, kind, tol)
    idx = list(range(len(vm.rows)))
    if vm.exact:
        return _exact_verdict(a, g, kind, vm, idx, vm.rows, g)
    return _numeric_verdict(vm, idx, vm.rows, tol, kind)


def _numeric_verdict(vm, sel_idx, sel_pairs, tol, kind):
    sub = vm.matrix[sel_idx] if len(sel_idx) else np.zeros((0, vm.matrix.shape[1]))
    r = numeric_rank(sub, tol)
    m = len(sel_idx)
    return StrongPropertyResult(r == m, kind, r, m - r, sel_pairs)


def _require_spanning_subgraph(g: Graph, h: Graph):
    if g.n != h.n:
        raise ValueError("graphs must share one vertex set")
    extra = set(g.edges) - set(h.edges)
    if extra:
        raise ValueError("not a supergraph: missing edges %s" % sorted(extra))


def has_strong_property_wrt(a, g: Graph, h: Graph, kind: str,
                            tol: float = 1e-8) -> StrongPropertyResult:
    """Strong property of a (pattern g) relative to a supergraph h: only the
    verification rows indexed by nonedges of h need to be independent."""
    kind = normalize_kind(kind)
    _require_spanning_subgraph(g, h)
    vm = psi(a, g, kind, tol)
    keep_set = set(h.nonedges())
    sel_idx = [k for k, e in enumerate(vm.rows) if e in keep_set]
    sel_pairs = tuple(vm.rows[k] for k in sel_idx)
    if vm.exact:
        return _exact_verdict(a, g, kind, vm, sel_idx, sel_pairs, h)
    return _numeric_verdict(vm, sel_idx, sel_pairs, tol, kind)


def wrt_kernel_check(a: RatMatrix, g: Graph, h: Graph, kind: str) -> bool:
    """Second route to the relative strong property: trivial kernel of the
    constraint map on matrices supported by the nonedges of h."""
    kind = normalize_kind(kind)
    _require_spanning_subgraph(g, h)
    n = g.n
    pairs = h.nonedges()
    ncols = n * (n - 1) // 2 if kind == "ssp" else n * n
    cols = []
    for (i, j) in pairs:
        x = basis_X(n, i, j)
        img = vec_wedge(commutator(a, x)) if kind == "ssp" else vec_square(a @ x)
        cols.append(img)
    if not cols:
        return True
    m = RatMatrix.from_rows(cols).transpose()  # positions x pairs
    ker = kernel_basis(m)
    for t in range(ker.cols):
        x = _reassemble(ker.col(t), pairs, n)
        _verify_certificate(a, g, kind, x, h)
    return ker.cols == 0


def spectra_disjoint(a: RatMatrix, b: RatMatrix) -> bool:
    """Exact test: no common eigenvalue, by gcd of characteristic polynomials."""
    gcd = poly_gcd(charpoly(a), charpoly(b))
    return len(gcd) == 1 and gcd[0] != 0


def numeric_strong_property(a, g: Graph, kind: str, tol: float = 1e-8) -> StrongPropertyResult:
    """Floating-point strong property verdict at tolerance tol."""
    arr = a.to_float() if isinstance(a, RatMatrix) else np.asarray(a, dtype=float)
    return has_strong_property(arr, g, kind, tol)
