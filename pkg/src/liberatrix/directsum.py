"""Gluing two symmetric blocks across bridging pairs.

For blocks A (m x m) and B (n x n) with a strong property, whether A + B
direct-summed stays strong relative to added bridges is controlled by the
intertwining space: for kind "ssp" the solutions of AY = YB, spanned by outer
products of eigenvectors at common eigenvalues; for kind "sap" the solutions
of AY = O = YB, spanned by kernel outer products. A bridge set is certified by
evaluating that space at the bridge positions and checking the evaluation map
has trivial kernel.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .exactla import RatMatrix, rank
from .graphs import EdgeSet, bridge_set
from .numla import numeric_rank, sym_eigen
from .patterns import pattern_of
from .strongprops import has_strong_property, normalize_kind


def _block_array(x):
    if isinstance(x, RatMatrix):
        return x.to_float()
    arr = getattr(x, "array", x)
    arr = np.asarray(arr, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError("blocks must be square matrices")
    return arr


@dataclass(frozen=True)
class SylvesterSpace:
    basis: tuple       # outer-product matrices of shape (m, n)
    dimension: int
    common: tuple      # ((value, mult in A, mult in B), ...)
    kind: str
    ambiguous: bool
    eigvec_blocks: tuple  # ((U_A, U_B) per common value, column blocks)


def _cluster_indices(values, tol):
    """Group sorted positions of values by chained gaps <= tol."""
    order = np.argsort(values, kind="stable")
    groups = [[order[0]]] if len(order) else []
    ambiguous = False
    for prev, cur in zip(order, order[1:]):
        gap = values[cur] - values[prev]
        if gap <= tol:
            groups[-1].append(cur)
        else:
            if gap < 10.0 * tol:
                ambiguous = True
            groups.append([cur])
    return groups, ambiguous


def sylvester_space(a, b, tol: float = 1e-8, kind: str = "ssp") -> SylvesterSpace:
    """Basis of the intertwining space of two symmetric blocks.

    Eigenvalues of both blocks are clustered together at one shared
    tolerance; a gap falling in (tol, 10 tol) marks the result ambiguous and
    emits a warning, since the common-spectrum decision is then fragile.
    """
    kind = normalize_kind(kind)
    a = _block_array(a)
    b = _block_array(b)
    vals_a, q_a = sym_eigen(a)
    vals_b, q_b = sym_eigen(b)
    scale = max(1.0, float(np.linalg.norm(a)), float(np.linalg.norm(b)))

    if kind == "sap":
        ia = [i for i, v in enumerate(vals_a) if abs(v) <= tol]
        ib = [j for j, v in enumerate(vals_b) if abs(v) <= tol]
        pieces = [(0.0, ia, ib)] if ia and ib else []
        ambiguous = any(
            tol < abs(v) < 10.0 * tol for v in list(vals_a) + list(vals_b))
    else:
        joint = np.concatenate([vals_a, vals_b])
        tags = [("a", i) for i in range(len(vals_a))] + \
               [("b", j) for j in range(len(vals_b))]
        groups, ambiguous = _cluster_indices(joint, tol)
        pieces = []
        for grp in groups:
            ia = [tags[t][1] for t in grp if tags[t][0] == "a"]
            ib = [tags[t][1] for t in grp if tags[t][0] == "b"]
            if ia and ib:
                pieces.append((float(np.mean([joint[t] for t in grp])), ia, ib))
    if ambiguous:
        warnings.warn("eigenvalue gap close to the clustering tolerance",
                      stacklevel=2)

    basis = []
    common = []
    blocks = []
    for value, ia, ib in pieces:
        ua = q_a[:, ia]
        ub = q_b[:, ib]
        common.append((value, len(ia), len(ib)))
        blocks.append((ua, ub))
        for i in range(ua.shape[1]):
            for j in range(ub.shape[1]):
                y = np.outer(ua[:, i], ub[:, j])
                if kind == "sap":
                    resid = max(float(np.max(np.abs(a @ y))),
                                float(np.max(np.abs(y @ b))))
                else:
                    resid = float(np.max(np.abs(a @ y - y @ b)))
                if resid > 1e-9 * scale:
                    raise RuntimeError(
                        "intertwining residual %.2e exceeds bound" % resid)
                basis.append(y)
    return SylvesterSpace(tuple(basis), len(basis), tuple(common), kind,
                          ambiguous, tuple(blocks))


def is_generic(w, tol: float = 1e-8) -> bool:
    """Every maximal square row-submatrix of a basis matrix is invertible.

    The answer depends only on the column span: a change of basis multiplies
    each minor by the same nonzero factor.
    """
    if isinstance(w, RatMatrix):
        n, d = w.rows, w.cols
        if rank(w) != d:
            raise ValueError("basis matrix is rank-deficient")
        return all(
            rank(w.submatrix(row_idx=list(sel))) == d
            for sel in combinations(range(n), d))
    arr = np.asarray(w, dtype=float)
    if arr.ndim != 2:
        raise ValueError("expected a matrix of basis columns")
    n, d = arr.shape
    if numeric_rank(arr, tol) != d:
        raise ValueError("basis matrix is rank-deficient")
    if d == 0:
        return True
    scale = float(max(np.linalg.norm(arr[r]) for r in range(n)))
    for sel in combinations(range(n), d):
        sub = arr[list(sel)]
        norms = np.array([np.linalg.norm(sub[r]) for r in range(d)])
        # a numerically zero row is singular outright; testing the
        # row-normalized determinant keeps the threshold scale-free
        if np.any(norms <= tol * scale):
            return False
        if abs(float(np.linalg.det(sub / norms[:, None]))) <= tol:
            return False
    return True


def _as_bridge(m, n, beta) -> EdgeSet:
    if isinstance(beta, EdgeSet):
        if beta.tag != "bridging":
            raise ValueError("expected a bridging pair set, got %r" % beta.tag)
        if beta.first_block != m:
            raise ValueError("bridge set built for block size %s, not %d"
                             % (beta.first_block, m))
        for (u, v) in beta.pairs:
            if not (1 <= u <= m and m + 1 <= v <= m + n):
                raise ValueError("pair (%d,%d) out of range" % (u, v))
        return beta
    return bridge_set(m, n, beta)


def _check_blocks_strong(a, b, kind):
    msgs = []
    for name, blk in (("first", a), ("second", b)):
        if isinstance(blk, RatMatrix):
            if not has_strong_property(blk, pattern_of(blk), kind).answer:
                raise ValueError("%s block lacks the strong property" % name)
        else:
            msgs.append(name)
    if msgs:
        warnings.warn(
            "strong property of floating blocks (%s) is assumed, not checked"
            % ", ".join(msgs), stacklevel=3)


def _evaluation_full_rank(space: SylvesterSpace, pairs, m, tol) -> bool:
    if space.dimension == 0:
        return True
    ev = np.zeros((len(pairs), space.dimension))
    for r, (u, v) in enumerate(pairs):
        for t, y in enumerate(space.basis):
            ev[r, t] = y[u - 1, v - m - 1]
    return numeric_rank(ev, tol) == space.dimension


def directsum_wrt(a, b, beta, kind: str = "ssp", tol: float = 1e-8) -> bool:
    """Does the direct sum keep the strong property relative to these bridges?

    True exactly when no nonzero intertwining matrix vanishes on every bridge
    position, i.e. the evaluation map on the intertwining space is injective.
    """
    kind = normalize_kind(kind)
    arr_a, arr_b = _block_array(a), _block_array(b)
    m, n = arr_a.shape[0], arr_b.shape[0]
    beta = _as_bridge(m, n, beta)
    _check_blocks_strong(a, b, kind)
    space = sylvester_space(arr_a, arr_b, tol, kind)
    return _evaluation_full_rank(space, beta.pairs, m, tol)


@dataclass(frozen=True)
class DirectSumCertificate:
    beta: EdgeSet
    kind: str
    answer: bool
    per_beta_prime: tuple   # ((dropped pair, verdict), ...)
    validators: tuple       # ((name, ok, detail), ...)
    dimension: int
    common: tuple
    ambiguous: bool

    def __bool__(self):
        return self.answer

    def validator(self, name: str):
        for key, ok, detail in self.validators:
            if key == name:
                return ok, detail
        raise KeyError(name)


def _beta_shape(pairs, m, k, ell):
    """Classify the bridge layout against the recognized sufficient shapes."""
    rows = {}
    cols = {}
    for (u, v) in pairs:
        rows.setdefault(u, set()).add(v)
        cols.setdefault(v, set()).add(u)
    row_sets = list(rows.values())
    col_sets = list(cols.values())
    if k == 1 and len(pairs) == 2:
        return True, "any two bridges (first block has a simple shared value)"
    if all(s == row_sets[0] for s in row_sets) and all(
            s == col_sets[0] for s in col_sets):
        if (len(rows), len(cols)) == (k, ell + 1):
            return True, "full grid, %d x %d" % (k, ell + 1)
        if (len(rows), len(cols)) == (k + 1, ell):
            return True, "full grid, %d x %d" % (k + 1, ell)
    if ell == 1:
        if len(rows) == k and all(len(s) == 2 for s in row_sets):
            return True, "two bridges at each of %d first-block vertices" % k
        if any(len(s) >= k + 1 for s in col_sets):
            return True, "one second-block vertex carries %d bridges" % (k + 1)
    return False, "no recognized sufficient layout"


def directsum_liberation(a, b, beta, kind: str = "ssp",
                         tol: float = 1e-8) -> DirectSumCertificate:
    """Drop-one certification of a bridge set, with hypothesis validators.

    The verdict is computed for every bridge subset missing one pair. The
    validators report whether the instance matches the sufficient conditions
    (single shared eigenvalue, generic eigenspaces, recognized bridge layout);
    validator failure does not decide the verdict.
    """
    kind = normalize_kind(kind)
    arr_a, arr_b = _block_array(a), _block_array(b)
    m, n = arr_a.shape[0], arr_b.shape[0]
    beta = _as_bridge(m, n, beta)
    if len(beta) == 0:
        raise ValueError("a liberation set must be nonempty")
    _check_blocks_strong(a, b, kind)
    space = sylvester_space(arr_a, arr_b, tol, kind)

    per = []
    for e in beta.pairs:
        rest = tuple(f for f in beta.pairs if f != e)
        per.append((e, _evaluation_full_rank(space, rest, m, tol)))
    answer = all(ok for _, ok in per)

    one_common = len(space.common) == 1
    validators = [("one-common-eigenvalue", one_common,
                   "common spectrum size %d" % len(space.common))]
    if one_common:
        value, k, ell = space.common[0]
        ua, ub = space.eigvec_blocks[0]
        validators.append(("multiplicity-pair", True,
                           "(k, l) = (%d, %d) at value %.6g" % (k, ell, value)))
        generic = is_generic(ua, tol) and is_generic(ub, tol)
        validators.append(("generic-eigenspaces", generic,
                           "both shared-eigenvalue eigenspaces generic"
                           if generic else "a shared-eigenvalue eigenspace has"
                           " a singular square submatrix"))
        shape_ok, detail = _beta_shape(beta.pairs, m, k, ell)
        validators.append(("beta-shape", shape_ok, detail))
    else:
        validators.append(("multiplicity-pair", False, "undefined"))
        validators.append(("generic-eigenspaces", False, "not applicable"))
        validators.append(("beta-shape", False, "not applicable"))

    return DirectSumCertificate(beta, kind, answer, tuple(per),
                                tuple(validators), space.dimension,
                                space.common, space.ambiguous)
