"""Scripted replays of the worked constructions, end to end.

Each registry target drives one pipeline: build the blocks, certify the
bridge set, run the growth or completion step, then re-verify spectrum and
pattern on the output. Stages are recorded in order and the first failure
stops the run, so a broken step is named in the report instead of cascading
into later noise. Everything is seeded; rerunning a target with the same
seed replays the same draws.
"""

from __future__ import annotations

import math
import random
import warnings
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .continuation import (complete_pattern_low_rank, liberate,
                           realize_in_pattern, realize_spectrum)
from .directsum import directsum_liberation, is_generic, sylvester_space
from .exactla import RatMatrix, charpoly, direct_sum
from .graphs import (Graph, add_edges, build_graph, cartesian_product,
                     catalog, catalog_entry, cycle_graph, disjoint_union,
                     empty_graph, path_graph, product_index, star_graph)
from .liberation import (enumerate_minimal_liberation_sets,
                         is_graph_liberation_set, is_liberation_set)
from .numla import multiplicity_list, sym_eigen
from .patterns import in_class, pair_position
from .strongprops import has_strong_property, has_strong_property_wrt, psi
from .zeroforcing import is_local_zf_cover, is_zf_cover, zf_liberation

REGISTRY = ("k4k1", "g151", "g100", "g127g169", "g163", "c6c8", "k14",
            "k13k13", "g129", "g171", "g175", "pmpn", "prism", "table6")

CLAIMS = {
    "k4k1": "Two pairs into the isolated vertex free the all-ones block: "
            "spectrum {0^3, 4^2} moves intact into the grown pattern and "
            "exactly the six two-pair sets are minimal.",
    "g151": "Every sampled member of the three-parameter family over the "
            "split star pattern is freed by the four quoted pairs, while one "
            "crafted matrix in the same pattern defeats them.",
    "g100": "A star block and an edge block sharing one simple eigenvalue "
            "merge across two bridges into ordered multiplicities (1,2,2,1).",
    "g127g169": "A triangle-plus-path split realizes (2,1,1,2) and a "
                "clique-plus-edge split realizes (1,3,2) and (2,3,1), each "
                "across its own two bridges.",
    "g163": "A triangle sharing its doubled eigenvalue with a path endpoint "
            "merges across two bridge pairs per shared row, realizing "
            "(1,1,3,1) and (1,3,1,1).",
    "c6c8": "Two cycle blocks sharing one doubled eigenvalue merge across "
            "rectangular bridge grids into 14-vertex matrices with list "
            "(4,2,2,2,2,2); the printed first block lacks the required "
            "strong property, so a cospectral replacement carries the "
            "continuation.",
    "k14": "The key minor of the four-leaf star's verification matrix has "
           "determinant -2*a25*a35*a45^2, and two sampled triples of missing "
           "pairs free every matrix with the pattern.",
    "k13k13": "Two star blocks sharing their repeated leaf value merge "
              "across a two-by-three leaf grid into (1,1,4,1,1), with the "
              "zero hub rows of the shared eigenspaces doing no harm.",
    "g129": "A fork-tree realization with one doubled value absorbs a "
            "matching loose vertex through a three-pair pendant cover, "
            "giving (1,3,1,1) and (1,1,3,1); single added pairs then reach "
            "the two denser patterns.",
    "g171": "Five-cycle realizations absorb a loose vertex through a "
            "four-pair cover, giving all six orderings with a tripled "
            "value; one more pair reaches the densest pattern.",
    "g175": "A star block over two loose diagonal targets realizes (1,3,2) "
            "and (2,3,1) through a six-pair cover, two shared eigenvalues "
            "notwithstanding.",
    "pmpn": "A short recipe of grid pairs covers path-by-path products; the "
            "certified bridge set merges two path blocks into (2,2,2,1).",
    "prism": "A four-pair cover legal only under per-copy forcing certifies "
             "a kernel-sense merge; filling the prism pattern keeps rank 3, "
             "nullity 3, and the kernel-sense strong property.",
    "table6": "Eleven six-vertex patterns each carry every ordered "
              "multiplicity list recorded for them, at two independent "
              "eigenvalue draws per list.",
}


@dataclass(frozen=True)
class Stage:
    name: str
    ok: bool
    detail: str = ""


@dataclass(frozen=True)
class ReproduceReport:
    name: str
    claim: str
    ok: bool
    seed: object
    stages: tuple
    data: dict = field(default_factory=dict)
    failed_stage: str | None = None

    def __bool__(self):
        return self.ok


class _Abort(Exception):
    def __init__(self, stage, detail=""):
        super().__init__("%s: %s" % (stage, detail))
        self.stage = stage
        self.detail = detail


class _Run:
    def __init__(self):
        self.stages = []

    def check(self, name, ok, detail=""):
        self.stages.append(Stage(name, bool(ok), str(detail)))
        if not ok:
            raise _Abort(name, str(detail))


def reproduce(name: str, seed=0, jobs=None) -> ReproduceReport:
    """Run one registry target and return its staged report."""
    if name not in _RUNNERS:
        raise ValueError("unknown target %r; choose from %s"
                         % (name, ", ".join(REGISTRY)))
    run = _Run()
    data = {}
    try:
        if name == "table6":
            data = _run_table6(run, seed, jobs) or {}
        else:
            data = _RUNNERS[name](run, seed) or {}
    except _Abort as ab:
        return ReproduceReport(name, CLAIMS[name], False, seed,
                               tuple(run.stages), data, ab.stage)
    except Exception as ex:  # a crash is a failed stage, not a traceback
        run.stages.append(Stage("unhandled", False,
                                "%s: %s" % (type(ex).__name__, ex)))
        return ReproduceReport(name, CLAIMS[name], False, seed,
                               tuple(run.stages), data, "unhandled")
    return ReproduceReport(name, CLAIMS[name], True, seed,
                           tuple(run.stages), data, None)


# ---------------------------------------------------------------------------
# shared helpers

def _subseed(*parts) -> int:
    # repr of ints/strings/tuples is stable, unlike salted hash()
    return zlib.crc32(repr(parts).encode())


def _draw_values(rng, k, lo=-3.0):
    """Ascending targets with gaps >= 0.9, safe for 1e-6 clustering."""
    vals = [lo + rng.random()]
    for _ in range(k - 1):
        vals.append(vals[-1] + 0.9 + 1.2 * rng.random())
    return vals


def _nonzero_fraction(rng):
    sign = 1 if rng.random() < 0.5 else -1
    return Fraction(sign * rng.randint(1, 9), rng.randint(1, 9))


def _expand(values, mults):
    out = []
    for v, m in zip(values, mults):
        out.extend([float(v)] * int(m))
    return out


def _block_diag(*blocks):
    arrs = [np.asarray(b, dtype=float) for b in blocks]
    n = sum(a.shape[0] for a in arrs)
    out = np.zeros((n, n))
    at = 0
    for a in arrs:
        k = a.shape[0]
        out[at:at + k, at:at + k] = a
        at += k
    return out


def _embed(n, placements):
    """Place blocks at explicit 1-based vertex lists, order preserved."""
    out = np.zeros((n, n))
    for verts, block in placements:
        b = np.asarray(block, dtype=float)
        for i, u in enumerate(verts):
            for j, v in enumerate(verts):
                out[u - 1, v - 1] = b[i, j]
    return out


def _relabel(arr, perm):
    n = arr.shape[0]
    out = np.zeros_like(arr)
    for i in range(n):
        for j in range(n):
            out[perm[i + 1] - 1, perm[j + 1] - 1] = arr[i, j]
    return out


def _sym2(lo, hi):
    """Edge block with spectrum {lo, hi} and nowhere-zero eigenvectors."""
    return np.array([[(lo + hi) / 2.0, (hi - lo) / 2.0],
                     [(hi - lo) / 2.0, (lo + hi) / 2.0]])


def _complete_block(k, repeated, simple):
    """All-pairs block with spectrum {repeated^(k-1), simple}."""
    return repeated * np.eye(k) + ((simple - repeated) / k) * np.ones((k, k))


def _two_double(p, q):
    """Signed 4-cycle in ring order with spectrum {p^2, q^2}.

    One negative edge makes the square of the ring part 2I, so both
    eigenvalues are doubled with generic eigenspaces.
    """
    c = (p + q) / 2.0
    w = (q - p) / (2.0 * math.sqrt(2.0))
    ring = np.array([[0, 1, 0, -1], [1, 0, 1, 0],
                     [0, 1, 0, 1], [-1, 0, 1, 0]], dtype=float)
    return c * np.eye(4) + w * ring


def _certify(a, b, beta, kind="ssp"):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", UserWarning)
        return directsum_liberation(a, b, beta, kind=kind)


def _zf(a, b, f, kind="ssp"):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", UserWarning)
        return zf_liberation(a, b, f, kind=kind)


def _realize_ssp(g, spec, seed, tries=6):
    for k in range(tries):
        m = realize_in_pattern(g, spec, seed=_subseed(seed, "try", k))
        if has_strong_property(m, g, "ssp").answer:
            return m
    raise RuntimeError("no strong realization found in %d tries" % tries)


def _det(m: RatMatrix) -> Fraction:
    c0 = charpoly(m)[0]  # det(xI - m) at x = 0 is (-1)^n det(m)
    return c0 if m.rows % 2 == 0 else -c0


def _realized_ok(name, mults, values, matrix):
    g = catalog(name)
    if not in_class(matrix, g, "S", tol=1e-7):
        return False, "output pattern does not match %s" % name
    ml = multiplicity_list(sym_eigen(matrix)[0], tol=1e-6)
    if tuple(ml.multiplicities) != tuple(mults):
        return False, "multiplicities came out %s" % (ml.multiplicities,)
    dev = max(abs(a - b) for a, b in zip(ml.values, values))
    if dev > 1e-6:
        return False, "eigenvalues drifted %.2e" % dev
    return True, "values within %.1e" % dev


def _spec_dev(arr, targets):
    vals = sym_eigen(np.asarray(arr, dtype=float))[0]
    return max(abs(a - b) for a, b in zip(vals, sorted(targets)))


# ---------------------------------------------------------------------------
# k4k1

def _run_k4k1(run, seed):
    a = RatMatrix.zeros(5, 5)
    for i in range(4):
        for j in range(4):
            a[i, j] = Fraction(1)
    a[4, 4] = Fraction(4)
    g = catalog("K4uK1")
    beta = ((3, 5), (4, 5))

    cert = is_liberation_set(a, g, beta)
    names = ", ".join(k for k, _ in cert.criteria)
    run.check("certify the pair", cert.answer,
              "criteria in agreement: %s" % names)

    minimal = enumerate_minimal_liberation_sets(a, g, max_size=2)
    pairs = sorted(tuple(s.pairs) for s in minimal)
    run.check("exactly the six two-pair sets are minimal",
              len(pairs) == 6 and all(len(p) == 2 for p in pairs),
              "%d sets" % len(pairs))

    lib = liberate(a, g, beta, seed=seed)
    dev = _spec_dev(lib.matrix, [0, 0, 0, 4, 4])
    h = lib.graph
    off = max((abs(lib.matrix[i, j])
               for i in range(5) for j in range(i + 1, 5)
               if not h.has_edge(i + 1, j + 1)), default=0.0)
    run.check("grown matrix keeps the spectrum", dev <= 1e-9,
              "max eigenvalue deviation %.1e" % dev)
    run.check("pattern entries stay alive", lib.min_pattern_entry >= 1e-6,
              "smallest entry %.2e" % lib.min_pattern_entry)
    run.check("off-pattern entries are exactly zero", off == 0.0)
    run.check("strong property re-verified on output",
              lib.strong_property_verified)
    return {"beta": list(beta), "residual": lib.residual,
            "minimal_sets": [list(map(list, p)) for p in pairs],
            "spectrum": [float(v) for v in lib.spectrum]}


# ---------------------------------------------------------------------------
# g151

def _g151_member(b, t, a):
    m = RatMatrix.zeros(6, 6)
    m[0, 0] = Fraction(b)
    for i in (1, 2, 3):
        m[0, i] = m[i, 0] = Fraction(t)
    for i in (4, 5):
        for j in (4, 5):
            m[i, j] = Fraction(a)
    return m


def _run_g151(run, seed):
    rng = random.Random(_subseed(seed, "g151"))
    entry = catalog_entry("G151")
    base, beta = entry.base, entry.beta

    for k in range(50):
        a = _g151_member(_nonzero_fraction(rng), _nonzero_fraction(rng),
                         _nonzero_fraction(rng))
        cert = is_liberation_set(a, base, beta)
        if not cert.answer:
            run.check("family draw %d certified" % k, False,
                      "criteria %s" % (cert.criteria,))
    run.check("fifty family draws certified", True,
              "exact verdict on every draw")

    member = _g151_member(1, 1, 1)
    reduced = (((3, 5), (4, 5), (4, 6)), ((3, 5), (4, 5), (2, 6)))
    both = all(
        has_strong_property_wrt(member, base, add_edges(base, rest),
                                "ssp").answer
        for rest in reduced)
    run.check("two reduced supergraphs carry the relative property", both,
              "symmetry cuts the drop-one checks to two")

    bad1 = RatMatrix.from_rows(
        [[Fraction(0), Fraction(1), Fraction(1), Fraction(1)],
         [Fraction(1), Fraction(-1), Fraction(0), Fraction(0)],
         [Fraction(1), Fraction(0), Fraction(0), Fraction(0)],
         [Fraction(1), Fraction(0), Fraction(0), Fraction(0)]])
    bad2 = RatMatrix.from_rows([[Fraction(0), Fraction(1)],
                                [Fraction(1), Fraction(1)]])
    bad = direct_sum(bad1, bad2)
    cert = is_liberation_set(bad, base, beta)
    failing = [e for e, ok in cert.per_beta_prime if not ok]
    run.check("crafted matrix defeats the pairs",
              not cert.answer and failing,
              "failing deletion(s): %s" % failing)
    return {"beta": [list(p) for p in beta],
            "failing_deletions": [list(p) for p in failing]}


# ---------------------------------------------------------------------------
# table rows built from two blocks joined by explicit bridges

def _merge_row(a, b, entry_name, *, certify_beta=None, seed=0):
    """Certify bridges of a catalog entry and grow the block matrix."""
    entry = catalog_entry(entry_name)
    beta = certify_beta or entry.beta
    cert = _certify(a, b, beta)
    if not cert.answer:
        raise RuntimeError("bridge certificate failed for %s" % entry_name)
    m = _block_diag(a, b)
    lib = liberate(m, entry.base, entry.beta, seed=seed)
    return lib.matrix


def _row_g100(mults, values, seed):
    v = values
    a = realize_spectrum([v[0], v[1], v[1], v[2]], "star",
                         seed=_subseed(seed, "star")).array
    b = _sym2(v[2], v[3])
    return _merge_row(a, b, "G100", seed=seed)


def _row_g127(mults, values, seed):
    v = values
    a = _complete_block(3, v[0], v[3])
    b = realize_spectrum([v[1], v[2], v[3]], "path",
                         seed=_subseed(seed, "path")).array
    return _merge_row(a, b, "G127", seed=seed)


def _row_g169(mults, values, seed):
    v = values
    other = v[2] if mults == (1, 3, 2) else v[0]
    a = _complete_block(4, v[1], other)
    b = _sym2(v[0], v[2])
    return _merge_row(a, b, "G169", seed=seed)


def _row_g163(mults, values, seed):
    w = values
    if mults == (1, 1, 3, 1):
        a = _complete_block(3, w[2], w[3])
        bspec = [w[0], w[1], w[2]]
    else:  # (1, 3, 1, 1)
        a = _complete_block(3, w[1], w[0])
        bspec = [w[1], w[2], w[3]]
    b = realize_spectrum(bspec, "path", seed=_subseed(seed, "path")).array
    return _merge_row(a, b, "G163", seed=seed)


_G151_FAMILY = ((1, 3, 1, 1), (1, 1, 3, 1), (1, 3, 2), (2, 3, 1))
_G151_ALT_BASE = Graph(6, ((1, 3), (1, 4), (3, 5), (4, 5), (2, 6)))
_G151_ALT_BETA = ((1, 2), (4, 6), (5, 6))


def _g151_family_matrix(mults, values):
    """Family member whose shifted spectrum hits the target values."""
    if mults == (1, 3, 1, 1):
        s = values[1]
        lam_m, two_a, lam_p = (values[0] - s, values[2] - s, values[3] - s)
    elif mults == (1, 1, 3, 1):
        s = values[2]
        lam_m, two_a, lam_p = (values[0] - s, values[1] - s, values[3] - s)
    elif mults == (1, 3, 2):
        s = values[1]
        lam_m, lam_p = values[0] - s, values[2] - s
        two_a = lam_p
    elif mults == (2, 3, 1):
        s = values[1]
        lam_m, lam_p = values[0] - s, values[2] - s
        two_a = lam_m
    else:
        raise ValueError("no family member for %s" % (mults,))
    m = np.zeros((6, 6))
    m[0, 0] = lam_m + lam_p
    t = math.sqrt(-lam_m * lam_p / 3.0)
    for i in (1, 2, 3):
        m[0, i] = m[i, 0] = t
    for i in (4, 5):
        for j in (4, 5):
            m[i, j] = two_a / 2.0
    return m + s * np.eye(6)


def _row_g151(mults, values, seed):
    entry = catalog_entry("G151")
    if mults in _G151_FAMILY:
        m6 = _g151_family_matrix(mults, values)
        cert = _certify(m6[:4, :4], m6[4:, 4:], entry.beta)
        if not cert.answer:
            raise RuntimeError("family bridge certificate failed")
        return liberate(m6, entry.base, entry.beta, seed=seed).matrix
    # (1,2,3) and (3,2,1) are out of the family's reach: the pattern also
    # splits as a signed 4-cycle on 1,3,5,4 plus the pair 2,6, which puts a
    # doubled value at either extreme.
    v = values
    if mults == (1, 2, 3):
        a, b = _two_double(v[1], v[2]), _sym2(v[0], v[2])
    elif mults == (3, 2, 1):
        a, b = _two_double(v[0], v[1]), _sym2(v[0], v[2])
    else:
        raise ValueError("no construction for %s" % (mults,))
    cert = _certify(a, b, ((1, 5), (3, 6), (4, 6)))
    if not cert.answer:
        raise RuntimeError("signed-cycle bridge certificate failed")
    m6 = _embed(6, (((1, 3, 5, 4), a), ((2, 6), b)))
    return liberate(m6, _G151_ALT_BASE, _G151_ALT_BETA, seed=seed).matrix


# ---------------------------------------------------------------------------
# rows grown from a block plus one loose vertex via a forcing cover

_G129_PERM = {1: 4, 2: 3, 3: 2, 4: 1, 5: 6, 6: 5}


def _row_g129(mults, values, seed):
    g30 = build_graph(5, ((1, 2), (2, 3), (3, 4), (3, 5)))
    v = values
    if mults == (1, 3, 1, 1):
        spec5, theta = [v[0], v[1], v[1], v[2], v[3]], v[1]
    elif mults == (1, 1, 3, 1):
        spec5, theta = [v[0], v[1], v[2], v[2], v[3]], v[2]
    else:
        raise ValueError("no construction for %s" % (mults,))
    m = _realize_ssp(g30, spec5, _subseed(seed, "fork"))
    rep = _zf(m, np.array([[theta]]), ((1, 1), (4, 1), (5, 1)))
    if not (rep.combinatorial and bool(rep)):
        raise RuntimeError("pendant cover failed")
    base = disjoint_union(g30, empty_graph(1))
    lib = liberate(_block_diag(m, [[theta]]), base,
                   ((1, 6), (4, 6), (5, 6)), seed=seed)
    return _relabel(lib.matrix, _G129_PERM)


def _row_g145(mults, values, seed):
    parent = _row_g129(mults, values, seed)
    return liberate(parent, catalog("G129"), ((2, 5),), seed=seed).matrix


def _row_g153(mults, values, seed):
    parent = _row_g129(mults, values, seed)
    return liberate(parent, catalog("G129"), ((1, 6),), seed=seed).matrix


_C5_LIFT = {
    (1, 2, 3): ((1, 2, 2), 2),
    (1, 3, 2): ((1, 2, 2), 1),
    (3, 2, 1): ((2, 2, 1), 0),
    (2, 3, 1): ((2, 2, 1), 1),
    (1, 1, 3, 1): ((1, 1, 2, 1), 2),
    (1, 3, 1, 1): ((1, 2, 1, 1), 1),
}


def _row_g171(mults, values, seed):
    base_mults, pos = _C5_LIFT[mults]
    theta = values[pos]
    c5 = cycle_graph(5)
    m = _realize_ssp(c5, _expand(values, base_mults), _subseed(seed, "c5"))
    rep = _zf(m, np.array([[theta]]), ((1, 1), (3, 1), (4, 1), (5, 1)))
    if not (rep.combinatorial and bool(rep)):
        raise RuntimeError("cycle cover failed")
    base = disjoint_union(c5, empty_graph(1))
    lib = liberate(_block_diag(m, [[theta]]), base,
                   ((1, 6), (3, 6), (4, 6), (5, 6)), seed=seed)
    return lib.matrix


def _row_g187(mults, values, seed):
    parent = _row_g171(mults, values, seed)
    return liberate(parent, catalog("G171"), ((2, 6),), seed=seed).matrix


_G175_PERM = {1: 6, 2: 1, 3: 3, 4: 5, 5: 4, 6: 2}


def _row_g175(mults, values, seed):
    w = values
    a = realize_spectrum([w[0], w[1], w[1], w[2]], "star",
                         seed=_subseed(seed, "star")).array
    b = np.diag([w[1], w[2]] if mults == (1, 3, 2) else [w[0], w[1]])
    rep = _zf(a, b, tuple((u, vv) for u in (2, 3, 4) for vv in (1, 2)))
    if not (rep.combinatorial and bool(rep)):
        raise RuntimeError("leaf cover failed")
    base = build_graph(6, ((1, 2), (1, 3), (1, 4)))
    beta = tuple((u, vv) for u in (2, 3, 4) for vv in (5, 6))
    lib = liberate(_block_diag(a, b), base, beta, seed=seed)
    return _relabel(lib.matrix, _G175_PERM)


# ---------------------------------------------------------------------------
# remaining single-example runners

def _run_g100(run, seed):
    rng = random.Random(_subseed(seed, "g100"))
    v = _draw_values(rng, 4)
    a = realize_spectrum([v[0], v[1], v[1], v[2]], "star",
                         seed=_subseed(seed, "star")).array
    b = _sym2(v[2], v[3])
    run.check("block spectra on target",
              _spec_dev(a, [v[0], v[1], v[1], v[2]]) <= 1e-8
              and _spec_dev(b, [v[2], v[3]]) <= 1e-12)
    run.check("blocks carry the strong property",
              has_strong_property(a, star_graph(3), "ssp").answer
              and has_strong_property(b, path_graph(2), "ssp").answer)
    cert = _certify(a, b, ((4, 5), (4, 6)))
    run.check("bridge pair certified", cert.answer,
              "intertwiner dimension %d" % cert.dimension)
    m = _row_g100((1, 2, 2, 1), tuple(v), _subseed(seed, "row"))
    ok, detail = _realized_ok("G100", (1, 2, 2, 1), v, m)
    run.check("merged matrix carries (1,2,2,1)", ok, detail)
    return {"targets": [float(x) for x in v]}


def _run_g127g169(run, seed):
    rng = random.Random(_subseed(seed, "g127g169"))
    v = _draw_values(rng, 4)
    a = _complete_block(3, v[0], v[3])
    b = realize_spectrum([v[1], v[2], v[3]], "path",
                         seed=_subseed(seed, "path")).array
    run.check("triangle and path blocks strong",
              has_strong_property(a, build_graph(3, ((1, 2), (1, 3), (2, 3))),
                                  "ssp").answer
              and has_strong_property(b, path_graph(3), "ssp").answer)
    m127 = _row_g127((2, 1, 1, 2), tuple(v), _subseed(seed, "g127"))
    ok, detail = _realized_ok("G127", (2, 1, 1, 2), v, m127)
    run.check("first split carries (2,1,1,2)", ok, detail)

    w = _draw_values(rng, 3)
    for mults in ((1, 3, 2), (2, 3, 1)):
        m169 = _row_g169(mults, tuple(w), _subseed(seed, "g169", mults))
        ok, detail = _realized_ok("G169", mults, w, m169)
        run.check("second split carries %s" % (mults,), ok, detail)
    return {"first_targets": [float(x) for x in v],
            "second_targets": [float(x) for x in w]}


def _run_g163(run, seed):
    rng = random.Random(_subseed(seed, "g163"))
    w = _draw_values(rng, 4)
    entry = catalog_entry("G163")
    by_row = {}
    for u, vv in entry.beta:
        by_row.setdefault(u, []).append(vv)
    run.check("bridge layout is two pairs per shared row",
              sorted(len(t) for t in by_row.values()) == [2, 2],
              "rows %s" % sorted(by_row))
    for mults in ((1, 1, 3, 1), (1, 3, 1, 1)):
        m = _row_g163(mults, tuple(w), _subseed(seed, mults))
        ok, detail = _realized_ok("G163", mults, w, m)
        run.check("split carries %s" % (mults,), ok, detail)
    return {"targets": [float(x) for x in w]}


def _c6c8_blocks():
    a = np.zeros((6, 6))
    for i in range(5):
        a[i, i + 1] = a[i + 1, i] = 1.0
    a[0, 5] = a[5, 0] = -1.0
    b = np.zeros((8, 8))
    for i in range(7):
        b[i, i + 1] = b[i + 1, i] = 1.0
    w = math.sqrt(5.0 / 3.0)
    b[3, 4] = b[4, 3] = w
    b[0, 7] = b[7, 0] = -w
    return a, b


def _eigenspace_generic_flags(arr):
    vals, vecs = sym_eigen(np.asarray(arr, dtype=float))
    ml = multiplicity_list(vals, tol=1e-8)
    flags = []
    at = 0
    for value, k in ml:
        flags.append((float(value), is_generic(vecs[:, at:at + k])))
        at += k
    return flags


def _run_c6c8(run, seed):
    r3 = math.sqrt(3.0)
    s23 = math.sqrt(2.0 / 3.0)
    a, b = _c6c8_blocks()
    dev_a = _spec_dev(a, [-r3, -r3, 0, 0, r3, r3])
    dev_b = _spec_dev(b, [-2, -2, -s23, -s23, s23, s23, 2, 2])
    run.check("closed-form spectra", max(dev_a, dev_b) <= 1e-9,
              "deviations %.1e / %.1e" % (dev_a, dev_b))

    flags_a = _eigenspace_generic_flags(a)
    flags_b = _eigenspace_generic_flags(b)
    run.check("every eigenspace generic except the first block's kernel",
              [ok for _, ok in flags_a] == [True, False, True]
              and all(ok for _, ok in flags_b))

    exact_a = RatMatrix.from_rows(
        [[Fraction(round(x)) for x in row] for row in a])
    obstruction = has_strong_property(exact_a, cycle_graph(6), "ssp")
    run.check("printed first block lacks the strong property",
              not obstruction.answer,
              "a commuting matrix lives on the distance-2 pairs; shifting "
              "cannot remove it, so a cospectral replacement is used")

    rep = _realize_ssp(cycle_graph(6), [-r3, -r3, 0, 0, r3, r3],
                       _subseed(seed, "c6fix"))
    vals, vecs = sym_eigen(rep)
    run.check("replacement block strong with generic shared eigenspace",
              is_generic(vecs[:, :2]),
              "same spectrum, spectral deviation %.1e"
              % _spec_dev(rep, [-r3, -r3, 0, 0, r3, r3]))

    s = r3 - 2.0
    sh = rep + s * np.eye(6)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", UserWarning)
        space = sylvester_space(sh, b)
    run.check("coupled solution space has dimension 4",
              space.dimension == 4 and len(space.common) == 1,
              "shared value %.6f with multiplicities (2, 2)"
              % space.common[0][0])

    base14 = disjoint_union(cycle_graph(6), cycle_graph(8))
    shifted_printed = a + s * np.eye(6)
    lists = {}
    for tag, beta in (("2x3", tuple((u, v) for u in (1, 2)
                                    for v in (7, 8, 9))),
                      ("3x2", tuple((u, v) for u in (1, 2, 3)
                                    for v in (7, 8)))):
        printed_cert = _certify(shifted_printed, b, beta)
        run.check("grid %s certified on the printed pair (bridge side)" % tag,
                  printed_cert.answer,
                  "the bridge mechanism holds; only the block's own "
                  "property fails")
        cert = _certify(sh, b, beta)
        run.check("grid %s certified on the repaired pair" % tag, cert.answer)
        lib = liberate(_block_diag(sh, b), base14, beta,
                       seed=_subseed(seed, tag))
        ml = multiplicity_list(lib.spectrum, tol=1e-6)
        run.check("grid %s yields (4,2,2,2,2,2) with the strong property"
                  % tag,
                  ml.multiplicities == (4, 2, 2, 2, 2, 2)
                  and lib.strong_property_verified,
                  "came out %s" % (ml.multiplicities,))
        lists[tag] = list(ml.multiplicities)
    return {"shift": s, "lists": lists}


def _run_k14(run, seed):
    g = build_graph(5, ((1, 5), (2, 5), (3, 5), (4, 5)))
    rng = random.Random(_subseed(seed, "k14"))
    cols = [pair_position(5, i, 5) for i in (1, 2, 3, 4)]
    keep = ((1, 4), (2, 3), (2, 4), (3, 4))
    for k in range(20):
        d = [Fraction(rng.randint(-9, 9)) for _ in range(5)]
        border = [_nonzero_fraction(rng) for _ in range(4)]
        m = RatMatrix.zeros(5, 5)
        for i in range(5):
            m[i, i] = d[i]
        for i in range(4):
            m[i, 4] = m[4, i] = border[i]
        vm = psi(m, g, "ssp")
        if k == 0:
            run.check("verification rows come out in pair order",
                      vm.rows == ((1, 2), (1, 3), (1, 4),
                                  (2, 3), (2, 4), (3, 4)))
        sub = vm.matrix.submatrix(row_idx=[vm.row_index(p) for p in keep],
                                  col_idx=cols)
        got = _det(sub)
        want = Fraction(-2) * border[1] * border[2] * border[3] ** 2
        if got != want:
            run.check("determinant draw %d" % k, False,
                      "got %s, wanted %s" % (got, want))
    run.check("twenty exact determinants", True,
              "-2 * a25 * a35 * a45^2 every time")

    for tag, beta in (("leaf triangle", ((1, 2), (2, 3), (1, 3))),
                      ("pairs at one leaf", ((1, 2), (1, 3), (1, 4)))):
        verdict = is_graph_liberation_set(g, beta, trials=40,
                                          seed=_subseed(seed, tag))
        run.check("%s frees every sampled matrix" % tag, bool(verdict),
                  verdict.verdict)
    return {"determinant": "-2*a25*a35*a45^2"}


def _run_k13k13(run, seed):
    rng = random.Random(_subseed(seed, "k13k13"))
    w = _draw_values(rng, 5)
    a = realize_spectrum([w[0], w[2], w[2], w[3]], "star",
                         seed=_subseed(seed, "a")).array
    b = realize_spectrum([w[1], w[2], w[2], w[4]], "star",
                         seed=_subseed(seed, "b")).array
    beta = tuple((u, v) for u in (2, 3) for v in (6, 7, 8))
    cert = _certify(a, b, beta)
    run.check("leaf grid certified", cert.answer,
              "intertwiner dimension %d" % cert.dimension)
    generic_ok, detail = cert.validator("generic-eigenspaces")
    run.check("hub rows break full genericity yet the grid still works",
              not generic_ok and cert.answer, detail)
    base = disjoint_union(star_graph(3), star_graph(3))
    lib = liberate(_block_diag(a, b), base, beta, seed=_subseed(seed, "lib"))
    ml = multiplicity_list(lib.spectrum, tol=1e-6)
    run.check("merged stars carry (1,1,4,1,1)",
              ml.multiplicities == (1, 1, 4, 1, 1)
              and lib.strong_property_verified,
              "came out %s" % (ml.multiplicities,))
    return {"targets": [float(x) for x in w]}


def _run_g129(run, seed):
    rng = random.Random(_subseed(seed, "g129"))
    values, m = None, None
    for mults in ((1, 3, 1, 1), (1, 1, 3, 1)):
        values = _draw_values(rng, 4)
        m = _row_g129(mults, tuple(values), _subseed(seed, "row", mults))
        ok, detail = _realized_ok("G129", mults, values, m)
        run.check("fork pattern carries %s" % (mults,), ok, detail)
    grown = liberate(m, catalog("G129"), ((2, 5),),
                     seed=_subseed(seed, "145")).matrix
    ok, detail = _realized_ok("G145", (1, 1, 3, 1), values, grown)
    run.check("one added pair reaches the next pattern", ok, detail)
    grown = liberate(m, catalog("G129"), ((1, 6),),
                     seed=_subseed(seed, "153")).matrix
    ok, detail = _realized_ok("G153", (1, 1, 3, 1), values, grown)
    run.check("a different added pair reaches the other pattern", ok, detail)
    return {"targets": [float(x) for x in values]}


def _run_g171(run, seed):
    rng = random.Random(_subseed(seed, "g171"))
    values, m = None, None
    for mults in ((1, 2, 3), (1, 3, 2), (3, 2, 1), (2, 3, 1),
                  (1, 1, 3, 1), (1, 3, 1, 1)):
        values = _draw_values(rng, len(mults))
        m = _row_g171(mults, tuple(values), _subseed(seed, "row", mults))
        ok, detail = _realized_ok("G171", mults, values, m)
        run.check("cycle pattern carries %s" % (mults,), ok, detail)
    grown = liberate(m, catalog("G171"), ((2, 6),),
                     seed=_subseed(seed, "187")).matrix
    ok, detail = _realized_ok("G187", (1, 3, 1, 1), values, grown)
    run.check("one added pair reaches the densest pattern", ok, detail)
    return {"last_targets": [float(x) for x in values]}


def _run_g175(run, seed):
    rng = random.Random(_subseed(seed, "g175"))
    w = _draw_values(rng, 3)
    a = realize_spectrum([w[0], w[1], w[1], w[2]], "star",
                         seed=_subseed(seed, "star")).array
    b = np.diag([w[1], w[2]])
    cert = _certify(a, b, tuple((u, v) for u in (2, 3, 4) for v in (5, 6)))
    run.check("six-pair cover certified with two shared values",
              cert.answer and len(cert.common) == 2,
              "intertwiner dimension %d" % cert.dimension)
    for mults in ((1, 3, 2), (2, 3, 1)):
        m = _row_g175(mults, tuple(w), _subseed(seed, "row", mults))
        ok, detail = _realized_ok("G175", mults, w, m)
        run.check("double star carries %s" % (mults,), ok, detail)
    return {"targets": [float(x) for x in w]}


def _grid_cover(s, t):
    """Cover recipe for an s-path by t-path product, built from the s side."""
    pairs = [(i, 1) for i in range(1, s + 1)]
    pairs += [(i, 2) for i in range(1, s + 1) if i % 4 in (2, 3)]
    if (s - 1) % 4 not in (2, 3):
        pairs.append((s - 1, 2))
    return sorted(set(pairs))


def _run_pmpn(run, seed):
    rng = random.Random(_subseed(seed, "pmpn"))
    for s, t in ((2, 3), (3, 4), (4, 5)):
        f = _grid_cover(s, t)
        prod = cartesian_product(path_graph(s), path_graph(t))
        filled = [product_index(u, v, t) for (u, v) in f]
        if not is_zf_cover(prod, filled):
            run.check("cover recipe on the %dx%d grid" % (s, t), False,
                      "pairs %s" % f)
    run.check("cover recipe on three grids", True)

    f = _grid_cover(3, 4)
    run.check("worked instance uses five pairs",
              f == [(1, 1), (2, 1), (2, 2), (3, 1), (3, 2)], "pairs %s" % f)
    v = _draw_values(rng, 4)
    a = realize_spectrum(v[:3], "path", seed=_subseed(seed, "a")).array
    b = realize_spectrum(v, "path", seed=_subseed(seed, "b")).array
    run.check("path blocks strong",
              has_strong_property(a, path_graph(3), "ssp").answer
              and has_strong_property(b, path_graph(4), "ssp").answer)
    rep = _zf(a, b, f)
    run.check("cover certifies algebraically despite three shared values",
              rep.combinatorial and bool(rep) and rep.agree)
    base = disjoint_union(path_graph(3), path_graph(4))
    beta = tuple((u, vv + 3) for (u, vv) in f)
    lib = liberate(_block_diag(a, b), base, beta, seed=_subseed(seed, "lib"))
    ml = multiplicity_list(lib.spectrum, tol=1e-6)
    run.check("merged paths carry (2,2,2,1)",
              ml.multiplicities == (2, 2, 2, 1)
              and lib.strong_property_verified,
              "came out %s" % (ml.multiplicities,))
    return {"cover": [list(p) for p in f],
            "targets": [float(x) for x in v]}


def _run_prism(run, seed):
    c4, k2 = cycle_graph(4), path_graph(2)
    a = np.zeros((4, 4))
    for (i, j) in ((1, 2), (2, 3), (3, 4), (1, 4)):
        a[i - 1, j - 1] = a[j - 1, i - 1] = 1.0
    b = np.ones((2, 2))
    run.check("blocks strong in the kernel sense",
              has_strong_property(a, c4, "sap").answer
              and has_strong_property(b, k2, "sap").answer)

    f = ((1, 1), (2, 1), (3, 2), (4, 2))
    filled = [product_index(u, v, 2) for (u, v) in f]
    run.check("cover legal under per-copy forcing only",
              is_local_zf_cover(c4, k2, f)
              and not is_zf_cover(cartesian_product(c4, k2), filled))

    rep = _zf(a, b, f, kind="sap")
    drops = [e for e, ok in rep.algebraic.per_beta_prime if not ok]
    run.check("every deletion stays certified", bool(rep) and not drops,
              "failing deletions: %s" % drops if drops else "all four hold")

    res = complete_pattern_low_rank(_block_diag(a, b), catalog("prism"),
                                    seed=seed)
    run.check("filled pattern keeps rank 3 and nullity 3",
              res.rank == 3 and res.off_pattern_residual <= 1e-8,
              "inertia %s, off-pattern %.1e"
              % (res.inertia, res.off_pattern_residual))
    run.check("kernel-sense strong property on the filled matrix",
              has_strong_property(res.matrix, catalog("prism"),
                                  "sap").answer)
    return {"rank": res.rank, "inertia": list(res.inertia)}


# ---------------------------------------------------------------------------
# the table batch

TABLE6 = {
    "G100": ((1, 2, 2, 1),),
    "G127": ((2, 1, 1, 2),),
    "G129": ((1, 1, 3, 1), (1, 3, 1, 1)),
    "G145": ((1, 1, 3, 1), (1, 3, 1, 1)),
    "G151": ((1, 1, 3, 1), (1, 3, 1, 1), (1, 2, 3), (3, 2, 1),
             (1, 3, 2), (2, 3, 1)),
    "G153": ((1, 1, 3, 1), (1, 3, 1, 1)),
    "G163": ((1, 1, 3, 1), (1, 3, 1, 1)),
    "G169": ((1, 3, 2), (2, 3, 1)),
    "G171": ((1, 1, 3, 1), (1, 3, 1, 1), (1, 2, 3), (3, 2, 1),
             (1, 3, 2), (2, 3, 1)),
    "G175": ((1, 3, 2), (2, 3, 1)),
    "G187": ((1, 1, 3, 1), (1, 3, 1, 1), (1, 2, 3), (3, 2, 1),
             (1, 3, 2), (2, 3, 1)),
}

_ROW_BUILDERS = {
    "G100": _row_g100, "G127": _row_g127, "G129": _row_g129,
    "G145": _row_g145, "G151": _row_g151, "G153": _row_g153,
    "G163": _row_g163, "G169": _row_g169, "G171": _row_g171,
    "G175": _row_g175, "G187": _row_g187,
}


def _table6_row(name, seed, draws=2):
    done, errors = [], []
    for mults in TABLE6[name]:
        for d in range(draws):
            rng = random.Random(_subseed(seed, "table6", name, mults, d))
            values = _draw_values(rng, len(mults))
            try:
                m = _ROW_BUILDERS[name](mults, tuple(values),
                                        _subseed(seed, "row", name, mults, d))
                ok, detail = _realized_ok(name, mults, values, m)
            except Exception as ex:
                ok, detail = False, "%s: %s" % (type(ex).__name__, ex)
            if ok:
                done.append("%s draw %d" % (mults, d))
            else:
                errors.append("%s draw %d: %s" % (mults, d, detail))
    return name, done, errors


def _table6_task(args):
    return _table6_row(*args)


def _run_table6(run, seed, jobs=None):
    names = sorted(TABLE6)
    results = {}
    if jobs is not None and int(jobs) > 1:
        with ProcessPoolExecutor(max_workers=int(jobs)) as pool:
            for name, done, errors in pool.map(
                    _table6_task, [(n, seed) for n in names]):
                results[name] = (done, errors)
    else:
        for n in names:
            _, done, errors = _table6_row(n, seed)
            results[n] = (done, errors)
    for n in names:
        done, errors = results[n]
        run.check("row %s holds %d list realizations" % (n, len(done)),
                  not errors,
                  "; ".join(errors) if errors else "every list at two draws")
    return {"realizations": {n: len(results[n][0]) for n in names}}


_RUNNERS = {
    "k4k1": _run_k4k1,
    "g151": _run_g151,
    "g100": _run_g100,
    "g127g169": _run_g127g169,
    "g163": _run_g163,
    "c6c8": _run_c6c8,
    "k14": _run_k14,
    "k13k13": _run_k13k13,
    "g129": _run_g129,
    "g171": _run_g171,
    "g175": _run_g175,
    "pmpn": _run_pmpn,
    "prism": _run_prism,
    "table6": _run_table6,
}
