"""Time-aware weight matrices for cycle optimization.

Three loss kinds over a restricted p-simplex set P:

* vertex:  diagonal, entry = spread (max - min) of the simplex's own vertex
  labels;
* simplex: symmetric off-diagonal, entry = |mean label difference| between
  adjacent simplices (sharing a p-element vertex subset), zero diagonal;
* length:  identity, the plain sparsity baseline.

The effective per-variable LP cost of simplex j is the largest entry in
column j. For the diagonal kinds that is just the diagonal entry; for the
adjacency kind it charges each simplex its worst time gap to a neighbor,
so a cycle pays the sum over its edges of the largest adjacent-label
difference. Summing whole columns instead would bill every simplex for all
of its neighbors at once and drag the optimum toward sparsely connected
corners of the complex rather than time-coherent ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np
import scipy.sparse as sp

from .complexes import Chain, Filtration, Simplex

VERTEX = "vertex"
SIMPLEX = "simplex"
LENGTH = "length"
EUCLIDEAN = "euclidean"
KINDS = (VERTEX, SIMPLEX, LENGTH)


@dataclass
class WeightMatrix:
    kind: str
    entries: sp.csr_matrix
    column_costs: np.ndarray

    def __post_init__(self):
        if (self.entries < 0).nnz:
            raise ValueError("weight entries must be non-negative")


def _verts(s) -> tuple[int, ...]:
    if isinstance(s, Simplex):
        return s.vertices
    return tuple(int(v) for v in s)


def simplex_time_label(s, labels) -> float:
    """Mean time label of the simplex's vertices."""
    v = _verts(s)
    return float(sum(float(labels[i]) for i in v) / len(v))


def adjacent(si, sj) -> bool:
    """True iff the simplices share all but one vertex (intersection of
    cardinality p for two p-simplices)."""
    a, b = _verts(si), _verts(sj)
    if len(a) != len(b):
        raise ValueError("adjacency needs equal dimensions")
    return len(set(a) & set(b)) == len(a) - 1


def vertex_weights(P, labels) -> WeightMatrix:
    """Diagonal weights: own-vertex label spread per simplex."""
    diag = np.array(
        [
            max(float(labels[v]) for v in _verts(s))
            - min(float(labels[v]) for v in _verts(s))
            for s in P
        ]
    )
    m = sp.diags(diag, format="csr")
    return WeightMatrix(kind=VERTEX, entries=m, column_costs=diag.copy())


def simplex_weights(P, labels) -> WeightMatrix:
    """Symmetric adjacency weights: |T(s_i) - T(s_j)| for adjacent pairs.

    Adjacency is found by grouping simplices over their p-element vertex
    subsets; two distinct simplices sharing such a subset intersect in
    exactly p vertices.
    """
    simps = [_verts(s) for s in P]
    n = len(simps)
    means = np.array([simplex_time_label(s, labels) for s in simps])
    facet_groups: dict[tuple, list[int]] = {}
    for j, s in enumerate(simps):
        for k in range(len(s)):
            facet_groups.setdefault(s[:k] + s[k + 1 :], []).append(j)
    ri, ci, data = [], [], []
    for group in facet_groups.values():
        for a, b in combinations(group, 2):
            w = abs(means[a] - means[b])
            ri.extend((a, b))
            ci.extend((b, a))
            data.extend((w, w))
    m = sp.csr_matrix(
        (np.array(data), (np.array(ri, int), np.array(ci, int))), shape=(n, n)
    )
    costs = np.zeros(n)
    coo = m.tocoo()
    np.maximum.at(costs, coo.col, coo.data)
    return WeightMatrix(kind=SIMPLEX, entries=m, column_costs=costs)


def length_weights(P) -> WeightMatrix:
    """Identity weights: objective counts support simplices."""
    n = len(list(P))
    m = sp.identity(n, format="csr")
    return WeightMatrix(kind=LENGTH, entries=m, column_costs=np.ones(n))


def euclidean_length_weights(P, points) -> WeightMatrix:
    """Diagonal weights by Euclidean diameter of each simplex (alternative
    reading of the length baseline)."""
    pts = np.asarray(points, float)
    diag = []
    for s in P:
        v = _verts(s)
        dmax = 0.0
        for a, b in combinations(v, 2):
            dmax = max(dmax, float(np.linalg.norm(pts[a] - pts[b])))
        diag.append(dmax)
    diag = np.array(diag)
    m = sp.diags(diag, format="csr")
    return WeightMatrix(kind=EUCLIDEAN, entries=m, column_costs=diag.copy())


def weights_for(kind: str, P, labels, points=None) -> WeightMatrix:
    if kind == VERTEX:
        return vertex_weights(P, labels)
    if kind == SIMPLEX:
        return simplex_weights(P, labels)
    if kind == LENGTH:
        return length_weights(P)
    if kind == EUCLIDEAN:
        if points is None:
            raise ValueError("euclidean weights need point coordinates")
        return euclidean_length_weights(P, points)
    raise ValueError(f"unknown weight kind {kind!r}")


def time_dispersion(c: Chain, f: Filtration, labels) -> float:
    """Max minus min vertex time label over the chain's support."""
    if not c:
        raise ValueError("dispersion undefined for zero chain")
    lo, hi = np.inf, -np.inf
    for idx in c.entries:
        for v in f.simplices[idx]:
            t = float(labels[v])
            lo, hi = min(lo, t), max(hi, t)
    return hi - lo


def support_dispersion(support_simplices, labels) -> float:
    """time_dispersion over explicit vertex tuples (no filtration needed)."""
    vs = [v for s in support_simplices for v in _verts(s)]
    if not vs:
        raise ValueError("dispersion undefined for zero chain")
    ts = [float(labels[v]) for v in vs]
    return max(ts) - min(ts)


def max_adjacent_difference_cost(support_simplices, labels) -> float:
    """Diagnostic only: sum over support simplices of the largest mean-label
    difference to an adjacent support simplex (0 with no adjacent neighbor)."""
    simps = [_verts(s) for s in support_simplices]
    means = [simplex_time_label(s, labels) for s in simps]
    total = 0.0
    for i, si in enumerate(simps):
        best = 0.0
        for j, sj in enumerate(simps):
            if i != j and len(set(si) & set(sj)) == len(si) - 1:
                best = max(best, abs(means[i] - means[j]))
        total += best
    return total
