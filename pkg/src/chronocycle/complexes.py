"""Simplicial complexes, filtrations, chains and boundary operators.

Simplices are stored as strictly increasing tuples of vertex ids.  Chains are
sparse maps from filtration index to coefficient; the coefficient domain is
either F2 (persistence reduction) or the reals (signed boundary matrices for
the cycle optimization LP).  The oriented boundary uses the increasing
vertex-id orientation: the face dropping vertex position i carries sign
(-1)**i.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

import numpy as np
import scipy.sparse as sp

F2 = "f2"
REAL = "real"


@dataclass(frozen=True)
class Simplex:
    """A simplex given by its strictly increasing vertex tuple."""

    vertices: tuple[int, ...]

    def __post_init__(self):
        v = tuple(int(x) for x in self.vertices)
        if len(v) == 0:
            raise ValueError("simplex needs at least one vertex")
        if any(b <= a for a, b in zip(v, v[1:])):
            raise ValueError(f"vertices must be strictly increasing, got {v}")
        if v[0] < 0:
            raise ValueError("vertex ids must be non-negative")
        object.__setattr__(self, "vertices", v)

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1

    def faces(self) -> list[tuple[int, ...]]:
        """Codimension-1 faces in vertex-deletion order (position i dropped)."""
        v = self.vertices
        return [v[:i] + v[i + 1 :] for i in range(len(v))]

    def __iter__(self) -> Iterator[int]:
        return iter(self.vertices)

    def __len__(self) -> int:
        return len(self.vertices)


def _as_vertex_tuple(s) -> tuple[int, ...]:
    if isinstance(s, Simplex):
        return s.vertices
    return tuple(int(x) for x in s)


@dataclass
class Chain:
    """Sparse chain: filtration index -> coefficient, no stored zeros."""

    dim: int
    entries: dict[int, float] = field(default_factory=dict)

    def __post_init__(self):
        self.entries = {int(i): c for i, c in self.entries.items() if c != 0}

    @property
    def support(self) -> list[int]:
        return sorted(self.entries)

    def __bool__(self) -> bool:
        return bool(self.entries)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Chain)
            and self.dim == other.dim
            and self.entries == other.entries
        )

    def mod2(self) -> "Chain":
        """Reduce coefficients mod 2 (coefficients must be near-integral)."""
        out = {}
        for i, c in self.entries.items():
            k = round(c)
            if abs(c - k) > 1e-9:
                raise ValueError(f"non-integral coefficient {c} at index {i}")
            if k % 2:
                out[i] = 1
        return Chain(self.dim, out)


class Filtration:
    """Ordered simplices with filtration values.

    The order is (value, dimension, lexicographic vertices), which puts every
    face before its cofaces and makes downstream reduction deterministic.
    Construction validates closure under faces and value monotonicity.
    """

    def __init__(self, simplices: Iterable[tuple[Iterable[int], float]]):
        items = sorted(
            ((_as_vertex_tuple(s), float(v)) for s, v in simplices),
            key=lambda t: (t[1], len(t[0]), t[0]),
        )
        if not items:
            raise ValueError("empty filtration")
        self.simplices: list[tuple[int, ...]] = [s for s, _ in items]
        self.values: np.ndarray = np.array([v for _, v in items], dtype=float)
        self.dims: np.ndarray = np.array(
            [len(s) - 1 for s, _ in items], dtype=np.int32
        )
        self.index: dict[tuple[int, ...], int] = {
            s: i for i, (s, _) in enumerate(items)
        }
        if len(self.index) != len(items):
            raise ValueError("duplicate simplex in filtration")
        if np.any(self.values < 0):
            raise ValueError("filtration values must be non-negative")
        self.max_dim: int = int(self.dims.max())
        # global indices of the p-simplices, in filtration order, per dimension
        self._by_dim: list[np.ndarray] = [
            np.flatnonzero(self.dims == p) for p in range(self.max_dim + 1)
        ]
        self._validate_closure()

    def _validate_closure(self):
        for i, s in enumerate(self.simplices):
            if len(s) == 1:
                continue
            v = self.values[i]
            for f in Simplex(s).faces():
                j = self.index.get(f)
                if j is None:
                    raise ValueError(f"face {f} of {s} missing from filtration")
                if self.values[j] > v + 1e-12:
                    raise ValueError(
                        f"face {f} enters at {self.values[j]} after coface {s} at {v}"
                    )

    def __len__(self) -> int:
        return len(self.simplices)

    def __iter__(self) -> Iterator[tuple[Simplex, float]]:
        for s, v in zip(self.simplices, self.values):
            yield Simplex(s), float(v)

    def simplex(self, i: int) -> Simplex:
        return Simplex(self.simplices[i])

    def value(self, i: int) -> float:
        return float(self.values[i])

    def dim_indices(self, p: int) -> np.ndarray:
        """Global indices of all p-simplices, in filtration order."""
        if p < 0 or p > self.max_dim:
            return np.array([], dtype=int)
        return self._by_dim[p]

    def n_simplices(self, p: int) -> int:
        return len(self.dim_indices(p))

    def local_index(self, i: int) -> int:
        """Position of simplex i within its own dimension's order."""
        d = int(self.dims[i])
        return int(np.searchsorted(self._by_dim[d], i))


@dataclass
class BoundaryMatrix:
    """Boundary operator from (p+1)-simplices to p-simplices.

    Rows/columns are indexed locally (position within the dimension's
    filtration order); ``rows``/``cols`` map local to global indices.  In F2
    mode all entries are 1; in real mode the face dropping vertex i has
    entry (-1)**i.
    """

    p: int
    mode: str
    rows: np.ndarray
    cols: np.ndarray
    matrix: sp.csc_matrix


def boundary_matrix(f: Filtration, p: int, mode: str = F2) -> BoundaryMatrix:
    """Matrix of the boundary operator taking (p+1)-chains to p-chains."""
    if mode not in (F2, REAL):
        raise ValueError(f"unknown field mode {mode!r}")
    rows = f.dim_indices(p)
    cols = f.dim_indices(p + 1)
    row_local = {int(g): i for i, g in enumerate(rows)}
    data, ri, ci = [], [], []
    for j, g in enumerate(cols):
        s = f.simplices[g]
        for i in range(len(s)):
            face = s[:i] + s[i + 1 :]
            ri.append(row_local[f.index[face]])
            ci.append(j)
            data.append(1.0 if mode == F2 else float((-1) ** i))
    m = sp.csc_matrix(
        (data, (ri, ci)), shape=(len(rows), len(cols)), dtype=float
    )
    return BoundaryMatrix(p=p, mode=mode, rows=rows, cols=cols, matrix=m)


def boundary(c: Chain, f: Filtration, mode: str = F2) -> Chain:
    """Boundary of a chain in the requested field mode."""
    if mode not in (F2, REAL):
        raise ValueError(f"unknown field mode {mode!r}")
    if c.dim == 0:
        raise ValueError("no boundary below dimension 0")
    acc: dict[int, float] = {}
    for idx, coef in c.entries.items():
        s = f.simplices[idx]
        if len(s) - 1 != c.dim:
            raise ValueError(f"simplex {s} has dimension {len(s)-1}, chain {c.dim}")
        for i in range(len(s)):
            face = s[:i] + s[i + 1 :]

            j = f.index.get(face)
            if j is None:
                raise ValueError(f"face {face} missing from filtration")
            sign = 1.0 if mode == F2 else float((-1) ** i)
            acc[j] = acc.get(j, 0.0) + sign * coef
    if mode == F2:
        out = {j: 1 for j, v in acc.items() if round(v) % 2}
    else:
        out = {j: v for j, v in acc.items() if v != 0}
    return Chain(c.dim - 1, out)


def chain_birth(c: Chain, f: Filtration) -> float:
    """Least filtration value at which every simplex of the chain exists."""
    if not c:
        raise ValueError("birth undefined for zero chain")
    return float(max(f.values[i] for i in c.entries))


def _orient_edges(c: Chain, f: Filtration) -> Chain:
    # decompose the even-degree support graph into closed walks and assign
    # +1 to edges traversed low-to-high vertex, -1 otherwise
    edges = {g: f.simplices[g] for g in c.entries}
    incident: dict[int, list[int]] = {}
    for g, (u, v) in sorted(edges.items()):
        incident.setdefault(u, []).append(g)
        incident.setdefault(v, []).append(g)
    unused = set(edges)
    signs: dict[int, float] = {}
    for start_g in sorted(edges):
        if start_g not in unused:
            continue
        u0 = edges[start_g][0]
        cur = u0
        while True:
            nxt_g = None
            for g in incident[cur]:
                if g in unused:
                    nxt_g = g
                    break
            if nxt_g is None:
                if cur != u0:
                    raise ValueError("cannot orient initial cycle")
                break
            unused.discard(nxt_g)
            a, b = edges[nxt_g]
            other = b if cur == a else a
            signs[nxt_g] = 1.0 if cur == min(a, b) else -1.0
            cur = other
    return Chain(1, signs)


def _orient_by_face_pairing(c: Chain, f: Filtration) -> Chain:
    # propagate signs across shared codimension-1 faces; each internal face
    # must have exactly two support cofaces (orientable pseudo-manifold)
    support = sorted(c.entries)
    face_map: dict[tuple[int, ...], list[tuple[int, float]]] = {}
    for g in support:
        s = f.simplices[g]
        for i in range(len(s)):
            face_map.setdefault(s[:i] + s[i + 1 :], []).append((g, float((-1) ** i)))
    for face, cofs in face_map.items():
        if len(cofs) != 2:
            raise ValueError("cannot orient initial cycle")
    neighbors: dict[int, list[tuple[int, float]]] = {g: [] for g in support}
    for (a, ca), (b, cb) in face_map.values():
        rel = -ca * cb  # sign_b = rel * sign_a zeroes this face
        neighbors[a].append((b, rel))
        neighbors[b].append((a, rel))
    signs: dict[int, float] = {}
    for root in support:
        if root in signs:
            continue
        signs[root] = 1.0
        stack = [root]
        while stack:
            g = stack.pop()
            for h, rel in neighbors[g]:
                want = rel * signs[g]
                got = signs.get(h)
                if got is None:
                    signs[h] = want
                    stack.append(h)
                elif got != want:
                    raise ValueError("cannot orient initial cycle")
    return Chain(c.dim, signs)


def orient_chain(c: Chain, f: Filtration) -> Chain:
    """Lift an F2 cycle to a real cycle with coefficients +-1.

    A naive all-ones lift is generally not a real cycle (oriented face terms
    do not cancel), which would let the LP wander off the homology class.
    1-cycles are decomposed into closed walks; higher cycles are oriented by
    sign propagation over shared faces, which requires the support to be an
    orientable pseudo-manifold.  Raises when no coherent orientation exists.
    """
    if not c:
        raise ValueError("cannot orient zero chain")
    if c.dim == 0:
        return Chain(0, {g: 1.0 for g in c.entries})
    out = _orient_edges(c, f) if c.dim == 1 else _orient_by_face_pairing(c, f)
    if set(out.entries) != set(c.entries):
        raise ValueError("cannot orient initial cycle")
    if boundary(out, f, REAL):
        raise ValueError("cannot orient initial cycle")
    return out
