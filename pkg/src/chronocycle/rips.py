"""Vietoris-Rips filtrations of labeled point clouds.

Simplices enter at the maximum pairwise distance among their vertices.
Vertex ids are the point indices of the cloud, so downstream consumers can
look up time labels directly.  Simplices are built up to dimension
max_dim + 1 so that homology through max_dim is computable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy.spatial.distance import pdist, squareform

from .complexes import Filtration

ENCLOSING = "enclosing"


@dataclass
class RipsConfig:
    max_dim: int = 1
    max_radius: Union[float, str] = ENCLOSING

    def __post_init__(self):
        if not 1 <= self.max_dim <= 3:
            raise ValueError("max_dim must be between 1 and 3")
        if self.max_radius != ENCLOSING and not float(self.max_radius) > 0:
            raise ValueError("max_radius must be positive or 'enclosing'")

    def radius(self, dist: np.ndarray) -> float:
        if self.max_radius == ENCLOSING:
            return float(dist.max())
        return float(self.max_radius)


def distance_matrix(points: np.ndarray) -> np.ndarray:
    pts = np.asarray(points, dtype=float)
    return squareform(pdist(pts))


def _expand(prev, prev_vals, adj, dist):
    """Grow k-simplices from (k-1)-simplices by appending larger neighbors
    adjacent to every vertex."""
    out, vals = [], []
    for verts, val in zip(prev, prev_vals):
        common = np.logical_and.reduce(adj[list(verts)])
        for k in np.flatnonzero(common):
            if k <= verts[-1]:
                continue
            out.append(verts + (int(k),))
            vals.append(max(val, float(dist[list(verts), k].max())))
    return out, vals


def count_rips_simplices(points, cfg: RipsConfig) -> list[int]:
    """Per-dimension simplex counts of build_rips without building the
    filtration (memory guard and sanity checks)."""
    pts = np.asarray(points, dtype=float)
    if len(pts) == 0:
        raise ValueError("empty point cloud")
    dist = distance_matrix(pts)
    n = len(dist)
    r = cfg.radius(dist)
    adj = dist <= r
    np.fill_diagonal(adj, False)
    counts = [n]
    simp = [(i,) for i in range(n)]
    vals = [0.0] * n
    for _ in range(cfg.max_dim + 1):
        simp, vals = _expand(simp, vals, adj, dist)
        if not simp:
            break
        counts.append(len(simp))
    return counts


def build_rips(pc, cfg: RipsConfig) -> Filtration:
    """Rips filtration of the cloud; vertices at 0, simplex value = diameter."""
    pts = np.asarray(pc.points, dtype=float)
    if len(pts) == 0:
        raise ValueError("empty point cloud")
    if len(pts) < 2:
        raise ValueError("need at least 2 points")
    dist = distance_matrix(pts)
    n = len(dist)
    r = cfg.radius(dist)
    adj = dist <= r
    np.fill_diagonal(adj, False)
    simplices = [((i,), 0.0) for i in range(n)]
    cur = [(i,) for i in range(n)]
    vals = [0.0] * n
    for _ in range(cfg.max_dim + 1):
        cur, vals = _expand(cur, vals, adj, dist)
        if not cur:
            break
        simplices.extend(zip(cur, vals))
    return Filtration(simplices)
