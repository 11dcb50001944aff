"""Persistence computation by column reduction of the boundary matrix.

Standard left-to-right reduction of R = boundary * V over F2, done one
dimension at a time (the global matrix is block "anti-diagonal", so the
blocks reduce independently and yield the same pairing).  Columns are stored
as Python integers used as bitsets over the local row order; XOR is column
addition.  V is kept as a log of column additions and expanded on demand,
which keeps memory linear in the work actually performed.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .complexes import Chain, Filtration


@dataclass
class PersistencePair:
    dim: int
    birth: float
    death: float  # math.inf for essential classes
    birth_simplex: int
    death_simplex: Optional[int]
    initial_rep: Chain

    @property
    def persistence(self) -> float:
        return self.death - self.birth

    @property
    def essential(self) -> bool:
        return math.isinf(self.death)


class _DimReduction:
    """Reduction state for one boundary block (columns = p-simplices)."""

    __slots__ = ("rows", "cols", "r", "adds", "low", "pivot_of_row", "_v_cache")

    def __init__(self, rows: np.ndarray, cols: np.ndarray):
        self.rows = rows  # global ids of (p-1)-simplices, filtration order
        self.cols = cols  # global ids of p-simplices, filtration order
        self.r: list[int] = []
        self.adds: list[list[int]] = []
        self.low: list[int] = []
        self.pivot_of_row: dict[int, int] = {}
        self._v_cache: dict[int, int] = {}

    def v_column(self, j: int) -> int:
        """Expand column j of V (bitset over local column indices)."""
        cached = self._v_cache.get(j)
        if cached is not None:
            return cached
        # iterative expansion; adds only reference earlier columns
        stack = [j]
        while stack:
            k = stack[-1]
            pending = [a for a in self.adds[k] if a not in self._v_cache]
            if pending:
                stack.extend(pending)
                continue
            stack.pop()
            if k in self._v_cache:
                continue
            col = 1 << k
            for a in self.adds[k]:
                col ^= self._v_cache[a]
            self._v_cache[k] = col
        return self._v_cache[j]


class ReducedDecomposition:
    """R = boundary * V over F2 with per-dimension blocks.

    blocks[p] reduces the boundary of the p-simplices (p >= 1); dimension 0
    has no boundary and therefore no block.
    """

    def __init__(self, f: Filtration):
        self.filtration = f
        self.blocks: dict[int, _DimReduction] = {}
        self._reduce()

    def _reduce(self):
        f = self.filtration
        for p in range(1, f.max_dim + 1):
            rows = f.dim_indices(p - 1)
            cols = f.dim_indices(p)
            blk = _DimReduction(rows, cols)
            row_local = {int(g): i for i, g in enumerate(rows)}
            for j, g in enumerate(cols):
                s = f.simplices[g]
                col = 0
                for i in range(len(s)):
                    col |= 1 << row_local[f.index[s[:i] + s[i + 1 :]]]
                added: list[int] = []
                while col:
                    lw = col.bit_length() - 1
                    other = blk.pivot_of_row.get(lw)
                    if other is None:
                        break
                    col ^= blk.r[other]
                    added.append(other)
                blk.r.append(col)
                blk.adds.append(added)
                if col:
                    lw = col.bit_length() - 1
                    blk.low.append(lw)
                    blk.pivot_of_row[lw] = j
                else:
                    blk.low.append(-1)
            self.blocks[p] = blk

    # -- chain views --------------------------------------------------------

    def _bits_to_chain(self, bits: int, ids: np.ndarray, dim: int) -> Chain:
        entries = {}
        while bits:
            lsb = bits & -bits
            entries[int(ids[lsb.bit_length() - 1])] = 1
            bits ^= lsb
        return Chain(dim, entries)

    def r_chain(self, p: int, local_j: int) -> Chain:
        """Reduced column of the local_j-th p-simplex, as a (p-1)-chain."""
        blk = self.blocks[p]
        return self._bits_to_chain(blk.r[local_j], blk.rows, p - 1)

    def v_chain(self, p: int, local_j: int) -> Chain:
        """V column of the local_j-th p-simplex, as a p-chain."""
        if p == 0:
            g = int(self.filtration.dim_indices(0)[local_j])
            return Chain(0, {g: 1})
        blk = self.blocks[p]
        return self._bits_to_chain(blk.v_column(local_j), blk.cols, p)

    def column_zero(self, p: int, local_j: int) -> bool:
        if p == 0:
            return True
        return self.blocks[p].r[local_j] == 0

    # -- pairing ------------------------------------------------------------

    def pairs(self, dim: int) -> list[PersistencePair]:
        """Persistence pairs in the given homology dimension.

        Finite pairs come from pivots of the (dim+1)-block: the column of the
        death simplex is the initial representative.  Birth simplices whose
        own column reduced to zero and that are no pivot row of the next
        block are essential; their representative is their V column.
        """
        f = self.filtration
        if dim < 0 or dim > f.max_dim:
            raise ValueError(f"dimension {dim} outside filtration range")
        out: list[PersistencePair] = []
        births = f.dim_indices(dim)
        killer = self.blocks.get(dim + 1)
        paired_rows = set()
        if killer is not None:
            for j, lw in enumerate(killer.low):
                if lw < 0:
                    continue
                paired_rows.add(lw)
                b_g = int(killer.rows[lw])
                d_g = int(killer.cols[j])
                birth, death = f.value(b_g), f.value(d_g)
                if not birth < death:
                    continue  # zero-persistence pair
                out.append(
                    PersistencePair(
                        dim=dim,
                        birth=birth,
                        death=death,
                        birth_simplex=b_g,
                        death_simplex=d_g,
                        initial_rep=self.r_chain(dim + 1, j),
                    )
                )
        for i in range(len(births)):
            if i in paired_rows or not self.column_zero(dim, i):
                continue
            g = int(births[i])
            out.append(
                PersistencePair(
                    dim=dim,
                    birth=f.value(g),
                    death=math.inf,
                    birth_simplex=g,
                    death_simplex=None,
                    initial_rep=self.v_chain(dim, i),
                )
            )
        out.sort(key=lambda pr: (pr.birth, pr.death, pr.birth_simplex))
        return out

    # -- verification helpers (test-sized instances) -------------------------

    def check_reduced(self, p: int) -> bool:
        """Distinct nonzero columns have distinct lowest ones."""
        blk = self.blocks[p]
        lows = [lw for lw in blk.low if lw >= 0]
        return len(lows) == len(set(lows))

    def check_rv(self, p: int) -> bool:
        """Re-multiply: boundary * V == R on the p-block."""
        f = self.filtration
        blk = self.blocks[p]
        row_local = {int(g): i for i, g in enumerate(blk.rows)}
        raw = []
        for g in blk.cols:
            s = f.simplices[g]
            col = 0
            for i in range(len(s)):
                col |= 1 << row_local[f.index[s[:i] + s[i + 1 :]]]
            raw.append(col)
        for j in range(len(blk.cols)):
            v = blk.v_column(j)
            acc = 0
            while v:
                lsb = v & -v
                acc ^= raw[lsb.bit_length() - 1]
                v ^= lsb
            if acc != blk.r[j]:
                return False
        return True


def reduce(f: Filtration) -> ReducedDecomposition:
    """Reduce the filtration boundary matrix over F2."""
    return ReducedDecomposition(f)


def diagram(dec: ReducedDecomposition, dim: int) -> list[PersistencePair]:
    return dec.pairs(dim)


def full_diagram(dec: ReducedDecomposition, max_dim: int = None) -> list[PersistencePair]:
    """Pairs over homology dimensions 0..max_dim (default: all dimensions
    the filtration carries; pass the intended homology range when the top
    simplex dimension exists only to close off lower classes)."""
    if max_dim is None:
        max_dim = dec.filtration.max_dim
    out = []
    for p in range(min(max_dim, dec.filtration.max_dim) + 1):
        out.extend(dec.pairs(p))
    return out


def diagram_to_json(pairs: list[PersistencePair], include_reps=False, f: Filtration = None) -> list[dict]:
    """JSON-friendly diagram rows; infinite deaths encode as null."""
    rows = []
    for pr in pairs:
        row = {
            "dim": pr.dim,
            "birth": pr.birth,
            "death": None if pr.essential else pr.death,
            "birth_simplex": pr.birth_simplex,
            "death_simplex": pr.death_simplex,
        }
        if include_reps:
            if f is None:
                raise ValueError("filtration required to emit representatives")
            row["initial_rep"] = [
                list(f.simplices[i]) for i in pr.initial_rep.support
            ]
        rows.append(row)
    return rows


def dump_diagram(pairs, path, include_reps=False, f: Filtration = None):
    with open(path, "w") as fh:
        json.dump(
            {"schema": 1, "pairs": diagram_to_json(pairs, include_reps, f)},
            fh,
            sort_keys=True,
            separators=(",", ":"),
        )
