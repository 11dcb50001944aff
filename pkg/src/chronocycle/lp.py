"""Optimal homologous cycle LP.

Given an F2 cycle c0 born at b, the optimization searches the real affine
space c = c0 + boundary(w) over the (p+1)-simplices alive at b whose reduced
columns are nonzero, minimizing the weighted l1 objective
sum_j cost_j (c_j+ + c_j-) with cost_j the column sum of the weight matrix.
Variables split into positive/negative parts gives a standard-form LP with a
trivially feasible start (the initial cycle itself).

An exhaustive F2 oracle over subsets of the free columns validates the LP on
small instances.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .complexes import F2, BoundaryMatrix, Chain, Filtration, boundary, orient_chain
from .lpsolver import SimplexResult, SolverStalled, revised_simplex
from .reduction import ReducedDecomposition
from .weights import WeightMatrix

RESIDUAL_TOL = 1e-8
ROUND_TOL = 1e-6


@dataclass
class CycleLP:
    p: int
    P: np.ndarray          # global indices of admissible p-simplices
    Qhat: np.ndarray       # global indices of free (p+1)-simplices
    A: sp.csc_matrix       # signed boundary, rows over P, columns over Qhat
    c0: np.ndarray         # +1 lift of the initial representative over P
    W: WeightMatrix
    cost: np.ndarray       # effective per-variable cost (column sums of W)


@dataclass
class CycleSolution:
    c: np.ndarray
    w: np.ndarray
    objective: float
    support: list[int]     # global indices of simplices with |c_j| > round_tol
    support_coefficients: list[float]
    residual: float
    iterations: int
    backend: str


def _alive_prefix(f: Filtration, dim: int, b: float) -> np.ndarray:
    idx = f.dim_indices(dim)
    if len(idx) == 0:
        return idx
    cut = np.searchsorted(f.values[idx], b + 1e-9 * (1 + abs(b)), side="right")
    return idx[:cut]


def restrict_sets(
    f: Filtration, dec: ReducedDecomposition, p: int, b: float
) -> tuple[np.ndarray, np.ndarray]:
    """P = p-simplices alive at b; Qhat = alive (p+1)-simplices with nonzero
    reduced column (the LP's free directions)."""
    P = _alive_prefix(f, p, b)
    if len(P) == 0:
        raise ValueError("no simplices alive")
    alive_q = _alive_prefix(f, p + 1, b)
    blk = dec.blocks.get(p + 1)
    qhat = []
    if blk is not None:
        for local_j in range(len(alive_q)):
            if blk.r[local_j]:
                qhat.append(int(blk.cols[local_j]))
    return P, np.array(qhat, dtype=int)


def build_lp(
    P,
    Qhat,
    c0: Chain,
    W: WeightMatrix,
    bd: BoundaryMatrix,
    f: Filtration = None,
) -> CycleLP:
    """Assemble the signed constraint system c - A w = c0 over P."""
    P = np.asarray(P, dtype=int)
    Qhat = np.asarray(Qhat, dtype=int)
    p = c0.dim
    if f is None and p >= 1:
        raise ValueError("filtration required to orient the initial cycle")
    if f is not None and p >= 1:
        if boundary(c0, f, F2):
            raise ValueError("initial chain is not a cycle")
    pos_in_P = {int(g): i for i, g in enumerate(P)}
    if any(i not in pos_in_P for i in c0.entries):
        raise ValueError("initial cycle not supported inside P")
    lifted = (
        orient_chain(c0, f) if p >= 1 else Chain(0, {g: 1.0 for g in c0.entries})
    )

    row_sel = np.searchsorted(bd.rows, P)
    col_sel = np.searchsorted(bd.cols, Qhat)
    if len(Qhat):
        A = sp.csc_matrix(bd.matrix[:, col_sel][row_sel, :])
        # closure: every face of a free simplex must itself be admissible
        per_col = np.diff(A.indptr)
        if np.any(per_col != p + 2):
            raise ValueError("free column has faces outside P")
    else:
        A = sp.csc_matrix((len(P), 0))
    c0_vec = np.zeros(len(P))
    for g, sign in lifted.entries.items():
        c0_vec[pos_in_P[g]] = float(sign)
    return CycleLP(
        p=p, P=P, Qhat=Qhat, A=A, c0=c0_vec, W=W,
        cost=np.asarray(W.column_costs, float),
    )


def _standard_form(lp: CycleLP):
    m, q = lp.A.shape
    eye = sp.identity(m, format="csc")
    A_std = sp.hstack([eye, -eye, -lp.A, lp.A], format="csc")
    cost_std = np.concatenate([lp.cost, lp.cost, np.zeros(2 * q)])
    return A_std, cost_std


def solve(
    lp: CycleLP,
    backend: str = "builtin",
    round_tol: float = ROUND_TOL,
    pivot_cap: int = 10**6,
) -> CycleSolution:
    """Solve to an optimal basic solution and extract the rounded support."""
    m, q = lp.A.shape
    A_std, cost_std = _standard_form(lp)
    if backend == "builtin":
        # start from the initial cycle: basis column c+_i (c0 >= 0 throughout)
        basis = [i if lp.c0[i] >= 0 else m + i for i in range(m)]
        res = revised_simplex(
            cost_std, A_std, lp.c0, basis, pivot_cap=pivot_cap
        )
        x, iters = res.x, res.iterations
    elif backend == "external":
        from scipy.optimize import linprog

        opt = linprog(
            cost_std, A_eq=A_std, b_eq=lp.c0, bounds=(0, None), method="highs"
        )
        if not opt.success:
            raise RuntimeError(f"external backend failed: {opt.message}")
        x, iters = opt.x, int(getattr(opt, "nit", -1))
    else:
        raise ValueError(f"unknown backend {backend!r}")

    c = x[:m] - x[m : 2 * m]
    w = x[2 * m : 2 * m + q] - x[2 * m + q :]
    residual = float(
        np.max(np.abs(c - lp.c0 - (lp.A @ w if q else 0)))
        if m
        else 0.0
    )
    if residual > RESIDUAL_TOL * (1 + float(np.max(np.abs(lp.c0), initial=0))):
        raise RuntimeError(f"solution residual {residual:.3e} out of tolerance")
    local = np.flatnonzero(np.abs(c) > round_tol)
    objective = float(np.dot(lp.cost, np.abs(c)))
    return CycleSolution(
        c=c,
        w=w,
        objective=objective,
        support=[int(lp.P[i]) for i in local],
        support_coefficients=[float(c[i]) for i in local],
        residual=residual,
        iterations=iters,
        backend=backend,
    )


def support_cost(cost: np.ndarray, local_indices) -> float:
    """Cost of a support set, summed in sorted-value order so equal multisets
    of weights give bit-identical sums across implementations."""
    idx = np.asarray(sorted(local_indices), dtype=int)
    if len(idx) == 0:
        return 0.0
    return float(np.sort(np.asarray(cost, float)[idx]).sum())


def _pack_column(bits, n_words):
    out = np.zeros(n_words, dtype=np.uint64)
    for i in bits:
        out[i >> 6] |= np.uint64(1) << np.uint64(i & 63)
    return out


def oracle_optimal(P, Qhat, c0: Chain, W: WeightMatrix, bd: BoundaryMatrix,
                   return_all: bool = False):
    """Exhaustive F2 optimum over c0 + span{boundary columns of Qhat}.

    Enumerates all 2^|Qhat| combinations as packed bitmasks, scores every
    support against the weight column costs, and returns the exact minimum
    (recomputed by sorted summation).  Validation tool for small instances.
    """
    P = np.asarray(P, dtype=int)
    Qhat = np.asarray(Qhat, dtype=int)
    q = len(Qhat)
    if q > 20:
        raise ValueError("too many free columns for exhaustive search")
    m = len(P)
    n_words = max(1, (m + 63) >> 6)
    pos_in_P = {int(g): i for i, g in enumerate(P)}

    row_sel = np.searchsorted(bd.rows, P)
    col_sel = np.searchsorted(bd.cols, Qhat)
    masks = np.zeros((1, n_words), dtype=np.uint64)
    masks[0] = _pack_column([pos_in_P[g] for g in c0.entries], n_words)
    Acsc = sp.csc_matrix(bd.matrix)
    local_row = {int(r): i for i, r in enumerate(row_sel)}
    for j in col_sel:
        rows = Acsc.indices[Acsc.indptr[j] : Acsc.indptr[j + 1]]
        bits = [local_row[int(r)] for r in rows]
        col = _pack_column(bits, n_words)
        masks = np.vstack([masks, masks ^ col[None, :]])

    cost = np.zeros(64 * n_words)
    cost[:m] = np.asarray(W.column_costs, float)
    scores = np.empty(len(masks))
    chunk = 1 << 14  # keep the unpacked bit matrix small
    for lo in range(0, len(masks), chunk):
        bits = np.unpackbits(
            masks[lo : lo + chunk].view(np.uint8), axis=1, bitorder="little"
        )
        scores[lo : lo + len(bits)] = bits @ cost

    def row_bits(r):
        return np.flatnonzero(
            np.unpackbits(masks[r].view(np.uint8), bitorder="little")
        )

    # the matmul scores are a fast filter; ties between distinct supports can
    # land within a few ulp of each other, so the exact sorted-sum decides
    low = scores.min()
    near = np.flatnonzero(scores <= low + 1e-9 * (1 + abs(low)))
    exact = [(support_cost(W.column_costs, row_bits(r)), int(r)) for r in near]
    best, order = min(exact)
    if not return_all:
        return best, sorted(int(P[i]) for i in row_bits(order))
    supports = [
        sorted(int(P[i]) for i in row_bits(r)) for v, r in exact if v == best
    ]
    return best, supports


def dump_lp(lp: CycleLP, path):
    """Plain-text standard form for external cross-checks."""
    m, q = lp.A.shape
    names = (
        [f"cp_{j}" for j in range(m)]
        + [f"cm_{j}" for j in range(m)]
        + [f"wp_{k}" for k in range(q)]
        + [f"wm_{k}" for k in range(q)]
    )
    A_std, cost_std = _standard_form(lp)
    A_csr = sp.csr_matrix(A_std)
    with open(path, "w") as fh:
        fh.write("minimize\n")
        terms = [
            f"{cost_std[j]!r} {names[j]}" for j in range(len(names))
            if cost_std[j] != 0
        ]
        fh.write("  " + " + ".join(terms) + "\n")
        fh.write("subject to\n")
        for i in range(m):
            row = A_csr.getrow(i)
            lhs = " + ".join(
                f"{row.data[k]!r} {names[row.indices[k]]}"
                for k in range(len(row.indices))
            )
            fh.write(f"  {lhs} = {lp.c0[i]!r}\n")
        fh.write("bounds\n  all variables >= 0\n")
