"""Per-class orchestration of the cycle optimization.

For each persistence class the relaxation policy picks the admissible birth
b' (the class birth, or death - epsilon), the restricted simplex sets and the
weight matrix are assembled there, and the LP is solved.  Solutions are
rounded back to F2 and verified to still be cycles; a failed rounding falls
back to reporting the fractional support, flagged.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .complexes import F2, REAL, Chain, Filtration, boundary, boundary_matrix
from .lp import ROUND_TOL, CycleSolution, build_lp, restrict_sets, solve
from .reduction import PersistencePair, ReducedDecomposition
from .weights import weights_for, support_dispersion

FULL = "full"
FRACTION = "fraction"
ABSOLUTE = "absolute"


@dataclass
class RelaxationPolicy:
    mode: str
    rho: Optional[float] = None
    epsilon: Optional[float] = None

    def __post_init__(self):
        if self.mode not in (FULL, FRACTION, ABSOLUTE):
            raise ValueError(f"unknown relaxation mode {self.mode!r}")
        if self.mode == FRACTION:
            if self.rho is None or not 0 < self.rho <= 1:
                raise ValueError("fraction policy needs rho in (0, 1]")
        if self.mode == ABSOLUTE:
            if self.epsilon is None or not self.epsilon > 0:
                raise ValueError("absolute policy needs a positive bound")

    @classmethod
    def full(cls) -> "RelaxationPolicy":
        return cls(mode=FULL)

    @classmethod
    def fraction(cls, rho: float) -> "RelaxationPolicy":
        return cls(mode=FRACTION, rho=rho)

    @classmethod
    def absolute(cls, epsilon: float) -> "RelaxationPolicy":
        return cls(mode=ABSOLUTE, epsilon=epsilon)

    def relaxed_birth(self, pair: PersistencePair, f: Filtration) -> float:
        if self.mode == FULL:
            return pair.birth
        if pair.essential:
            raise ValueError(
                f"{self.mode} policy undefined for essential classes"
            )
        if self.mode == FRACTION:
            eps = self.rho * (pair.death - pair.birth)
        else:
            eps = self.epsilon
            smallest = float(f.values[0])
            if eps > pair.death - smallest:
                raise ValueError("relaxation bound exceeds death value range")
        return pair.death - eps

    def describe(self) -> dict:
        out = {"mode": self.mode}
        if self.rho is not None:
            out["rho"] = self.rho
        if self.epsilon is not None:
            out["epsilon"] = self.epsilon
        return out


@dataclass
class OptimizedRepresentative:
    pair: PersistencePair
    policy: RelaxationPolicy
    loss_kind: str
    solution: CycleSolution
    dispersion: float
    relaxed_birth: float
    rounded: Optional[Chain]      # F2 rounding, None when rounding failed
    rounded_is_cycle: bool


def optimize_class(
    pair: PersistencePair,
    policy: RelaxationPolicy,
    kind: str,
    f: Filtration,
    dec: ReducedDecomposition,
    labels,
    points=None,
    backend: str = "builtin",
    round_tol: float = ROUND_TOL,
) -> OptimizedRepresentative:
    """Optimize one class: restrict at the relaxed birth, weight, solve."""
    p = pair.dim
    b_relaxed = policy.relaxed_birth(pair, f)
    if b_relaxed < pair.birth - 1e-9 * (1 + abs(pair.birth)):
        raise ValueError("initial representative not alive at relaxed birth")
    P, Qhat = restrict_sets(f, dec, p, b_relaxed)
    W = weights_for(kind, [f.simplices[g] for g in P], labels, points)
    bd = boundary_matrix(f, p, REAL)
    lp = build_lp(P, Qhat, pair.initial_rep, W, bd, f)
    sol = solve(lp, backend=backend, round_tol=round_tol)

    ints = np.rint(sol.c)
    rounded = None
    is_cycle = False
    if np.max(np.abs(sol.c - ints), initial=0.0) <= round_tol:
        entries = {int(lp.P[j]): 1 for j in np.flatnonzero(ints.astype(int) % 2)}
        cand = Chain(p, entries)
        if p == 0 or not cand or not boundary(cand, f, F2):
            rounded, is_cycle = cand, True
    support_simplices = [f.simplices[g] for g in sol.support]
    dispersion = support_dispersion(support_simplices, labels) if support_simplices else 0.0
    return OptimizedRepresentative(
        pair=pair,
        policy=policy,
        loss_kind=kind,
        solution=sol,
        dispersion=dispersion,
        relaxed_birth=b_relaxed,
        rounded=rounded,
        rounded_is_cycle=is_cycle,
    )


def significance_threshold(pairs, bound: Optional[float] = None) -> float:
    """User bound, or half the largest finite persistence in the diagram."""
    if bound is not None:
        return bound
    finite = [pr.persistence for pr in pairs if not pr.essential]
    if not finite:
        return 0.0
    return 0.5 * max(finite)


def significant_pairs(pairs, bound: Optional[float] = None):
    thr = significance_threshold(pairs, bound)
    keep = [pr for pr in pairs if pr.essential or pr.persistence >= thr]
    keep.sort(key=lambda pr: (-pr.persistence, pr.birth, pr.birth_simplex))
    return keep


def optimize_all(
    pairs,
    policy: RelaxationPolicy,
    kinds,
    f: Filtration,
    dec: ReducedDecomposition,
    labels,
    points=None,
    significance: Optional[float] = None,
    backend: str = "builtin",
    round_tol: float = ROUND_TOL,
) -> list[OptimizedRepresentative]:
    """One result per significant pair and requested kind, ordered by
    (persistence desc, kind order)."""
    out = []
    for pr in significant_pairs(pairs, significance):
        for kind in kinds:
            out.append(
                optimize_class(
                    pr, policy, kind, f, dec, labels,
                    points=points, backend=backend, round_tol=round_tol,
                )
            )
    return out
