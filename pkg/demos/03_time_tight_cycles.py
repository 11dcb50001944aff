"""Tightening a cycle in time.

An 8-vertex complex whose vertices carry time labels: a hexagonal loop
of labels pi/3..2pi with two filled ears, one detouring through a vertex
labeled 2pi and one through 3pi.  The reduction's representative of the
essential H1 class is homologous to many cycles; the LP picks the one
whose support stays most compact in time, under three different costs.
"""

import math

import numpy as np

from chronocycle.complexes import Filtration
from chronocycle.optimize import RelaxationPolicy, optimize_class
from chronocycle.reduction import reduce
from chronocycle.weights import KINDS

PI = math.pi

# time label of each vertex id
LABELS = np.array(
    [2 * PI, 0.0, PI / 3, 2 * PI / 3, PI, 4 * PI / 3, 5 * PI / 3, 3 * PI]
)

EDGES = [
    (4, 7), (5, 4), (4, 3), (3, 2), (2, 1), (1, 6),
    (6, 5), (5, 7), (7, 3), (6, 0), (0, 2), (1, 0),
]
TRIANGLES = [(5, 4, 7), (3, 4, 7), (0, 1, 6), (0, 1, 2)]


def main():
    simplices = [((i,), 0.0) for i in range(8)]
    simplices += [(tuple(sorted(e)), 1.0) for e in EDGES]
    simplices += [(tuple(sorted(t)), 1.0) for t in TRIANGLES]
    f = Filtration(simplices)

    dec = reduce(f)
    pair = dec.pairs(1)[0]
    init = [tuple(f.simplices[g]) for g in pair.initial_rep.support]
    print("essential H1 class, initial representative edges:")
    print("  " + ", ".join(map(str, init)))

    for kind in KINDS:
        rep = optimize_class(
            pair, RelaxationPolicy.full(), kind, f, dec, LABELS
        )
        edges = [tuple(f.simplices[g]) for g in rep.solution.support]
        spans = sorted(
            f"({LABELS[a] / PI:.2f}pi, {LABELS[b] / PI:.2f}pi)"
            for a, b in edges
        )
        print(f"\n{kind}: objective {rep.solution.objective:.4f}, "
              f"dispersion {rep.dispersion:.4f}")
        print("  edge label spans: " + ", ".join(spans))

    print("\nall three costs agree here: the loop that skips both ears")
    print("is the one whose labels stay within a single period")


if __name__ == "__main__":
    main()
