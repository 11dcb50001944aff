"""Persistence diagram of a sampled circle.

Builds a Rips filtration on noisy circle samples, reduces it, and prints
the dominant H1 class with its initial representative.
"""

import math

import numpy as np

from chronocycle.embedding import LabeledPointCloud
from chronocycle.reduction import reduce
from chronocycle.rips import RipsConfig, build_rips, count_rips_simplices


def main():
    rng = np.random.default_rng(5)
    n = 60
    theta = np.sort(rng.uniform(0, 2 * math.pi, n))
    pts = np.c_[np.cos(theta), np.sin(theta)] + rng.normal(0, 0.05, (n, 2))
    pc = LabeledPointCloud(points=pts, labels=theta)

    cfg = RipsConfig(max_dim=1, max_radius=2.0)
    counts = count_rips_simplices(pts, cfg)
    print(f"{sum(counts)} simplices at cap {cfg.max_radius} "
          f"(per dimension: {counts})")
    f = build_rips(pc, cfg)
    dec = reduce(f)

    pairs = sorted(dec.pairs(1), key=lambda pr: -pr.persistence)
    print(f"\n{len(pairs)} H1 classes; top five (birth, death, persistence):")
    for pr in pairs[:5]:
        death = "inf" if pr.essential else f"{pr.death:.4f}"
        print(f"  ({pr.birth:.4f}, {death})  {pr.persistence:.4f}")

    top = pairs[0]
    sup = top.initial_rep.support
    print(f"\ndominant class is carried by {len(sup)} edges, e.g.")
    for g in sup[:4]:
        i, j = f.simplices[g]
        print(f"  edge ({i}, {j}) at angles "
              f"({theta[i]:.2f}, {theta[j]:.2f})")
    print("the initial representative hugs whatever the reduction found,")
    print("not the geometrically or temporally shortest loop; see demo 03")


if __name__ == "__main__":
    main()
