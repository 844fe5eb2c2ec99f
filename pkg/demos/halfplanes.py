"""Half-plane families: the closed-form test against the optimum.

Each point carries a half-plane {a : <a, n> + alpha <= 0}.  The pairwise
and quadruple inequalities of the closed-form test give a least accepted
lambda that brackets the optimal seminorm within a factor 8 from above
and 1/sqrt(2) from below.  The coordinate-free test accepts sqrt(2) times
the optimum.
"""
import math

import numpy as np

from lipsel import check_mc2, coverage_status, inf_lambda_star, optimal_selection
from lipsel.halfplane import bounding_subfamily
from lipsel.random_instances import random_halfplane_map

rng = np.random.default_rng(3)
shown = 0
while shown < 10:
    F = random_halfplane_map(rng, int(rng.integers(3, 7)))
    if not coverage_status(F).ok or bounding_subfamily(F) is None:
        continue
    shown += 1
    lam, inf = optimal_selection(F).lambda_star, inf_lambda_star(F)
    cf = check_mc2(F, math.sqrt(2) * lam).accepted
    ratio = f"{lam / inf:6.3f}" if inf else "     -"
    print(f"N={len(F.ids)}  optimum {lam:8.4f}  closed-form inf {inf:8.4f}  "
          f"ratio {ratio}  coordinate-free at sqrt2*opt: {cf}")
