"""How close are the cheap tests to the true optimum on random polygons?

For a batch of random instances the LP oracle gives the optimal seminorm.
Bisection on the rectangle test gives the smallest accepted lambda, which
is never above the optimum and never below one eighth of it.  The
constructive selection at that lambda stays within eight times it.
Run with an optional count:  python demos/sandwich.py 50
"""
import sys

import numpy as np

from lipsel import near_optimal, optimal_selection
from lipsel.random_instances import random_polygon_map

count = int(sys.argv[1]) if len(sys.argv) > 1 else 20
rng = np.random.default_rng(7)
print(f"{'N':>2} {'optimum':>10} {'test inf':>10} {'ratio':>7} {'|f| / inf':>9}")
for _ in range(count):
    F = random_polygon_map(rng, int(rng.integers(2, 6)))
    lam = optimal_selection(F).lambda_star
    rep = near_optimal(F, tol=1e-9)
    ratio = lam / rep.lam if rep.lam > 0 else float("nan")
    used = rep.selection.seminorm / rep.lam if rep.lam > 0 else 0.0
    print(f"{len(F.ids):>2} {lam:10.4f} {rep.lam:10.4f} {ratio:7.3f} {used:9.3f}")
