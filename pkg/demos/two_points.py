"""Two points, two singletons: the smallest instance where every tool agrees.

F(a) = {(0, 0)} and F(b) = {(2, 0)} at distance 1.  The only selection is
forced, so the optimal seminorm is 2.  The rectangle test accepts exactly
from 2 on, the constructive selector returns the forced points, and
balanced refinement at 2 leaves both sets untouched.
"""
from lipsel import PseudoMetric, SetMap, algorithm_a, algorithm_b, balanced_refine, optimal_selection
from lipsel import geometry as geo

m = PseudoMetric(("a", "b"), [[0, 1], [1, 0]])
F = SetMap(m, {"a": geo.Polygon([(0, 0)]), "b": geo.Polygon([(2, 0)])})

res = optimal_selection(F)
print(f"optimal seminorm from the LP oracle: {res.lambda_star:g}")

for lam in (1.9, 2.0):
    v = algorithm_a(F, lam)
    print(f"rectangle test at {lam}: {'accept' if v.accepted else 'reject, witness ' + str(v.witness)}")

s = algorithm_b(F, 2.0)
print("selection:", {x: tuple(map(float, p)) for x, p in s.f.items()}, "seminorm", s.seminorm)

G = balanced_refine(F, 2.0)
print("refined at 2:", {x: G[x].vertices.tolist() for x in G.ids})
