"""Refinement stages as SVG pictures.

Draws a random polygon instance, refines it twice with lambdas (b, 3b)
where b is the finiteness bound, and writes one picture per stage with
the hull-center selection on top.  Files land in the current directory.
"""
import numpy as np

from lipsel import finiteness_bound, iterate_refine, select_hull_center
from lipsel.cli import render_svg
from lipsel.random_instances import random_polygon_map

F = random_polygon_map(np.random.default_rng(11), 4)
b = finiteness_bound(F)
trace = iterate_refine(F, [b, 3 * b])
s = select_hull_center(F, b)
for k, stage in enumerate([F, *trace.stages]):
    name = f"stage{k}.svg"
    with open(name, "w", encoding="utf-8") as fh:
        fh.write(render_svg(stage, s))
    print(f"wrote {name}")
print(f"finiteness bound {b:.4f}, hull-center seminorm {s.seminorm:.4f} (at most 15 times the bound)")
