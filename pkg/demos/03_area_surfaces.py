"""Sweep the triangle area over detector angles and classify its landscape.

With the first detector pinned at 0, the information area becomes a surface
over (beta, gamma).  The three tripartite states produce qualitatively
different landscapes: a peak, a saddle, and a flat-in-Euclidean-terms ridge.
Rows are written as CSV for external plotting.
"""

import csv
import sys

import numpy as np

from qig import area_surface_fn, critical_points, sweep_surface

GRID = 31  # one point every 3 degrees; pi/4 is a grid point

for name in ("ghz", "w", "product_v"):
    rows = sweep_surface(name, grid_n=GRID)
    areas = np.array([r.area_info for r in rows])
    print(f"=== {name}: information-area surface on a {GRID}x{GRID} grid ===")
    print(f"  area range: [{areas.min():.4f}, {areas.max():.4f}] bits^2")
    violations = sum(1 for r in rows if not r.euclid_defined)
    print(f"  triangle-inequality violations: {violations}")

    points = critical_points(rows, surface_fn=area_surface_fn(name), refine_levels=2)
    interesting = [p for p in points if p.kind in ("max", "min", "saddle")]
    for p in interesting:
        print(f"  stationary point: kind={p.kind:6s} at "
              f"(beta, gamma) = ({p.beta:.4f}, {p.gamma:.4f}), area = {p.value:.4f}")
    print()

# emit one CSV for external plotting
out = "w_surface.csv"
rows = sweep_surface("w", grid_n=GRID)
with open(out, "w", newline="") as fh:
    writer = csv.writer(fh)
    writer.writerow(["beta", "gamma", "d_ab", "d_ac", "d_bc",
                     "area_info", "area_euclid", "euclid_defined", "ratio"])
    for r in rows:
        writer.writerow([r.beta, r.gamma, r.d_ab, r.d_ac, r.d_bc,
                         r.area_info, r.area_euclid, int(r.euclid_defined), r.ratio])
print(f"wrote {len(rows)} rows to {out}", file=sys.stderr)
