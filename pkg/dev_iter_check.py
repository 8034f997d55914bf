import time
import numpy as np
import sys
sys.path.insert(0, "src")
from meanfield.pwit import _bracket_batch
from meanfield.survival import ModelParams

cases = [
    (ModelParams(d=1.0, theta=4.0), 6, 300, 11, "matching"),
    (ModelParams(d=1.0, theta=4.0), 10, 50, 12, "matching"),
    (ModelParams(d=2.0, theta=1.5), 6, 300, 13, "matching"),
    (ModelParams(d=1.0, theta=3.0), 5, 100, 14, "tsp"),
    (ModelParams(d=1.0, theta=3.0), 5, 100, 15, "edge_cover"),
    (ModelParams(d=1.5, theta=2.0), 4, 100, 16, "edge_cover"),
    (ModelParams(d=1.0, theta=4.0), 0, 50, 17, "matching"),
    (ModelParams(d=1.0, theta=4.0), 1, 200, 18, "tsp"),
]
for p, k, M, seed, game in cases:
    lo_r, hi_r, n_r = _bracket_batch(p, k, M, seed, game, recursive=True)
    lo_i, hi_i, n_i = _bracket_batch(p, k, M, seed, game, recursive=False)
    same = np.array_equal(lo_r, lo_i) and np.array_equal(hi_r, hi_i)
    print(f"d={p.d} th={p.theta} k={k:2d} {game:10s} identical={same} "
          f"nodes r={n_r} i={n_i} match={n_r == n_i}")
    assert same and n_r == n_i

p = ModelParams(d=1.0, theta=4.0)
for k, M in [(16, 100), (18, 50), (20, 20)]:
    t0 = time.perf_counter()
    lo, hi, n = _bracket_batch(p, k, M, 999, "matching")
    dt = time.perf_counter() - t0
    print(f"k={k} M={M}: {dt:.2f}s  nodes/sample={n / M:.0f}  "
          f"ns/node={dt / n * 1e9:.1f}  s/sample={dt / M:.3f}  "
          f"gap={float((hi - lo).mean()):.5f}")
