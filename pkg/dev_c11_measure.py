import math
import time
import numpy as np
import sys
sys.path.insert(0, "src")
from meanfield.pwit import _bracket_batch, empirical_survival, replica_gap
from meanfield.operators import operator_iterate
from meanfield.survival import ModelParams, sup_distance

SEED = 2026

# 1. k=20 sigma and mean at the acceptance seed
p = ModelParams(d=1.0, theta=4.0)
t0 = time.perf_counter()
lo, hi, n = _bracket_batch(p, 20, 500, SEED, "matching")
dt = time.perf_counter() - t0
gaps = hi - lo
sig = gaps.std(ddof=1)
print(f"k=20 M=500: {dt:.1f}s mean={gaps.mean():.5f} sigma={sig:.4f} "
      f"ci95={1.96 * sig / math.sqrt(500):.5f}")

# 2. DKW clause at 1e5 samples
eps = math.sqrt(math.log(2 / 0.01) / (2 * 1e5))
for d, theta in [(1.0, 2.0), (2.0, 1.5)]:
    q = ModelParams(d=d, theta=theta)
    t0 = time.perf_counter()
    emp = empirical_survival(q, 6, 10**5, SEED)
    dt = time.perf_counter() - t0
    ref = operator_iterate("matching", q, 6, start="one")
    sup = sup_distance(emp, ref)
    print(f"DKW d={d} th={theta}: sup={sup:.5f} eps={eps:.5f} "
          f"pass={sup <= eps} ({dt:.1f}s)")

# 3. monotone schedule k=2..20, shared seed, M=256
t0 = time.perf_counter()
means = []
for k in range(2, 21):
    m, ci = replica_gap(p, k, 256, SEED)
    means.append(m)
dt = time.perf_counter() - t0
mono = all(means[i + 1] <= means[i] + 1e-12 for i in range(len(means) - 1))
print(f"mono M=256: {dt:.1f}s monotone={mono}")
print("  means:", " ".join(f"{m:.4f}" for m in means))
