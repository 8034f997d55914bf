"""Independent reference computations shared by the test modules.

Everything here is deliberately written against the mathematical
definitions, not against the package internals, so agreement is evidence
rather than tautology.  Slow is fine; these run at desk scale.
"""

import math
from itertools import combinations

import numpy as np


def zeta_euler_maclaurin(s: float, n_terms: int = 500_000) -> float:
    """Riemann zeta for s > 1 by direct summation plus tail corrections."""
    head = math.fsum(n**-s for n in range(1, n_terms + 1))
    big_n = float(n_terms)
    tail = (
        big_n ** (1 - s) / (s - 1)
        - big_n**-s / 2
        + s * big_n ** (-s - 1) / 12
        - s * (s + 1) * (s + 2) * big_n ** (-s - 3) / 720
    )
    return head + tail


def quad_kernel(grid_eval, x: float, d: float, upper: float,
                lo: float, hi: float, nodes=None) -> float:
    """d * int_0^upper l^(d-1) F(l - x) dl by piecewise Gauss-Legendre.

    F jumps where l - x leaves [lo, hi] (boundary atoms) and kinks at the
    grid nodes, so the constant outside pieces integrate in closed form and
    each smooth interior piece gets a high-order rule.
    """
    a = min(max(x + lo, 0.0), upper)
    b = min(max(x + hi, 0.0), upper)
    total = grid_eval(lo - 1.0) * a**d  # below-domain constant piece
    if b > a:
        bks = [a, b]
        if nodes is not None:
            bks.extend(t + x for t in nodes if a < t + x < b)
        bks = sorted(bks)
        gx, gw = np.polynomial.legendre.leggauss(24)
        for left, right in zip(bks[:-1], bks[1:]):
            if left == 0.0:
                # l = u^2 removes the l^(d-1) endpoint singularity
                mid, half = math.sqrt(right) / 2, math.sqrt(right) / 2
                pts = mid + half * gx
                vals = np.array(
                    [2 * d * u ** (2 * d - 1) * grid_eval(u * u - x) for u in pts]
                )
            else:
                mid, half = (left + right) / 2, (right - left) / 2
                pts = mid + half * gx
                vals = np.array(
                    [d * l ** (d - 1) * grid_eval(l - x) for l in pts]
                )
            total += half * float(np.dot(gw, vals))
    total += grid_eval(hi + 1.0) * (upper**d - b**d) if upper > b else 0.0
    return total


def brute_matching_cost(g, theta: float) -> float:
    """Minimum diluted matching cost by recursion over uncovered vertices."""
    half = theta / 2 if theta != math.inf else math.inf
    length = {}
    for u, v, l in g.edges:
        if l <= (theta if theta != math.inf else math.inf):
            length[(u, v)] = min(l, length.get((u, v), math.inf))

    from functools import lru_cache

    @lru_cache(maxsize=None)
    def best(avail: frozenset) -> float:
        if not avail:
            return 0.0
        v = min(avail)
        rest = avail - {v}
        out = half + best(rest) if half != math.inf else math.inf
        for u in rest:
            key = (v, u) if v < u else (u, v)
            if key in length:
                out = min(out, length[key] + best(rest - {u}))
        return out

    return best(frozenset(range(g.n)))


def brute_game_value(g, start: int, theta: float) -> float:
    """Walk-game value by direct memoized recursion on (visited, node)."""
    half = theta / 2
    adj = {v: [] for v in range(g.n)}
    for u, v, l in g.edges:
        adj[u].append((v, l))
        adj[v].append((u, l))

    from functools import lru_cache

    @lru_cache(maxsize=None)
    def value(mask: int, v: int) -> float:
        out = half
        for u, l in adj[v]:
            if not mask & (1 << u):
                out = min(out, l - value(mask | (1 << u), u))
        return out

    return value(1 << start, start)


def brute_cover_cost(g, theta: float) -> float:
    """Minimum diluted edge-cover cost by whole-subset enumeration."""
    m = g.m
    half = theta / 2
    best = math.inf
    for r in range(m + 1):
        for chosen in combinations(range(m), r):
            cost = 0.0
            covered = set()
            for i in chosen:
                u, v, l = g.edges[i]
                cost += l
                covered.add(u)
                covered.add(v)
            cost += half * (g.n - len(covered))
            best = min(best, cost)
    return best


def survival_of_samples(samples: np.ndarray, nodes: np.ndarray) -> np.ndarray:
    """Empirical P(value >= x) at each node."""
    s = np.sort(samples)
    return (len(s) - np.searchsorted(s, nodes, side="left")) / len(s)
