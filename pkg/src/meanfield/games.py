"""Exact desk-scale solvers: diluted matching/flow/edge-cover optimization,
the exploration game and its tree variants, the payoff identity check,
mean-field instance sampling, and finite-n statistics.

Solvers are exponential-time by design (subset DP and subset enumeration);
the size guards keep them in the fraction-of-a-second range where they serve
as ground truth for the asymptotic machinery in the other modules.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple

import numpy as np
from numba import njit

from .pwit import root_state, sample_cluster
from .survival import ModelParams

__all__ = [
    "WeightedGraph",
    "DilutedSolution",
    "diluted_matching",
    "diluted_flow",
    "diluted_edge_cover",
    "game_value",
    "tree_game_value",
    "verify_payoff_identity",
    "sample_meanfield",
    "empirical_statistics",
    "neighborhood_coupling_stat",
    "graph_to_text",
    "graph_from_text",
]

_MATCHING_MAX_N = 24
_GAME_MAX_N = 20
_ENUM_MAX_EDGES = 25
_SKIP = 127  # DP choice code for "leave vertex unmatched"


@dataclass(frozen=True)
class WeightedGraph:
    """Simple undirected graph with positive edge lengths and capacities.

    Edges are stored with endpoints normalized to u < v but in the order
    given; solution objects refer to edges by index into this list.
    """

    n: int
    edges: Tuple[Tuple[int, int, float], ...]
    capacities: Tuple[int, ...] = ()

    def __init__(self, n: int, edges: Sequence[Tuple[int, int, float]],
                 capacities: Optional[Sequence[int]] = None):
        if n < 1:
            raise ValueError("need at least one vertex")
        norm = []
        seen = set()
        for u, v, length in edges:
            u = int(u)
            v = int(v)
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range")
            if u > v:
                u, v = v, u
            if (u, v) in seen:
                raise ValueError(f"duplicate edge ({u}, {v})")
            seen.add((u, v))
            length = float(length)
            if not length > 0.0:
                raise ValueError(f"edge ({u}, {v}) has nonpositive length")
            norm.append((u, v, length))
        if capacities is None:
            caps = (1,) * n
        else:
            caps = tuple(int(c) for c in capacities)
            if len(caps) != n:
                raise ValueError("capacities must have one entry per vertex")
            if any(c < 1 for c in caps):
                raise ValueError("capacities must be positive")
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "edges", tuple(norm))
        object.__setattr__(self, "capacities", caps)

    @property
    def m(self) -> int:
        return len(self.edges)

    def length_matrix(self, theta: float = math.inf) -> np.ndarray:
        """Dense (n, n) matrix of lengths <= theta, inf elsewhere."""
        a = np.full((self.n, self.n), np.inf)
        for u, v, length in self.edges:
            if length <= theta:
                a[u, v] = length
                a[v, u] = length
        return a

    def without_vertex(self, v: int) -> "WeightedGraph":
        """Delete vertex v; vertices above v shift down by one."""
        if not 0 <= v < self.n:
            raise ValueError(f"vertex {v} out of range")
        if self.n == 1:
            raise ValueError("cannot delete the only vertex")

        def shift(w: int) -> int:
            return w - 1 if w > v else w

        edges = [(shift(a), shift(b), l) for a, b, l in self.edges
                 if a != v and b != v]
        caps = self.capacities[:v] + self.capacities[v + 1:]
        return WeightedGraph(self.n - 1, edges, caps)

    def with_capacity_decremented(self, v: int) -> "WeightedGraph":
        if not 0 <= v < self.n:
            raise ValueError(f"vertex {v} out of range")
        if self.capacities[v] <= 1:
            raise ValueError(
                "capacity would drop below 1; delete the vertex instead")
        caps = list(self.capacities)
        caps[v] -= 1
        return WeightedGraph(self.n, self.edges, caps)

    def is_tree(self) -> bool:
        """Connected and acyclic."""
        if self.m != self.n - 1:
            return False
        seen = [False] * self.n
        adj = [[] for _ in range(self.n)]
        for u, v, _ in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        stack = [0]
        seen[0] = True
        count = 1
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if not seen[y]:
                    seen[y] = True
                    count += 1
                    stack.append(y)
        return count == self.n


@dataclass(frozen=True)
class DilutedSolution:
    """Optimal edge subset with its cost and capacity deficiency.

    cost = total chosen length + (theta/2) * deficiency, where deficiency
    counts unused capacity units (uncovered vertices for the cover problem).
    """

    chosen_edges: Tuple[int, ...]
    cost: float
    deficiency: int


def graph_to_text(g: WeightedGraph) -> str:
    """Line format: "n m" header, m lines "u v length", and a final
    "capacities c0 ... c_{n-1}" line when any capacity differs from 1.
    Lengths carry 17 significant digits so parsing reproduces them exactly.
    """
    lines = [f"{g.n} {g.m}"]
    for u, v, length in g.edges:
        lines.append(f"{u} {v} {length:.17g}")
    if any(c != 1 for c in g.capacities):
        lines.append("capacities " + " ".join(str(c) for c in g.capacities))
    return "\n".join(lines) + "\n"


def graph_from_text(text: str) -> WeightedGraph:
    lines = [ln for ln in (raw.strip() for raw in text.splitlines()) if ln]
    if not lines:
        raise ValueError("empty graph text")
    head = lines[0].split()
    if len(head) != 2:
        raise ValueError(f"malformed header {lines[0]!r}")
    n, m = int(head[0]), int(head[1])
    if len(lines) < 1 + m:
        raise ValueError(f"expected {m} edge lines, found {len(lines) - 1}")
    edges = []
    for ln in lines[1:1 + m]:
        parts = ln.split()
        if len(parts) != 3:
            raise ValueError(f"malformed edge line {ln!r}")
        edges.append((int(parts[0]), int(parts[1]), float(parts[2])))
    caps = None
    rest = lines[1 + m:]
    if rest:
        if len(rest) != 1 or not rest[0].startswith("capacities"):
            raise ValueError("unexpected trailing lines")
        caps = [int(tok) for tok in rest[0].split()[1:]]
    return WeightedGraph(n, edges, caps)


# ----------------------------------------------------------------------
# diluted matching: subset DP
# ----------------------------------------------------------------------

@njit(cache=True)
def _matching_dp(lengths, n, half_penalty, allow_skip):
    size = 1 << n
    dp = np.empty(size, dtype=np.float64)
    choice = np.full(size, _SKIP, dtype=np.int8)
    dp[0] = 0.0
    for mask in range(1, size):
        v = 0
        while (mask >> v) & 1 == 0:
            v += 1
        base = mask & ~(1 << v)
        if allow_skip:
            best = dp[base] + half_penalty
            pick = _SKIP
        else:
            best = np.inf
            pick = _SKIP
        for u in range(v + 1, n):
            if (mask >> u) & 1:
                l = lengths[v, u]
                if l < np.inf:
                    cand = dp[base & ~(1 << u)] + l
                    if cand < best:
                        best = cand
                        pick = u
        dp[mask] = best
        choice[mask] = pick
    return dp, choice


def _reconstruct_matching(g: WeightedGraph, choice: np.ndarray):
    index = {(u, v): i for i, (u, v, _) in enumerate(g.edges)}
    mask = (1 << g.n) - 1
    chosen = []
    deficiency = 0
    while mask:
        v = (mask & -mask).bit_length() - 1
        c = int(choice[mask])
        if c >= g.n:
            deficiency += 1
            mask &= ~(1 << v)
        else:
            chosen.append(index[(v, c)])
            mask &= ~((1 << v) | (1 << c))
    return tuple(sorted(chosen)), deficiency


def diluted_matching(g: WeightedGraph, theta: float) -> DilutedSolution:
    """Exact minimum of total length + (theta/2) per unmatched vertex.

    Dynamic program over subsets of still-uncovered vertices; edges longer
    than theta are never chosen (skipping both endpoints costs at most the
    same).  theta = inf switches to the classical minimum perfect matching,
    which requires even n.
    """
    if any(c != 1 for c in g.capacities):
        raise ValueError("diluted_matching requires all capacities 1")
    if g.n > _MATCHING_MAX_N:
        raise ValueError(f"n={g.n} exceeds the exact-solver bound {_MATCHING_MAX_N}")
    if theta != math.inf and theta <= 0:
        raise ValueError("theta must be positive")
    if theta == math.inf:
        if g.n % 2:
            raise ValueError("perfect matching (theta = inf) needs even n")
        lengths = g.length_matrix()
        dp, choice = _matching_dp(lengths, g.n, 0.0, False)
        cost = float(dp[-1])
        if not math.isfinite(cost):
            raise ValueError("graph admits no perfect matching")
        chosen, deficiency = _reconstruct_matching(g, choice)
        return DilutedSolution(chosen, cost, 0)
    lengths = g.length_matrix(theta)
    dp, choice = _matching_dp(lengths, g.n, theta / 2.0, True)
    chosen, deficiency = _reconstruct_matching(g, choice)
    return DilutedSolution(chosen, float(dp[-1]), deficiency)


# ----------------------------------------------------------------------
# diluted flow and edge cover: subset enumeration
# ----------------------------------------------------------------------

@njit(cache=True)
def _enumerate_subsets(m, eu, ev, el, caps, n, half_penalty, mode):
    """mode 0: flow (degrees capped, deficiency = unused capacity);
    mode 1: cover (no cap, deficiency = uncovered vertices);
    mode 2: flow at theta = inf (deficiency must be 0);
    mode 3: cover at theta = inf (every vertex covered).
    Returns (best_cost, best_mask); best_mask -1 when nothing is feasible.
    Ties go to the smallest mask, hence to lexicographically earliest edges.
    """
    best = np.inf
    best_mask = np.int64(-1)
    deg = np.empty(n, dtype=np.int64)
    total_cap = 0
    for v in range(n):
        total_cap += caps[v]
    for mask in range(1 << m):
        for v in range(n):
            deg[v] = 0
        length_sum = 0.0
        for e in range(m):
            if (mask >> e) & 1:
                deg[eu[e]] += 1
                deg[ev[e]] += 1
                length_sum += el[e]
        feasible = True
        deficiency = 0
        if mode == 0 or mode == 2:
            for v in range(n):
                if deg[v] > caps[v]:
                    feasible = False
                    break
                deficiency += caps[v] - deg[v]
        else:
            for v in range(n):
                if deg[v] == 0:
                    deficiency += 1
        if not feasible:
            continue
        if (mode == 2 or mode == 3) and deficiency > 0:
            continue
        cost = length_sum + half_penalty * deficiency
        if cost < best:
            best = cost
            best_mask = mask
    return best, best_mask


def _run_enumeration(g: WeightedGraph, theta: float, cover: bool) -> DilutedSolution:
    if theta != math.inf and theta <= 0:
        raise ValueError("theta must be positive")
    if theta == math.inf:
        relevant = list(range(g.m))
        mode = 3 if cover else 2
        half_penalty = 0.0
    else:
        relevant = [i for i, (_, _, l) in enumerate(g.edges) if l <= theta]
        mode = 1 if cover else 0
        half_penalty = theta / 2.0
    m = len(relevant)
    if m > _ENUM_MAX_EDGES:
        raise ValueError(
            f"{m} relevant edges exceed the enumeration bound {_ENUM_MAX_EDGES}")
    eu = np.array([g.edges[i][0] for i in relevant], dtype=np.int64)
    ev = np.array([g.edges[i][1] for i in relevant], dtype=np.int64)
    el = np.array([g.edges[i][2] for i in relevant], dtype=np.float64)
    caps = np.array(g.capacities if not cover else (1,) * g.n, dtype=np.int64)
    cost, mask = _enumerate_subsets(m, eu, ev, el, caps, g.n, half_penalty, mode)
    if mask < 0:
        kind = "edge cover" if cover else "flow"
        raise ValueError(f"no feasible {kind} at theta = inf")
    chosen = tuple(relevant[e] for e in range(m) if (int(mask) >> e) & 1)
    deg = [0] * g.n
    for i in chosen:
        u, v, _ = g.edges[i]
        deg[u] += 1
        deg[v] += 1
    if cover:
        deficiency = sum(1 for v in range(g.n) if deg[v] == 0)
    else:
        deficiency = sum(g.capacities[v] - deg[v] for v in range(g.n))
    return DilutedSolution(chosen, float(cost), int(deficiency))


def diluted_flow(g: WeightedGraph, theta: float) -> DilutedSolution:
    """Exact minimum over edge subsets respecting vertex capacities of
    total length + (theta/2) per unit of unused capacity.

    With all capacities 1 this is diluted_matching on the nose; theta = inf
    demands every capacity be used exactly.
    """
    return _run_enumeration(g, theta, cover=False)


def diluted_edge_cover(g: WeightedGraph, theta: float) -> DilutedSolution:
    """Exact minimum over edge subsets of total length + (theta/2) per
    uncovered vertex; theta = inf is the classical minimum edge cover."""
    return _run_enumeration(g, theta, cover=True)


# ----------------------------------------------------------------------
# exploration game
# ----------------------------------------------------------------------

@njit(cache=True)
def _game_dp(lengths, n, T):
    size = 1 << n
    dp = np.empty((size, n), dtype=np.float64)
    for mask in range(size - 1, 0, -1):
        for v in range(n):
            if (mask >> v) & 1 == 0:
                continue
            best = T
            for u in range(n):
                if (mask >> u) & 1 == 0:
                    l = lengths[v, u]
                    if l < np.inf:
                        cand = l - dp[mask | (1 << u), u]
                        if cand < best:
                            best = cand
            dp[mask, v] = best
    return dp


def game_value(g: WeightedGraph, start: int, theta: float) -> float:
    """Minimax value of the self-avoiding exploration game from start.

    The player to move either quits (paying theta/2 to the opponent) or
    moves along an edge to an unvisited vertex, paying its length; the
    returned value is the payoff to the player who placed the token, with
    the opponent moving first.
    """
    if any(c != 1 for c in g.capacities):
        raise ValueError("game_value requires all capacities 1")
    if not 0 <= start < g.n:
        raise ValueError(f"start {start} out of range")
    if g.n > _GAME_MAX_N:
        raise ValueError(f"n={g.n} exceeds the game-solver bound {_GAME_MAX_N}")
    if not theta > 0:
        raise ValueError("theta must be positive")
    dp = _game_dp(g.length_matrix(), g.n, theta / 2.0)
    return float(dp[1 << start, start])


def tree_game_value(tree: WeightedGraph, start: int, theta: float,
                    game: str) -> float:
    """Game value on a tree by direct bottom-up recursion.

    matching: min(T, min(l_i - f_i)); tsp (the capacity-2 comply-constrain
    game): the same with the second-smallest candidate, +inf when fewer
    than two children; edge_cover: the matching form clamped at 0.
    """
    if game not in ("matching", "tsp", "edge_cover"):
        raise ValueError(f"unknown game {game!r}")
    if not 0 <= start < tree.n:
        raise ValueError(f"start {start} out of range")
    if not tree.is_tree():
        raise ValueError("input graph is not a tree")
    if not theta > 0:
        raise ValueError("theta must be positive")
    T = theta / 2.0
    adj = [[] for _ in range(tree.n)]
    for u, v, l in tree.edges:
        adj[u].append((v, l))
        adj[v].append((u, l))
    # iterative post-order from start
    order = []
    parent = [-1] * tree.n
    stack = [start]
    seen = [False] * tree.n
    seen[start] = True
    while stack:
        x = stack.pop()
        order.append(x)
        for y, _ in adj[x]:
            if not seen[y]:
                seen[y] = True
                parent[y] = x
                stack.append(y)
    value = [0.0] * tree.n
    for x in reversed(order):
        best = math.inf
        second = math.inf
        for y, l in adj[x]:
            if y == parent[x]:
                continue
            cand = l - value[y]
            if cand < best:
                second = best
                best = cand
            elif cand < second:
                second = cand
        raw = second if game == "tsp" else best
        v = min(T, raw)
        if game == "edge_cover":
            v = max(0.0, v)
        value[x] = v
    return value[start]


def verify_payoff_identity(g: WeightedGraph, start: int, theta: float,
                           game: str = "matching") -> Dict[str, object]:
    """Game value against the optimization difference it must equal.

    matching: game_value(g, start) vs M(G) - M(G - start) with the vertex
    deleted; flow (trees, start capacity >= 2): tree_game_value vs
    F(G) - F(G') with start's capacity decremented by one.
    """
    if game == "matching":
        gv = game_value(g, start, theta)
        diff = diluted_matching(g, theta).cost - \
            diluted_matching(g.without_vertex(start), theta).cost
    elif game == "flow":
        gv = tree_game_value(g, start, theta, "tsp")
        diff = diluted_flow(g, theta).cost - \
            diluted_flow(g.with_capacity_decremented(start), theta).cost
    else:
        raise ValueError(
            f"no payoff identity is defined for game {game!r}")
    return {
        "game_value": gv,
        "optimization_difference": diff,
        "equal": bool(abs(gv - diff) <= 1e-12),
    }


# ----------------------------------------------------------------------
# seeded test instances
# ----------------------------------------------------------------------

def random_mixed_graph(seed: int, *, n_max: int = 10
                       ) -> Tuple[WeightedGraph, int, float]:
    """Small random capacity-1 graph whose lengths straddle the penalty.

    Returns (graph, start, theta) with n in [2, n_max], edge probability
    drawn per instance, and lengths up to 1.6 theta so solvers must handle
    edges longer than the skip cost.  Sparse draws may leave the graph
    disconnected or even empty; both are legal inputs.
    """
    rng = np.random.default_rng(int(seed) & ((1 << 64) - 1))
    n = int(rng.integers(2, n_max + 1))
    theta = float(rng.uniform(0.5, 3.0))
    p_edge = float(rng.uniform(0.3, 1.0))
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p_edge:
                edges.append((u, v, theta * float(rng.uniform(0.05, 1.6))))
    start = int(rng.integers(0, n))
    return WeightedGraph(n, edges), start, theta


def random_capacity2_tree(seed: int, *, n_max: int = 10
                          ) -> Tuple[WeightedGraph, int, float]:
    """Random labeled tree with every vertex capacity 2; see
    random_mixed_graph for the length and penalty law."""
    rng = np.random.default_rng(int(seed) & ((1 << 64) - 1))
    n = int(rng.integers(2, n_max + 1))
    theta = float(rng.uniform(0.5, 3.0))
    edges = [
        (int(rng.integers(0, v)), v, theta * float(rng.uniform(0.05, 1.6)))
        for v in range(1, n)
    ]
    start = int(rng.integers(0, n))
    return WeightedGraph(n, edges, capacities=(2,) * n), start, theta


# ----------------------------------------------------------------------
# mean-field instances and finite-n statistics
# ----------------------------------------------------------------------

def sample_meanfield(n: int, d: float, seed: int) -> WeightedGraph:
    """Complete graph on n vertices with lengths (n X)^(1/d), X ~ Exp(1)."""
    if n < 2:
        raise ValueError("need n >= 2")
    if d < 1:
        raise ValueError("need d >= 1")
    rng = np.random.default_rng(seed & ((1 << 64) - 1))
    iu, iv = np.triu_indices(n, k=1)
    x = rng.exponential(size=len(iu))
    lengths = (n * x) ** (1.0 / d)
    edges = [(int(iu[i]), int(iv[i]), float(lengths[i]))
             for i in range(len(iu))]
    return WeightedGraph(n, edges)


def _mean_ci(values: np.ndarray) -> Tuple[float, float]:
    mean = float(values.mean())
    if len(values) < 2:
        return mean, math.inf
    half = 1.959963984540054 * float(values.std(ddof=1)) / math.sqrt(len(values))
    return mean, half


def empirical_statistics(n: int, d: float, theta: float, trials: int,
                         seed: int) -> Dict[str, object]:
    """Averages of the diluted matching cost per vertex, the unmatched
    fraction, and (even n) the perfect matching cost per vertex."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    costs = np.empty(trials)
    fractions = np.empty(trials)
    perfect = np.empty(trials) if n % 2 == 0 else None
    for t in range(trials):
        g = sample_meanfield(n, d, root_state(seed, t))
        sol = diluted_matching(g, theta)
        costs[t] = sol.cost / n
        fractions[t] = sol.deficiency / n
        if perfect is not None:
            perfect[t] = diluted_matching(g, math.inf).cost / n
    cost_mean, cost_half = _mean_ci(costs)
    frac_mean, frac_half = _mean_ci(fractions)
    out: Dict[str, object] = {
        "n": n,
        "d": d,
        "theta": theta,
        "trials": trials,
        "mean_cost": cost_mean,
        "ci_cost": cost_half,
        "mean_unmatched_fraction": frac_mean,
        "ci_unmatched_fraction": frac_half,
        "mean_perfect_cost": None,
        "ci_perfect_cost": None,
    }
    if perfect is not None:
        pm, ph = _mean_ci(perfect)
        out["mean_perfect_cost"] = pm
        out["ci_perfect_cost"] = ph
    return out


def neighborhood_coupling_stat(n: int, d: float, theta: float, k: int,
                               trials: int, seed: int) -> Dict[str, object]:
    """Mean size of the k-hop short-edge neighborhood in K_n against the
    mean size of sampled clusters, with the z-score of the difference."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if k < 0:
        raise ValueError("k must be >= 0")
    p = ModelParams(d=d, theta=theta)
    graph_sizes = np.empty(trials)
    pwit_sizes = np.empty(trials)
    for t in range(trials):
        g = sample_meanfield(n, d, root_state(seed, 2 * t))
        adj = [[] for _ in range(n)]
        for u, v, l in g.edges:
            if l <= theta:
                adj[u].append(v)
                adj[v].append(u)
        seen = np.zeros(n, dtype=bool)
        seen[0] = True
        frontier = [0]
        count = 1
        for _ in range(k):
            nxt = []
            for x in frontier:
                for y in adj[x]:
                    if not seen[y]:
                        seen[y] = True
                        nxt.append(y)
            count += len(nxt)
            frontier = nxt
        graph_sizes[t] = count
        c = sample_cluster(p, k, root_state(seed, 2 * t + 1))
        pwit_sizes[t] = c.n_nodes
    gm = float(graph_sizes.mean())
    pm = float(pwit_sizes.mean())
    if trials > 1:
        se = math.sqrt(graph_sizes.var(ddof=1) / trials
                       + pwit_sizes.var(ddof=1) / trials)
    else:
        se = 0.0
    if se == 0.0:
        z = 0.0 if gm == pm else math.inf
    else:
        z = (gm - pm) / se
    return {
        "n": n,
        "d": d,
        "theta": theta,
        "k": k,
        "trials": trials,
        "graph_mean": gm,
        "pwit_mean": pm,
        "z_score": z,
    }
