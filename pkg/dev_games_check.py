import itertools
import math
import random
import sys
sys.path.insert(0, "src")
from meanfield.games import (
    WeightedGraph, diluted_matching, diluted_flow, diluted_edge_cover,
    game_value, tree_game_value, verify_payoff_identity, sample_meanfield,
    empirical_statistics, neighborhood_coupling_stat, graph_to_text,
    graph_from_text)

# hand examples
g1 = WeightedGraph(1, [])
s = diluted_matching(g1, 3.0)
assert s.cost == 1.5 and s.chosen_edges == () and s.deficiency == 1, s
for l, th in [(0.7, 2.0), (3.0, 2.0), (2.0, 2.0)]:
    g2 = WeightedGraph(2, [(0, 1, l)])
    s = diluted_matching(g2, th)
    assert abs(s.cost - min(l, th)) < 1e-15, (l, th, s)
    gv = game_value(g2, 0, th)
    assert abs(gv - min(th / 2, l - th / 2)) < 1e-15, (l, th, gv)

tri = WeightedGraph(3, [(0, 1, 0.3), (1, 2, 0.3), (0, 2, 0.3)], [2, 2, 2])
s = diluted_flow(tri, 2.0)
assert abs(s.cost - 0.9) < 1e-15 and s.deficiency == 0 and len(s.chosen_edges) == 3, s

path3 = WeightedGraph(3, [(0, 1, 0.4), (1, 2, 0.9)])
s = diluted_edge_cover(path3, 100.0)
assert abs(s.cost - 1.3) < 1e-15 and s.deficiency == 0, s
iso = WeightedGraph(1, [])
s = diluted_edge_cover(iso, 2.0)
assert abs(s.cost - 1.0) < 1e-15 and s.deficiency == 1, s

# flow == matching on capacities 1
rnd = random.Random(5)
for rep in range(50):
    n = rnd.randint(2, 7)
    edges = [(u, v, rnd.uniform(0.05, 3.0))
             for u, v in itertools.combinations(range(n), 2) if rnd.random() < 0.7]
    g = WeightedGraph(n, edges)
    th = rnd.uniform(0.5, 3.0)
    a = diluted_matching(g, th)
    b = diluted_flow(g, th)
    assert abs(a.cost - b.cost) < 1e-12, (rep, a, b)
    assert a.deficiency == b.deficiency

# brute enumerator oracle for matching (independent: over lists of disjoint pairs)
def brute_matching(g, theta):
    pairs = [(u, v, l) for u, v, l in g.edges]
    best = math.inf
    def rec(avail, acc):
        nonlocal best
        cost = acc + (theta / 2) * len(avail)
        if cost < best:
            best = cost
        for i, (u, v, l) in enumerate(pairs):
            if u in avail and v in avail:
                rec(avail - {u, v}, acc + l)
    rec(frozenset(range(g.n)), 0.0)
    return best

for rep in range(60):
    n = rnd.randint(1, 8)
    edges = [(u, v, rnd.uniform(0.05, 4.0))
             for u, v in itertools.combinations(range(n), 2) if rnd.random() < 0.6]
    g = WeightedGraph(n, edges)
    th = rnd.uniform(0.3, 4.0)
    assert abs(diluted_matching(g, th).cost - brute_matching(g, th)) < 1e-12, rep

# payoff identity: matching on random graphs (lengths beyond theta included)
bad = 0
for rep in range(200):
    n = rnd.randint(2, 9)
    edges = [(u, v, rnd.uniform(0.05, 2.5 * 1.7))
             for u, v in itertools.combinations(range(n), 2) if rnd.random() < 0.75]
    g = WeightedGraph(n, edges)
    rep_res = verify_payoff_identity(g, rnd.randrange(n), 1.7, "matching")
    bad += not rep_res["equal"]
print("matching identity failures:", bad, "/200")
assert bad == 0

# payoff identity: flow on random capacity-2 trees
def random_tree(n, rnd, caps):
    edges = []
    for i in range(1, n):
        edges.append((rnd.randrange(i), i, rnd.uniform(0.05, 3.0)))
    return WeightedGraph(n, edges, [caps] * n)

bad = 0
for rep in range(150):
    n = rnd.randint(2, 10)
    t = random_tree(n, rnd, 2)
    rep_res = verify_payoff_identity(t, rnd.randrange(n), rnd.uniform(0.5, 3.0), "flow")
    bad += not rep_res["equal"]
print("flow identity failures:", bad, "/150")
assert bad == 0

# tree_game_value vs game_value on capacity-1 trees (matching game)
for rep in range(100):
    n = rnd.randint(2, 12)
    t = random_tree(n, rnd, 1)
    th = rnd.uniform(0.5, 3.0)
    st = rnd.randrange(n)
    a = tree_game_value(t, st, th, "matching")
    b = game_value(t, st, th)
    assert abs(a - b) < 1e-12, (rep, a, b)

# interchange round-trip
g = WeightedGraph(4, [(0, 1, 1 / 3), (2, 3, math.pi)], [2, 1, 2, 1])
txt = graph_to_text(g)
h = graph_from_text(txt)
assert h.edges == g.edges and h.capacities == g.capacities and h.n == g.n
assert graph_to_text(h) == txt
print("interchange sample:\n" + txt, end="")

# theta -> 0 statistics
st = empirical_statistics(8, 1.0, 1e-9, 30, 99)
assert st["mean_unmatched_fraction"] == 1.0 and st["mean_cost"] < 1e-9
st = empirical_statistics(8, 1.0, 2.0, 30, 99)
print("n=8 stats:", {k: (round(v, 4) if isinstance(v, float) else v) for k, v in st.items()})

# coupling stat
cs = neighborhood_coupling_stat(256, 1.0, 1.5, 2, 120, 7)
print("coupling:", {k: (round(v, 3) if isinstance(v, float) else v) for k, v in cs.items()})
assert abs(cs["pwit_mean"] - 4.75) < 0.8
assert abs(cs["z_score"]) < 4.0
cs0 = neighborhood_coupling_stat(64, 1.0, 1.5, 0, 10, 7)
assert cs0["graph_mean"] == 1.0 and cs0["pwit_mean"] == 1.0 and cs0["z_score"] == 0.0

# theta = inf modes
g = WeightedGraph(4, [(0, 1, 1.0), (2, 3, 2.0), (0, 2, 5.0)])
s = diluted_matching(g, math.inf)
assert abs(s.cost - 3.0) < 1e-15 and s.deficiency == 0
try:
    diluted_matching(WeightedGraph(3, [(0, 1, 1.0)]), math.inf)
    raise SystemExit("odd n not rejected")
except ValueError as e:
    print("odd n rejection:", e)
s = diluted_edge_cover(g, math.inf)
assert abs(s.cost - 3.0) < 1e-15
print("all games checks passed")
