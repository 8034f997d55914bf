"""Sampling of the Poisson weighted tree cluster and two-sided partial
valuations, with a windowed pruning engine for deep replica-gap estimates.

Randomness is a counter-based hash stream (splitmix64 finalizer): every node
owns a 64-bit state, child states derive from it by index, and draws are
position-addressed.  The same draws therefore come out identically whether a
cluster is materialized breadth-first or explored lazily, which is what makes
the pruning engine bit-compatible with the materialized one.

The pruning engine evaluates both boundary assignments of one cluster in a
single pass, maintaining the bracket (low, high) at every node.  A subtree may
be abandoned once both running values fall below the caller's certification
thresholds: the abandoned values are then overestimates, but provably ones the
caller's minima ignore.  Root values are exact.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Tuple

import numpy as np
from numba import njit

from .survival import ModelParams, SurvivalGrid
from .operators import DEFAULT_CELLS

__all__ = [
    "ThetaCluster",
    "Valuation",
    "GAMES",
    "BOUNDARY_MODES",
    "sample_cluster",
    "partial_valuation",
    "replica_gap",
    "empirical_survival",
    "expected_cluster_size",
    "boundary_value",
    "root_state",
    "MATERIALIZATION_LIMIT",
]

GAMES = ("matching", "tsp", "edge_cover")
BOUNDARY_MODES = ("favor_bob", "favor_alice")
MATERIALIZATION_LIMIT = 1e8

_M64 = (1 << 64) - 1
_GOLD = 0x9E3779B97F4A7C15
_SALT = 0xD1B54A32D192ED03
_INV53 = 1.0 / 9007199254740992.0  # 2^-53
# Poisson counts are produced in chunks of this mean so the running product
# in the inversion loop stays far from underflow.
_POISSON_CHUNK = 45.0
_MAX_CHILDREN = 256
_MAX_MEAN_OFFSPRING = 64.0


# ----------------------------------------------------------------------
# hash stream (pure Python; the jitted twin is below)
# ----------------------------------------------------------------------

def _mix64(z: int) -> int:
    z &= _M64
    z ^= z >> 30
    z = (z * 0xBF58476D1CE4E5B9) & _M64
    z ^= z >> 27
    z = (z * 0x94D049BB133111EB) & _M64
    z ^= z >> 31
    return z


def _draw(state: int, j: int) -> float:
    """j-th uniform in [0, 1) of the node's stream."""
    return (_mix64(state ^ (((j + 1) * _SALT) & _M64)) >> 11) * _INV53


def _child_state(state: int, i: int) -> int:
    return _mix64((state + (i + 1) * _GOLD) & _M64)


def root_state(seed: int, sample_index: int) -> int:
    """64-bit stream state of one sample's root node."""
    return _mix64((_mix64(seed) + (sample_index + 1) * _GOLD) & _M64)


def _poisson(state: int, lam: float) -> Tuple[int, int]:
    """Poisson(lam) count by chunked multiplicative inversion.

    Returns (count, next draw index); draws are consumed from index 0.
    """
    count = 0
    j = 0
    remaining = lam
    while remaining > 0.0:
        chunk = remaining if remaining <= _POISSON_CHUNK else _POISSON_CHUNK
        limit = math.exp(-chunk)
        prod = 1.0
        while True:
            prod *= _draw(state, j)
            j += 1
            if prod <= limit:
                break
            count += 1
        remaining -= chunk
    return count, j


def _node_children(state: int, theta: float, d: float):
    """Sorted (length, child_state) pairs of one node."""
    lam = theta**d
    count, j = _poisson(state, lam)
    if count > _MAX_CHILDREN:
        raise RuntimeError(f"offspring count {count} exceeds engine bound")
    kids = []
    for i in range(count):
        u = _draw(state, j + i)
        length = theta * (1.0 - u) ** (1.0 / d)
        kids.append((length, _child_state(state, i)))
    kids.sort(key=lambda t: t[0])
    return kids


# ----------------------------------------------------------------------
# materialized clusters
# ----------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ThetaCluster:
    """Rooted tree of short edges, truncated at depth_limit, in BFS layout.

    Children of node i are nodes child_start[i]:child_start[i+1], ordered by
    increasing edge length; parent_length holds each node's edge to its
    parent (nan at the root).
    """

    depth_limit: int
    rng_seed: int
    theta: float
    d: float
    parent: np.ndarray = field(repr=False)
    parent_length: np.ndarray = field(repr=False)
    depth: np.ndarray = field(repr=False)
    child_start: np.ndarray = field(repr=False)

    @property
    def n_nodes(self) -> int:
        return len(self.parent)

    def children(self, i: int) -> np.ndarray:
        return np.arange(self.child_start[i], self.child_start[i + 1])


@dataclass(frozen=True, eq=False)
class Valuation:
    """Per-node partial valuation on a cluster; nan beyond the cut depth."""

    values: np.ndarray
    boundary_mode: str
    game: str
    cut_depth: int
    cluster: ThetaCluster


def expected_cluster_size(p: ModelParams, depth_limit: int) -> float:
    """Expected node count: sum of (theta^d)^j over depths j <= depth_limit."""
    lam = p.theta**p.d
    if lam == 1.0:
        return float(depth_limit + 1)
    return float((lam ** (depth_limit + 1) - 1.0) / (lam - 1.0))


def sample_cluster(p: ModelParams, depth_limit: int, seed: int) -> ThetaCluster:
    """Materialize one cluster breadth-first, deterministically in seed."""
    if depth_limit < 0:
        raise ValueError("depth_limit must be >= 0")
    expected = expected_cluster_size(p, depth_limit)
    if expected > MATERIALIZATION_LIMIT:
        raise ValueError(
            f"expected node count {expected:.3e} exceeds the materialization "
            f"limit {MATERIALIZATION_LIMIT:.0e}; reduce depth_limit or theta"
        )
    # the root state matches sample 0 of the batch engine so that
    # single-cluster and batch runs agree draw for draw
    states = [root_state(seed, 0)]
    parent = [-1]
    parent_length = [math.nan]
    depth = [0]
    kids_of = []
    frontier = [0]
    for level in range(depth_limit):
        nxt = []
        for node in frontier:
            kids = _node_children(states[node], p.theta, p.d)
            ids = []
            for length, st in kids:
                states.append(st)
                parent.append(node)
                parent_length.append(length)
                depth.append(level + 1)
                ids.append(len(states) - 1)
            kids_of.append(ids)
            nxt.extend(ids)
        frontier = nxt
    for _ in frontier:
        kids_of.append([])
    n = len(states)
    child_start = np.ones(n + 1, dtype=np.int64)  # first child id is 1
    for i, ids in enumerate(kids_of):
        child_start[i + 1] = child_start[i] + len(ids)
        if ids and (ids[0] != child_start[i] or ids[-1] != child_start[i + 1] - 1):
            raise AssertionError("BFS layout violated")
    return ThetaCluster(
        depth_limit=depth_limit,
        rng_seed=int(seed),
        theta=p.theta,
        d=p.d,
        parent=np.asarray(parent, dtype=np.int64),
        parent_length=np.asarray(parent_length, dtype=np.float64),
        depth=np.asarray(depth, dtype=np.int64),
        child_start=child_start,
    )


def boundary_value(mode: str, k: int, game: str, theta: float) -> float:
    """Value assigned at the cut depth k.

    The favored player gets the top of the value range when k is even and
    the bottom when k is odd, so that after k antitone propagation steps the
    root brackets from the intended side; the other mode is the reverse.
    """
    if mode not in BOUNDARY_MODES:
        raise ValueError(f"unknown boundary mode {mode!r}")
    if game not in GAMES:
        raise ValueError(f"unknown game {game!r}")
    top = theta / 2
    bottom = 0.0 if game == "edge_cover" else -theta / 2
    favored_top = k % 2 == 0
    if mode == "favor_alice":
        favored_top = not favored_top
    return top if favored_top else bottom


def partial_valuation(c: ThetaCluster, k: int, mode: str, game: str) -> Valuation:
    """Propagate boundary values at depth k to the root.

    matching: f = min(T, min_i(l_i - f_i)); tsp: same with the second
    smallest (+inf when fewer than two children); edge_cover: clamped at 0.
    Nodes deeper than k are not part of the computation and carry nan.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    if k > c.depth_limit:
        raise ValueError(f"k={k} exceeds the cluster depth limit {c.depth_limit}")
    if game not in GAMES:
        raise ValueError(f"unknown game {game!r}")
    T = c.theta / 2
    bval = boundary_value(mode, k, game, c.theta)
    values = np.full(c.n_nodes, np.nan)
    for i in range(c.n_nodes - 1, -1, -1):
        dep = c.depth[i]
        if dep > k:
            continue
        if dep == k:
            values[i] = bval
            continue
        best = math.inf
        second = math.inf
        for ch in range(c.child_start[i], c.child_start[i + 1]):
            cand = c.parent_length[ch] - values[ch]
            if cand < best:
                second = best
                best = cand
            elif cand < second:
                second = cand
        raw = second if game == "tsp" else best
        v = min(T, raw)
        if game == "edge_cover":
            v = max(0.0, v)
        values[i] = v
    return Valuation(values=values, boundary_mode=mode, game=game, cut_depth=k, cluster=c)


# ----------------------------------------------------------------------
# pure-Python bracket engine (reference; the jitted twin follows)
# ----------------------------------------------------------------------

def _bracket_py(state: int, depth_left: int, tau_lo: float, tau_hi: float,
                theta: float, d: float, game: int, counter: list) -> Tuple[float, float]:
    counter[0] += 1
    T = theta / 2
    bottom = 0.0 if game == 2 else -T
    if depth_left == 0:
        return bottom, T
    if tau_lo >= T and tau_hi >= T:
        return T, T
    a1 = a2 = b1 = b2 = T  # two smallest candidates, low and high side
    for length, child in _node_children(state, theta, d):
        relevant = a2 if game == 1 else a1
        relevant_hi = b2 if game == 1 else b1
        if length - T >= max(relevant, relevant_hi):
            break
        clo, chi = _bracket_py(child, depth_left - 1,
                               length - relevant_hi, length - relevant,
                               theta, d, game, counter)
        lo_c = length - chi
        hi_c = length - clo
        if lo_c < a1:
            a2 = a1
            a1 = lo_c
        elif lo_c < a2:
            a2 = lo_c
        if hi_c < b1:
            b2 = b1
            b1 = hi_c
        elif hi_c < b2:
            b2 = hi_c
        lo_run = a2 if game == 1 else a1
        hi_run = b2 if game == 1 else b1
        if game == 2 and hi_run <= 0.0:
            break
        if lo_run <= tau_lo and hi_run <= tau_hi:
            break
    lo = a2 if game == 1 else a1
    hi = b2 if game == 1 else b1
    lo = min(T, lo)
    hi = min(T, hi)
    if game == 2:
        lo = max(0.0, lo)
        hi = max(0.0, hi)
    return lo, hi


def _bracket_root_py(seed: int, sample_index: int, k: int, theta: float,
                     d: float, game: str) -> Tuple[float, float]:
    counter = [0]
    return _bracket_py(root_state(seed, sample_index), k, -math.inf, -math.inf,
                       theta, d, GAMES.index(game), counter)


# ----------------------------------------------------------------------
# jitted engine
# ----------------------------------------------------------------------

@njit(cache=True)
def _mix64_nb(z):
    z = np.uint64(z)
    z ^= z >> np.uint64(30)
    z *= np.uint64(0xBF58476D1CE4E5B9)
    z ^= z >> np.uint64(27)
    z *= np.uint64(0x94D049BB133111EB)
    z ^= z >> np.uint64(31)
    return z


@njit(cache=True)
def _draw_nb(state, j):
    h = _mix64_nb(state ^ (np.uint64(j + 1) * np.uint64(0xD1B54A32D192ED03)))
    return (h >> np.uint64(11)) * _INV53


@njit(cache=True)
def _poisson_nb(state, lam):
    count = 0
    j = 0
    remaining = lam
    while remaining > 0.0:
        chunk = remaining if remaining <= _POISSON_CHUNK else _POISSON_CHUNK
        limit = math.exp(-chunk)
        prod = 1.0
        while True:
            prod *= _draw_nb(state, j)
            j += 1
            if prod <= limit:
                break
            count += 1
        remaining -= chunk
    return count, j


@njit(cache=True)
def _bracket_nb(state, depth_left, tau_lo, tau_hi, theta, d, game,
                scratch_l, scratch_i, counter):
    counter[0] += 1
    T = theta / 2
    bottom = 0.0 if game == 2 else -T
    if depth_left == 0:
        return bottom, T
    if tau_lo >= T and tau_hi >= T:
        return T, T
    count, j0 = _poisson_nb(state, theta**d)
    if count > _MAX_CHILDREN:
        raise RuntimeError("offspring count exceeds engine bound")
    row_l = scratch_l[depth_left]
    row_i = scratch_i[depth_left]
    inv_d = 1.0 / d
    for i in range(count):
        u = _draw_nb(state, j0 + i)
        row_l[i] = theta * (1.0 - u) ** inv_d
        row_i[i] = i
    # insertion sort by length, draw index rides along
    for i in range(1, count):
        li = row_l[i]
        ii = row_i[i]
        m = i - 1
        while m >= 0 and row_l[m] > li:
            row_l[m + 1] = row_l[m]
            row_i[m + 1] = row_i[m]
            m -= 1
        row_l[m + 1] = li
        row_i[m + 1] = ii
    a1 = T
    a2 = T
    b1 = T
    b2 = T
    for i in range(count):
        length = row_l[i]
        if game == 1:
            relevant = a2
            relevant_hi = b2
        else:
            relevant = a1
            relevant_hi = b1
        upper = relevant if relevant > relevant_hi else relevant_hi
        if length - T >= upper:
            break
        child = _mix64_nb(state + np.uint64(row_i[i] + 1) * np.uint64(0x9E3779B97F4A7C15))
        clo, chi = _bracket_nb(child, depth_left - 1,
                               length - relevant_hi, length - relevant,
                               theta, d, game, scratch_l, scratch_i, counter)
        lo_c = length - chi
        hi_c = length - clo
        if lo_c < a1:
            a2 = a1
            a1 = lo_c
        elif lo_c < a2:
            a2 = lo_c
        if hi_c < b1:
            b2 = b1
            b1 = hi_c
        elif hi_c < b2:
            b2 = hi_c
        lo_run = a2 if game == 1 else a1
        hi_run = b2 if game == 1 else b1
        if game == 2 and hi_run <= 0.0:
            break
        if lo_run <= tau_lo and hi_run <= tau_hi:
            break
    lo = a2 if game == 1 else a1
    hi = b2 if game == 1 else b1
    if lo > T:
        lo = T
    if hi > T:
        hi = T
    if game == 2:
        if lo < 0.0:
            lo = 0.0
        if hi < 0.0:
            hi = 0.0
    return lo, hi


@njit(cache=True)
def _bracket_batch_nb(seed, samples, k, theta, d, game, lo_out, hi_out,
                      counter, start):
    base = _mix64_nb(seed)
    scratch_l = np.empty((k + 1, _MAX_CHILDREN), dtype=np.float64)
    scratch_i = np.empty((k + 1, _MAX_CHILDREN), dtype=np.int64)
    for s in range(samples):
        root = _mix64_nb(base + np.uint64(start + s + 1)
                         * np.uint64(0x9E3779B97F4A7C15))
        lo, hi = _bracket_nb(root, k, -1e308, -1e308, theta, d, game,
                             scratch_l, scratch_i, counter)
        lo_out[s] = lo
        hi_out[s] = hi


@njit(inline="always")
def _expand_nb(state, lam, one_chunk, limit0, theta, d, inv_d, row_l, row_i):
    """Draw a node's offspring into row_l/row_i, sorted by length.

    Returns the child count, or -1 when it exceeds the engine bound.  Draw
    order and arithmetic match _node_children exactly.
    """
    count = 0
    j = 0
    if one_chunk:
        prod = 1.0
        while True:
            prod *= _draw_nb(state, j)
            j += 1
            if prod <= limit0:
                break
            count += 1
    else:
        remaining = lam
        while remaining > 0.0:
            chunk = remaining if remaining <= _POISSON_CHUNK else _POISSON_CHUNK
            limit = math.exp(-chunk)
            prod = 1.0
            while True:
                prod *= _draw_nb(state, j)
                j += 1
                if prod <= limit:
                    break
                count += 1
            remaining -= chunk
    if count > _MAX_CHILDREN:
        return -1
    if d == 1.0:
        for i in range(count):
            row_l[i] = theta * (1.0 - _draw_nb(state, j + i))
            row_i[i] = i
    else:
        for i in range(count):
            row_l[i] = theta * (1.0 - _draw_nb(state, j + i)) ** inv_d
            row_i[i] = i
    for i in range(1, count):
        li = row_l[i]
        ii = row_i[i]
        m = i - 1
        while m >= 0 and row_l[m] > li:
            row_l[m + 1] = row_l[m]
            row_i[m + 1] = row_i[m]
            m -= 1
        row_l[m + 1] = li
        row_i[m + 1] = ii
    return count


@njit(cache=True, nogil=True)
def _bracket_iter_batch_nb(seed, samples, k, theta, d, game,
                           lo_out, hi_out, counter, start):
    """Explicit-stack twin of _bracket_batch_nb (identical outputs).

    Leaf children and window-certified children are resolved inline without a
    stack push; per-node work otherwise mirrors the recursive engine draw for
    draw, so the two produce bit-identical values and node counts.  Releases
    the GIL so sample ranges can run on worker threads.
    """
    gold = np.uint64(0x9E3779B97F4A7C15)
    T = theta / 2.0
    bottom = 0.0 if game == 2 else -T
    base = _mix64_nb(seed)
    nodes = 0
    if k == 0:
        for s in range(samples):
            lo_out[s] = bottom
            hi_out[s] = T
        counter[0] += samples
        return
    lam = theta**d
    inv_d = 1.0 / d
    one_chunk = lam <= _POISSON_CHUNK
    limit0 = math.exp(-lam) if one_chunk else 0.0
    nlev = k + 1
    sc_l = np.empty((nlev, _MAX_CHILDREN), dtype=np.float64)
    sc_i = np.empty((nlev, _MAX_CHILDREN), dtype=np.int64)
    st_state = np.empty(nlev, dtype=np.uint64)
    st_count = np.empty(nlev, dtype=np.int64)
    st_pos = np.empty(nlev, dtype=np.int64)
    st_a1 = np.empty(nlev, dtype=np.float64)
    st_a2 = np.empty(nlev, dtype=np.float64)
    st_b1 = np.empty(nlev, dtype=np.float64)
    st_b2 = np.empty(nlev, dtype=np.float64)
    st_tlo = np.empty(nlev, dtype=np.float64)
    st_thi = np.empty(nlev, dtype=np.float64)
    st_clen = np.empty(nlev, dtype=np.float64)
    for s in range(samples):
        root = _mix64_nb(base + np.uint64(start + s + 1) * gold)
        nodes += 1
        q = 0
        st_state[0] = root
        st_tlo[0] = -1e308
        st_thi[0] = -1e308
        cnt = _expand_nb(root, lam, one_chunk, limit0, theta, d, inv_d,
                         sc_l[0], sc_i[0])
        if cnt < 0:
            raise RuntimeError("offspring count exceeds engine bound")
        st_count[0] = cnt
        st_pos[0] = 0
        st_a1[0] = T
        st_a2[0] = T
        st_b1[0] = T
        st_b2[0] = T
        res_lo = 0.0
        res_hi = 0.0
        while True:
            if game == 1:
                rel = st_a2[q]
                rel_hi = st_b2[q]
            else:
                rel = st_a1[q]
                rel_hi = st_b1[q]
            pos = st_pos[q]
            length = 0.0
            do_fin = False
            if pos >= st_count[q]:
                do_fin = True
            else:
                length = sc_l[q, pos]
                upper = rel if rel > rel_hi else rel_hi
                if length - T >= upper:
                    do_fin = True
            if do_fin:
                lo = rel if rel < T else T
                hi = rel_hi if rel_hi < T else T
                if game == 2:
                    if lo < 0.0:
                        lo = 0.0
                    if hi < 0.0:
                        hi = 0.0
                if q == 0:
                    res_lo = lo
                    res_hi = hi
                    break
                q -= 1
                length = st_clen[q]
                clo = lo
                chi = hi
            else:
                nodes += 1
                tlo_c = length - rel_hi
                thi_c = length - rel
                if k - q - 1 == 0:
                    clo = bottom
                    chi = T
                elif tlo_c >= T and thi_c >= T:
                    clo = T
                    chi = T
                else:
                    cstate = _mix64_nb(st_state[q]
                                       + np.uint64(sc_i[q, pos] + 1) * gold)
                    st_clen[q] = length
                    q += 1
                    st_state[q] = cstate
                    st_tlo[q] = tlo_c
                    st_thi[q] = thi_c
                    cnt = _expand_nb(cstate, lam, one_chunk, limit0, theta, d,
                                     inv_d, sc_l[q], sc_i[q])
                    if cnt < 0:
                        raise RuntimeError("offspring count exceeds engine bound")
                    st_count[q] = cnt
                    st_pos[q] = 0
                    st_a1[q] = T
                    st_a2[q] = T
                    st_b1[q] = T
                    st_b2[q] = T
                    continue
            # deliver the child bracket (clo, chi) over edge `length` to frame q
            lo_c = length - chi
            hi_c = length - clo
            if lo_c < st_a1[q]:
                st_a2[q] = st_a1[q]
                st_a1[q] = lo_c
            elif lo_c < st_a2[q]:
                st_a2[q] = lo_c
            if hi_c < st_b1[q]:
                st_b2[q] = st_b1[q]
                st_b1[q] = hi_c
            elif hi_c < st_b2[q]:
                st_b2[q] = hi_c
            if game == 1:
                lo_run = st_a2[q]
                hi_run = st_b2[q]
            else:
                lo_run = st_a1[q]
                hi_run = st_b1[q]
            if game == 2 and hi_run <= 0.0:
                st_pos[q] = st_count[q]
            elif lo_run <= st_tlo[q] and hi_run <= st_thi[q]:
                st_pos[q] = st_count[q]
            else:
                st_pos[q] = st_pos[q] + 1
        lo_out[s] = res_lo
        hi_out[s] = res_hi
    counter[0] += nodes


def _bracket_batch(p: ModelParams, k: int, samples: int, seed: int, game: str,
                   recursive: bool = False, start: int = 0, workers: int = 1):
    """Root brackets for sample indices start..start+samples-1.

    Every sample owns a stream derived from (seed, index), so splitting a
    range across workers (or machines) reproduces the single-run arrays bit
    for bit; the iterative kernel drops the GIL, so workers > 1 uses threads.
    """
    if game not in GAMES:
        raise ValueError(f"unknown game {game!r}")
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if k < 0:
        raise ValueError("k must be >= 0")
    if p.theta**p.d > _MAX_MEAN_OFFSPRING:
        raise ValueError(
            f"mean offspring {p.theta ** p.d:.1f} exceeds the engine bound "
            f"{_MAX_MEAN_OFFSPRING:.0f}"
        )
    lo = np.empty(samples)
    hi = np.empty(samples)
    state = np.uint64(seed & _M64)
    args = (samples, k, p.theta, p.d, GAMES.index(game))
    if recursive:
        counter = np.zeros(1, dtype=np.int64)
        _bracket_batch_nb(state, *args, lo, hi, counter, np.int64(start))
        return lo, hi, int(counter[0])
    workers = max(1, int(workers))
    if workers == 1 or samples < 2 * workers:
        counter = np.zeros(1, dtype=np.int64)
        _bracket_iter_batch_nb(state, *args, lo, hi, counter, np.int64(start))
        return lo, hi, int(counter[0])
    bounds = np.linspace(0, samples, workers + 1).astype(np.int64)
    counters = np.zeros((workers, 1), dtype=np.int64)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [
            pool.submit(
                _bracket_iter_batch_nb, state, int(b - a), k, p.theta, p.d,
                GAMES.index(game), lo[a:b], hi[a:b], counters[w],
                np.int64(start + a))
            for w, (a, b) in enumerate(zip(bounds[:-1], bounds[1:]))
        ]
        for f in futures:
            f.result()
    return lo, hi, int(counters.sum())


def replica_gap(p: ModelParams, k: int, samples: int, seed: int,
                game: str = "matching", workers: int = 1) -> Tuple[float, float]:
    """Monte Carlo mean of the root bracket width, with a 95% half-width.

    The two boundary assignments are evaluated jointly per sampled cluster;
    the per-sample width is nonnegative and shrinks as k grows, and no
    cluster is ever held in memory whole.
    """
    lo, hi, _ = _bracket_batch(p, k, samples, seed, game, workers=workers)
    gaps = hi - lo
    mean = float(gaps.mean())
    half = 1.959963984540054 * float(gaps.std(ddof=1)) / math.sqrt(samples) if samples > 1 else math.inf
    return mean, half


def empirical_survival(p: ModelParams, k: int, samples: int, seed: int,
                       game: str = "matching", workers: int = 1) -> SurvivalGrid:
    """Empirical survival of the upper root valuation on the standard grid.

    The upper assignment alternates boundary by depth parity, so its root
    law is the k-th antitone-operator iterate started from the constant-1
    survival for even k and from the constant-0 survival for odd k; the
    grid includes the empirical atom at theta/2.
    """
    _, hi, _ = _bracket_batch(p, k, samples, seed, game, workers=workers)
    T = p.theta / 2
    lo_end = 0.0 if game == "edge_cover" else -T
    step = (T - lo_end) / DEFAULT_CELLS
    nodes = lo_end + step * np.arange(DEFAULT_CELLS + 1)
    sorted_vals = np.sort(hi)
    surv = (samples - np.searchsorted(sorted_vals, nodes, side="left")) / samples
    if game == "edge_cover":
        # clamping at 0 parks an atom on the first node; the operator grid
        # carries the exclusive survival there, its gap to 1 being the atom
        surv[0] = float(np.count_nonzero(hi > 0.0)) / samples
    else:
        surv[0] = 1.0
    return SurvivalGrid(lo=lo_end, hi=T, step=step, values=surv)
