"""Minimum perfect target set solvers for thresholds bounded by two or three.

Both solvers first equalize the instance so every threshold is exactly the
bound t, by attaching t star gadgets: each star center gains t degree-1
leaves, and every original vertex is wired to enough centers to raise its
effective requirement to t. Every perfect target set of the equalized
instance contains all t*t star leaves, the centers then activate for free,
and original vertices behave exactly as before; minima shift by exactly t*t.

On the equalized instance a two-part search runs: part 1 brute-forces small
candidate sets in ascending size, part 2 is branch-and-reduce over
selected / excluded / free with degree-based reduction and branching rules,
finishing each stable branch by exhausting the free part.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import floor
from typing import Optional

from .activation import closure, closure_mask, is_perfect_target_set
from .instance import Graph, Instance

# Brute-force cutoff fractions for the two solvers: part 1 covers candidate
# sizes up to (1 - PART1_GAMMA_THR2) * n for thresholds two, and up to
# (1 - (2/3) * PART1_GAMMA_THR3) * n for thresholds three.
PART1_GAMMA_THR2 = 0.655984
PART1_GAMMA_THR3 = 0.839533


@dataclass
class PerfectStats:
    """Instrumentation counters for one perfect-solver run."""

    rr1_moves: int = 0
    rr3_moves: int = 0
    br1_apps: int = 0
    br1_children: list[tuple[int, int]] = field(default_factory=list)
    r4_apps: int = 0
    r4_children: list[int] = field(default_factory=list)
    r5_apps: int = 0
    r5_children: list[int] = field(default_factory=list)
    part1_max_size: int = -1
    part1_found: bool = False
    leaf_bruteforces: int = 0


def gadget_bounded_to_equal(inst: Instance, t: int) -> Instance:
    """Equalize thresholds to exactly t by adding t star gadgets (t >= 2).

    Adds t centers with t leaves each (t*(t+1) new vertices); original vertex v
    is connected to the first t - thr(v) centers. All output thresholds are t.
    Minimum perfect target sets grow by exactly t*t (the forced star leaves).
    """
    if t < 2:
        raise ValueError("equalization target must be at least 2")
    if inst.max_threshold() > t:
        raise ValueError(f"threshold above {t} present; cannot equalize downward")
    n = inst.n
    edges = list(inst.graph.edges())
    centers = []
    for i in range(t):
        c = n + i * (t + 1)
        centers.append(c)
        for j in range(1, t + 1):
            edges.append((c, c + j))
    for v in range(n):
        for i in range(t - inst.thr[v]):
            edges.append((v, centers[i]))
    graph = Graph(n + t * (t + 1), edges)
    return Instance(graph, (t,) * graph.n)


def solve_perfect_thr2(inst: Instance, stats: Optional[PerfectStats] = None) -> frozenset[int]:
    """Minimum perfect target set when every threshold is at most two."""
    return _solve_small_thr(inst, 2, stats)


def solve_perfect_thr3(inst: Instance, stats: Optional[PerfectStats] = None) -> frozenset[int]:
    """Minimum perfect target set when every threshold is at most three."""
    return _solve_small_thr(inst, 3, stats)


def _solve_small_thr(inst: Instance, t: int, stats: Optional[PerfectStats]) -> frozenset[int]:
    if inst.max_threshold() > t:
        raise ValueError(f"threshold above {t} present")
    if is_perfect_target_set(inst, ()):
        return frozenset()
    eq = gadget_bounded_to_equal(inst, t)
    if t == 2:
        part1_max = floor((1.0 - PART1_GAMMA_THR2) * eq.n)
    else:
        part1_max = floor((1.0 - (2.0 / 3.0) * PART1_GAMMA_THR3) * eq.n)
    if stats is not None:
        stats.part1_max_size = part1_max
    best = _min_perfect_equal(eq, t, part1_max, stats)
    answer = frozenset(v for v in best if v < inst.n)
    assert len(answer) == len(best) - t * t
    assert is_perfect_target_set(inst, answer)
    return answer


def _min_perfect_equal(
    eq: Instance, t: int, part1_max: int, stats: Optional[PerfectStats]
) -> frozenset[int]:
    """Minimum perfect target set of an equalized (thr == t everywhere) gadget instance."""
    n = eq.n
    thr = eq.thr
    masks = eq.graph.neighbor_masks()
    n_orig = n - t * (t + 1)
    leaves = frozenset(
        v for v in range(n_orig, n) if (v - n_orig) % (t + 1) != 0
    )
    leaf_mask = 0
    for v in leaves:
        leaf_mask |= 1 << v
    full_mask = (1 << n) - 1

    # Part 1: ascending brute force up to part1_max. Star leaves have one
    # neighbor and threshold t >= 2, so they sit in every perfect target set;
    # only the remaining vertices are enumerated around them.
    others = [v for v in range(n) if v not in leaves]
    for extra in range(part1_max - t * t + 1):
        for sub in combinations(others, extra):
            seed = leaf_mask
            for v in sub:
                seed |= 1 << v
            if closure_mask(masks, thr, seed) == full_mask:
                if stats is not None:
                    stats.part1_found = True
                return leaves | frozenset(sub)

    # Part 2: branch and reduce; the incumbent starts at the full vertex set.
    nbr = eq.graph.neighbor_sets()
    deg = [eq.graph.degree(v) for v in range(n)]
    best: list[frozenset[int]] = [frozenset(range(n))]

    def leaf_bruteforce(selected: frozenset[int], free: frozenset[int]) -> None:
        if stats is not None:
            stats.leaf_bruteforces += 1
        base = 0
        for v in selected:
            base |= 1 << v
        free_sorted = sorted(free)
        limit = min(len(free_sorted), len(best[0]) - len(selected) - 1)
        for size in range(limit + 1):
            for sub in combinations(free_sorted, size):
                seed = base
                for v in sub:
                    seed |= 1 << v
                if closure_mask(masks, thr, seed) == full_mask:
                    best[0] = selected | frozenset(sub)
                    return

    def branch(selected: frozenset[int], excluded: frozenset[int],
               free: frozenset[int]) -> None:
        while True:
            move = closure(eq, selected) & free
            if move:
                if stats is not None:
                    stats.rr1_moves += len(move)
                excluded |= move
                free -= move
                continue
            low = frozenset(v for v in free if deg[v] < t)
            if low:
                if stats is not None:
                    stats.rr3_moves += len(low)
                selected |= low
                free -= low
                continue
            break
        if len(selected) >= len(best[0]):
            return
        reach_mask = 0
        for v in selected | free:
            reach_mask |= 1 << v
        if closure_mask(masks, thr, reach_mask) != full_mask:
            return

        pivot = -1
        pivot_deg = -1
        for v in sorted(free):
            deg_free = len(nbr[v] & free)
            if deg_free >= t and deg_free > pivot_deg:
                pivot, pivot_deg = v, deg_free
        if pivot >= 0:
            group_t = sorted(nbr[pivot] & free)[:t]
            group = frozenset(group_t + [pivot])
            children: list[tuple[frozenset[int], frozenset[int]]] = []
            for size in range(t):
                for inside in combinations(sorted(group), size):
                    children.append((frozenset(inside), group - frozenset(inside)))
            children.append((frozenset(group_t), frozenset({pivot})))
            if stats is not None:
                stats.br1_apps += 1
                stats.br1_children.append((t, len(children)))
            for to_sel, to_exc in children:
                branch(selected | to_sel, excluded | to_exc, free - group)
            return

        edge = None
        for u, v in eq.graph.edges():
            if u in free and v in free and deg[u] == t and deg[v] == t:
                edge = (u, v)
                break
        if edge is not None:
            u, v = edge
            children4 = [
                (frozenset({v}), frozenset({u})),
                (frozenset({u}), frozenset({v})),
                (frozenset({u, v}), frozenset()),
            ]
            if stats is not None:
                stats.r4_apps += 1
                stats.r4_children.append(len(children4))
            for to_sel, to_exc in children4:
                branch(selected | to_sel, excluded | to_exc, free - {u, v})
            return

        if t == 3:
            trio = None
            for v in sorted(free):
                if deg[v] != 4:
                    continue
                mates = sorted(u for u in nbr[v] & free if deg[u] == 3)
                if len(mates) >= 2:
                    trio = (mates[0], v, mates[1])
                    break
            if trio is not None:
                group = frozenset(trio)
                children5 = []
                for size in range(1, 4):
                    for inside in combinations(sorted(group), size):
                        children5.append((frozenset(inside), group - frozenset(inside)))
                if stats is not None:
                    stats.r5_apps += 1
                    stats.r5_children.append(len(children5))
                for to_sel, to_exc in children5:
                    branch(selected | to_sel, excluded | to_exc, free - group)
                return

        if t == 2:
            # with no rule applicable the already-decided part activates everything
            assert is_perfect_target_set(eq, selected | excluded)
        leaf_bruteforce(selected, free)

    branch(frozenset(), frozenset(), frozenset(range(n)))
    return best[0]
