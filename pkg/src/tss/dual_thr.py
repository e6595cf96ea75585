"""Perfect target sets under bounded dual thresholds, via degenerate-subgraph search.

Reading activation as deletion: a vertex leaves the remaining graph once at
most deg(v) - thr(v) of its neighbors remain. A target set is perfect exactly
when its complement peels empty under that rule, so the minimum perfect target
set is the complement of a maximum induced subgraph that peels empty. With all
dual values equal to d this is the classic maximum d-degenerate induced
subgraph; per-vertex dual values generalize the peeling bound per vertex.
"""

from __future__ import annotations

from typing import Sequence

from .instance import Graph, Instance


def is_d_degenerate(g: Graph, d: int) -> bool:
    """True iff repeatedly deleting any vertex with at most d remaining neighbors empties g."""
    if d < 0:
        raise ValueError("degeneracy bound must be non-negative")
    return _peels_empty(g.neighbor_sets(), set(range(g.n)), [d] * g.n)


def solve_dual_perfect(inst: Instance, d: int) -> frozenset[int]:
    """Minimum perfect target set when deg(v) - thr(v) <= d for every vertex.

    Deterministic branch-and-bound maximizes a vertex set whose induced
    subgraph peels empty under per-vertex bounds deg(v) - thr(v) (peelability
    is hereditary, so unpeelable partial picks prune their whole subtree);
    the answer is the complement. Vertices with thr(v) > deg(v) can never
    peel and are excluded from the search up front.
    """
    if d < 0:
        raise ValueError("dual bound must be non-negative")
    duals = inst.dual_values()
    bad = [v for v in range(inst.n) if duals[v] > d]
    if bad:
        raise ValueError(f"dual threshold {duals[bad[0]]} of vertex {bad[0]} exceeds {d}")
    nbr = inst.graph.neighbor_sets()
    candidates = [v for v in range(inst.n) if duals[v] >= 0]
    best: list[frozenset[int]] = [frozenset()]

    def rec(i: int, current: list[int]) -> None:
        if len(current) + (len(candidates) - i) <= len(best[0]):
            return
        if i == len(candidates):
            best[0] = frozenset(current)
            return
        v = candidates[i]
        current.append(v)
        if _peels_empty(nbr, set(current), duals):
            rec(i + 1, current)
        current.pop()
        rec(i + 1, current)

    rec(0, [])
    return frozenset(range(inst.n)) - best[0]


def _peels_empty(
    nbr: tuple[frozenset[int], ...], remaining: set[int], bound: Sequence[int]
) -> bool:
    """Whether deleting vertices with remaining degree <= their own bound empties the set.

    Deleting an eligible vertex never blocks another, so greedy order suffices.
    """
    deg = {v: len(nbr[v] & remaining) for v in remaining}
    stack = [v for v in remaining if deg[v] <= bound[v]]
    gone: set[int] = set()
    while stack:
        v = stack.pop()
        if v in gone:
            continue
        gone.add(v)
        for u in nbr[v]:
            if u in remaining and u not in gone:
                deg[u] -= 1
                if deg[u] == bound[u]:
                    stack.append(u)
    return len(gone) == len(remaining)
