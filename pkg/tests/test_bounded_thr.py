import math
import random

import pytest

from tss import (
    Graph,
    Instance,
    closure,
    compute_constants,
    covered_edges,
    oracle_tss_decision,
    solve_bounded,
    stage3_dp,
)
from tss.bounded_thr import (
    BranchLeaf,
    DecisionNeeded,
    SearchState,
    SolveStats,
    _Ctx,
    is_activated_round,
)

from helpers import complete_instance, rand_gnp_instance


def test_constants_t2():
    omega, gamma = compute_constants(2)
    assert omega == pytest.approx(math.log2(3) / 4 + 0.5, abs=1e-12)
    assert omega == pytest.approx(0.89624, abs=1e-5)
    # gamma solves 2^gamma = 2^(omega*gamma) * C(4,2)^(1-gamma) * 2^(1-gamma)
    assert gamma == pytest.approx(0.9718712, abs=1e-6)
    lhs = gamma
    rhs = omega * gamma + (1 - gamma) * (math.log2(6) + 1)
    assert lhs == pytest.approx(rhs, abs=1e-12)


def test_constants_below_one():
    for t in range(1, 9):
        omega, gamma = compute_constants(t)
        assert 0 <= omega < 1
        assert 0 < gamma < 1
    with pytest.raises(ValueError):
        compute_constants(0)


def test_triangle_decisions():
    inst = complete_instance(3, 2)
    for gamma in (None, 0.0):
        got = solve_bounded(inst, 2, 3, 2, gamma=gamma)
        assert got is not None and len(got) <= 2
        assert len(closure(inst, got)) == 3
        assert solve_bounded(inst, 1, 3, 2, gamma=gamma) is None


def test_empty_budget_when_target_already_met():
    rng = random.Random(3)
    for _ in range(20):
        inst = rand_gnp_instance(rng, rng.randint(1, 7), 3)
        base = len(closure(inst, ()))
        t = max(1, inst.max_threshold())
        assert solve_bounded(inst, 0, base, t) == frozenset()


def test_threshold_precondition():
    inst = complete_instance(3, 2)
    with pytest.raises(ValueError):
        solve_bounded(inst, 1, 1, 1)
    with pytest.raises(ValueError):
        solve_bounded(inst, -1, 1, 2)


def test_oracle_agreement_small_corpus():
    rng = random.Random(1001)
    for _ in range(150):
        n = rng.randint(1, 8)
        inst = rand_gnp_instance(rng, n, rng.randint(0, 3), p=rng.choice([0.25, 0.45, 0.65]))
        k, l = rng.randint(0, n), rng.randint(0, n)
        t = max(1, inst.max_threshold())
        expected = oracle_tss_decision(inst, k, l) is not None
        for gamma in (None, 0.0):
            got = solve_bounded(inst, k, l, t, gamma=gamma)
            assert (got is not None) == expected, (inst.thr, inst.graph.edges(), k, l, gamma)
            if got is not None:
                assert len(got) <= k
                assert len(closure(inst, got)) >= l


def test_reduction_rule_metamorphic():
    # disabling the free-exclusion reduction must not change feasibility
    rng = random.Random(555)
    for _ in range(60):
        n = rng.randint(1, 7)
        inst = rand_gnp_instance(rng, n, rng.randint(0, 3))
        k, l = rng.randint(0, n), rng.randint(0, n)
        t = max(1, inst.max_threshold())
        with_rule = solve_bounded(inst, k, l, t, gamma=0.0)
        without = solve_bounded(inst, k, l, t, gamma=0.0, apply_rr1=False)
        assert (with_rule is None) == (without is None)


def test_branch_rule_child_counts():
    rng = random.Random(17)
    seen_any = False
    for _ in range(40):
        inst = rand_gnp_instance(rng, rng.randint(4, 8), rng.randint(1, 3), p=0.5)
        stats = SolveStats()
        solve_bounded(inst, inst.n // 2, inst.n, max(1, inst.max_threshold()),
                      gamma=0.0, stats=stats)
        for thr_v, children in stats.br1_children:
            seen_any = True
            assert children == 2 ** (thr_v + 1) - thr_v - 1
    assert seen_any


def test_quota_branch_child_counts_and_pair_bound():
    rng = random.Random(18)
    seen_quota = False
    for _ in range(30):
        t = rng.randint(1, 3)
        inst = rand_gnp_instance(rng, rng.randint(5, 8), t, p=0.4)
        stats = SolveStats()
        solve_bounded(inst, inst.n // 2, inst.n, t, gamma=0.0, stats=stats)
        for thr_v, children in stats.quota_branches:
            seen_quota = True
            assert children == thr_v + 1
        for v, pairs in stats.pair_variants.items():
            assert all(d <= cap <= t for d, cap in pairs)
            assert len(pairs) <= math.comb(t + 2, 2)
    assert seen_quota


def _four_vertex_leaf_parts():
    # 0 excluded (thr 2), 1 selected, 2 and 3 free; only 0-1 and 0-2 edges
    inst = Instance(Graph(4, [(0, 1), (0, 2)]), (2, 0, 1, 1))
    state = SearchState(frozenset({1}), frozenset({0}), frozenset({2, 3}))
    return inst, state


def test_round_procedure_free_vertices_never_branch():
    inst, state = _four_vertex_leaf_parts()
    ctx = _Ctx(frozenset())
    projected = frozenset({0, 1})
    # free vertex with threshold met: activated without any branching
    assert is_activated_round(inst, state, projected, 2, ctx) is True
    # free vertex short of its threshold: not activated, again no branching
    inst2 = Instance(inst.graph, (2, 0, 2, 1))
    assert is_activated_round(inst2, state, projected, 2, ctx) is False


def test_round_procedure_excluded_vertex_branches_on_quota():
    inst, state = _four_vertex_leaf_parts()
    projected = frozenset({1})
    with pytest.raises(DecisionNeeded) as need:
        is_activated_round(inst, state, projected, 0, _Ctx(frozenset()))
    assert need.value.kind == "quota"
    assert need.value.choices == (0, 1, 2)
    # promised one hidden selected neighbor: 1 exact + 1 promised meets thr 2
    assert is_activated_round(inst, state, projected, 0, _Ctx(frozenset(), {0: 1})) is True
    # promised none: stays below threshold, no undecided neighbors to consult
    assert is_activated_round(inst, state, projected, 0, _Ctx(frozenset(), {0: 0})) is False
    # each subbranch matches the true process for a selection realizing the promise
    assert 0 in closure(inst, {1, 2})   # |N(0) ∩ B| = 1 realizes promise 1
    assert 0 not in closure(inst, {1})  # promise 0


def test_round_procedure_membership_branch():
    # excluded vertex 0 needs 3 activated neighbors: one exact (selected 1),
    # one promised, and the projected free neighbor 2 only if it is not hidden
    inst = Instance(Graph(5, [(0, 1), (0, 2), (0, 4)]), (3, 0, 1, 1, 1))
    state = SearchState(frozenset({1}), frozenset({0}), frozenset({2, 3, 4}))
    projected = frozenset({1, 2})
    ctx = _Ctx(frozenset(), {0: 1})
    with pytest.raises(DecisionNeeded) as need:
        is_activated_round(inst, state, projected, 0, ctx)
    assert need.value.kind == "member" and need.value.vertex == 2
    assert is_activated_round(
        inst, state, projected, 0, _Ctx(frozenset(), {0: 1}, {2: False})
    ) is True
    assert is_activated_round(
        inst, state, projected, 0, _Ctx(frozenset(), {0: 1}, {2: True})
    ) is False


def test_dp_base_row_immediately_feasible():
    inst = Instance(Graph(2, [(0, 1)]), (0, 5))
    state = SearchState(frozenset({0}), frozenset(), frozenset({1}))
    leaf = BranchLeaf(inst, state, frozenset(), {}, {}, frozenset({0}))
    assert stage3_dp(leaf, 2, 1) == frozenset()


def test_dp_forced_pick_meets_promise():
    # excluded vertex 0 promised one hidden neighbor; vertex 1 is its only candidate
    inst = Instance(Graph(3, [(0, 1)]), (1, 5, 0))
    state = SearchState(frozenset({2}), frozenset({0}), frozenset({1}))
    leaf = BranchLeaf(inst, state, frozenset(), {0: 1}, {}, frozenset({0, 2}))
    assert stage3_dp(leaf, 3, 2) == frozenset({1})


def test_dp_infeasible_promise():
    inst = Instance(Graph(3, [(0, 1)]), (2, 5, 0))
    state = SearchState(frozenset({2}), frozenset({0}), frozenset({1}))
    leaf = BranchLeaf(inst, state, frozenset(), {0: 2}, {}, frozenset({2}))
    assert stage3_dp(leaf, 3, 0) is None


def test_projected_set_describes_activation_outside_hidden_selection():
    # for every explored leaf and every selection consistent with its record,
    # the projected set and the true activated set agree off the selection
    rng = random.Random(909)
    checked = 0
    for _ in range(40):
        n = rng.randint(4, 7)
        inst = rand_gnp_instance(rng, n, rng.randint(1, 3), p=0.45)
        t = max(1, inst.max_threshold())
        leaves: list[BranchLeaf] = []
        solve_bounded(inst, n, n + 1, t, gamma=0.0, leaf_sink=leaves)
        nbr = inst.graph.neighbor_sets()
        for leaf in leaves[:40]:
            free = leaf.state.free
            fixed_in = leaf.cover | {u for u, b in leaf.membership.items() if b}
            fixed_out = {u for u, b in leaf.membership.items() if not b}
            rest = sorted(free - fixed_in - fixed_out)
            sub_g, ids = inst.graph.induced(free)
            to_local = {old: new for new, old in enumerate(ids)}
            cover_local = frozenset(to_local[v] for v in leaf.cover)
            cover_edges = covered_edges(sub_g, cover_local)
            for _ in range(12):
                b = set(fixed_in) | {u for u in rest if rng.random() < 0.5}
                if covered_edges(sub_g, frozenset(to_local[v] for v in b)) != cover_edges:
                    continue
                if any(
                    min(len(nbr[v] & b), inst.thr[v]) != q
                    for v, q in leaf.quota.items()
                ):
                    continue
                checked += 1
                full = closure(inst, leaf.state.selected | b)
                assert leaf.projected - b == full - b, (
                    inst.graph.edges(), inst.thr, sorted(b), leaf)
    assert checked > 100
