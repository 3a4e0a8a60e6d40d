"""Exact solver: values, invariants, head analysis, strategy extraction."""

from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lcsgame.engine import (
    CONNECTED,
    PLAIN,
    BudgetExceededError,
    GameConfig,
    Player,
    SkipBudget,
    TargetSet,
    apply_move,
    legal_moves,
    play_match,
    score,
    verify_strategy_exhaustive,
)
from lcsgame.generators import random_connected_gnm
from lcsgame.graphs import (
    CapacityError,
    Graph,
    bits,
    components,
    delete_edge,
    delete_vertices,
    induced,
    mask_of,
)
from lcsgame.solver import (
    analyze_head,
    can_force_cds_within,
    cg,
    is_a_perfect,
)

from oracles import naive_cg, naive_cg_connected, naive_cg_target


def cycle(n):
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n):
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete(n):
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def king2(m):
    edges = []
    for j in range(m):
        edges.append((2 * j, 2 * j + 1))
        if j + 1 < m:
            for a in (0, 1):
                for b in (0, 1):
                    edges.append((2 * j + a, 2 * (j + 1) + b))
    return Graph.from_edges(2 * m, edges)


class TestKnownValues:
    def test_c5(self):
        assert cg(cycle(5)).value == 2

    def test_k5_a_perfect(self):
        assert cg(complete(5)).value == 3

    def test_three_k5_copies(self):
        g = Graph.from_edges(15, [(5 * a + i, 5 * a + j) for a in range(3)
                                  for i in range(5) for j in range(i + 1, 5)])
        assert cg(g).value == 3

    def test_king_grid_p2xp4(self):
        assert cg(king2(4)).value == 4

    def test_connected_king_grid_p2xp6(self):
        res = cg(king2(6), CONNECTED)
        assert res.value <= 6

    def test_single_vertex_and_empty(self):
        assert cg(Graph.from_edges(1, [])).value == 1
        assert cg(Graph.from_edges(0, [])).value == 0

    def test_capacity_error(self):
        with pytest.raises(CapacityError):
            cg(Graph.from_edges(65, []))

    def test_budget_error_distinct(self):
        with pytest.raises(BudgetExceededError):
            cg(cycle(10), max_states=2)


class TestNaiveOracleEquivalence:
    @given(st.data())
    @settings(max_examples=60, deadline=None)
    def test_plain_matches_naive(self, data):
        n = data.draw(st.integers(min_value=1, max_value=6))
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        edges = data.draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
        g = Graph.from_edges(n, edges)
        assert cg(g).value == naive_cg(g)

    @given(st.data())
    @settings(max_examples=40, deadline=None)
    def test_connected_matches_naive(self, data):
        n = data.draw(st.integers(min_value=1, max_value=6))
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        edges = data.draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
        g = Graph.from_edges(n, edges)
        assert cg(g, CONNECTED).value == naive_cg_connected(g)

    @given(st.data())
    @settings(max_examples=40, deadline=None)
    def test_target_matches_naive(self, data):
        n = data.draw(st.integers(min_value=1, max_value=5))
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        edges = data.draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
        g = Graph.from_edges(n, edges)
        x = data.draw(st.integers(min_value=0, max_value=g.full_mask))
        x_set = {v for v in range(n) if x >> v & 1}
        assert cg(g, TargetSet(x)).value == naive_cg_target(g, x_set)


class TestStructuralInvariants:
    def test_bounds_small_connected(self):
        rng = random.Random(11)
        for _ in range(40):
            n = rng.randint(2, 10)
            g = random_connected_gnm(n, rng.randint(n - 1, n * (n - 1) // 2), rng)
            v = cg(g).value
            assert g.max_degree // 2 + 1 <= v <= (g.n + 1) // 2

    def test_monotone_under_vertex_deletion(self):
        rng = random.Random(12)
        for _ in range(15):
            n = rng.randint(3, 9)
            g = random_connected_gnm(n, rng.randint(n - 1, n * (n - 1) // 2), rng)
            base = cg(g).value
            v = rng.randrange(n)
            assert cg(delete_vertices(g, 1 << v)).value <= base

    def test_monotone_under_edge_deletion(self):
        rng = random.Random(13)
        for _ in range(15):
            n = rng.randint(3, 9)
            g = random_connected_gnm(n, rng.randint(n, n * (n - 1) // 2), rng)
            base = cg(g).value
            u, w = g.edges()[rng.randrange(g.edge_count)]
            assert cg(delete_edge(g, u, w)).value <= base

    def test_component_rule(self):
        rng = random.Random(14)
        for _ in range(15):
            n = rng.randint(4, 12)
            m = rng.randint(0, max(0, n * (n - 1) // 2 - 2 * n))
            all_edges = [(i, j) for i in range(n) for j in range(i + 1, n)]
            g = Graph.from_edges(n, rng.sample(all_edges, min(m, len(all_edges))))
            whole = cg(g, split_components=False).value
            split = cg(g).value
            per_comp = max(cg(induced(g, c)[0]).value for c in components(g))
            assert whole == split == per_comp

    def test_disconnected_a_perfect_structure(self):
        # every disconnected A-perfect graph found: even order, two
        # components, one a singleton
        rng = random.Random(15)
        found = 0
        for _ in range(300):
            n = rng.randint(2, 9)
            all_edges = [(i, j) for i in range(n) for j in range(i + 1, n)]
            m = rng.randint(0, len(all_edges))
            g = Graph.from_edges(n, rng.sample(all_edges, m))
            comps = components(g)
            if len(comps) < 2:
                continue
            if is_a_perfect(g):
                found += 1
                assert g.n % 2 == 0
                assert len(comps) == 2
                assert min(c.bit_count() for c in comps) == 1
        assert found > 0

    def test_connected_variant_dominated_by_plain(self):
        rng = random.Random(16)
        for _ in range(25):
            n = rng.randint(2, 9)
            g = random_connected_gnm(n, rng.randint(n - 1, n * (n - 1) // 2), rng)
            assert cg(g, CONNECTED).value <= cg(g).value


class TestAPerfect:
    def test_subdivided_star(self):
        g = Graph.from_edges(6, [(0, 2), (0, 3), (0, 4), (0, 5), (5, 1)])
        assert is_a_perfect(g)

    def test_two_cliques_joined_by_edge(self):
        edges = [(i, j) for i in range(3) for j in range(i + 1, 3)]
        edges += [(3 + i, 3 + j) for i in range(3) for j in range(i + 1, 3)]
        edges.append((0, 3))
        assert not is_a_perfect(Graph.from_edges(6, edges))

    def test_triangle_plus_isolated_vertex(self):
        g = Graph.from_edges(4, [(0, 1), (1, 2), (0, 2)])
        assert is_a_perfect(g)


class TestForcingCds:
    def test_k5_one_round(self):
        assert can_force_cds_within(complete(5), 1)

    def test_p5_needs_more_than_one(self):
        assert not can_force_cds_within(path(5), 1)

    def test_dense_graph_four_rounds(self):
        rng = random.Random(17)
        for _ in range(10):
            n = 8
            m = rng.randint((6 * 5) // 2 + 3, n * (n - 1) // 2)
            g = random_connected_gnm(n, m, rng)
            assert can_force_cds_within(g, 4)

    def test_cds_forcing_implies_a_perfect(self):
        rng = random.Random(18)
        for _ in range(25):
            n = rng.randint(2, 9)
            g = random_connected_gnm(n, rng.randint(n - 1, n * (n - 1) // 2), rng)
            for r in range(1, (n + 1) // 2 + 1):
                if can_force_cds_within(g, r):
                    assert is_a_perfect(g)
                    break

    def test_r_validation(self):
        with pytest.raises(ValueError):
            can_force_cds_within(path(3), 0)


class TestHeadAnalysis:
    def test_k2_both_targets(self):
        h = analyze_head(Graph.from_edges(2, [(0, 1)]), 0b11)
        assert h.c_star == 1

    def test_single_vertex(self):
        h = analyze_head(Graph.from_edges(1, []), 0b1)
        assert h.c_star == 1
        assert not h.exists_sa2

    def test_never_both_flags(self):
        for hn in (1, 2, 3):
            pairs = list(itertools.combinations(range(hn), 2))
            for em in range(1 << len(pairs)):
                edges = [e for i, e in enumerate(pairs) if em >> i & 1]
                g = Graph.from_edges(hn, edges)
                for km in range(1, 1 << hn):
                    h = analyze_head(g, km)
                    assert not (h.exists_sa2 and h.exists_sb2)

    def test_strict_toggle_exists(self):
        g = Graph.from_edges(2, [(0, 1)])
        a = analyze_head(g, 0b11, strict_pass_rule=True)
        b = analyze_head(g, 0b11, strict_pass_rule=False)
        assert a.c_star == b.c_star

    def test_target_outside_head_rejected(self):
        with pytest.raises(ValueError):
            analyze_head(Graph.from_edges(1, []), 0b10)


class TestResultArtifacts:
    def test_pv_replays_to_value(self):
        for g in (cycle(5), complete(5), king2(3), path(6)):
            res = cg(g)
            cfg = GameConfig()
            for move in res.principal_variation:
                cfg = apply_move(cfg, cfg.mover(), move)
            assert score(g, PLAIN, cfg.red) == res.value

    def test_pv_on_disconnected_graph_covers_decisive_component(self):
        g = Graph.from_edges(7, [(0, 1), (1, 2), (0, 2),
                                 (3, 4), (4, 5), (5, 6), (6, 3)])
        res = cg(g)
        cfg = GameConfig()
        for move in res.principal_variation:
            cfg = apply_move(cfg, cfg.mover(), move)
        assert score(g, PLAIN, cfg.red) == res.value == 2

    def test_extracted_strategies_are_optimal(self):
        for g in (cycle(5), complete(4), king2(3)):
            res = cg(g)
            alice = res.alice_strategy()
            bob = res.bob_strategy()
            assert verify_strategy_exhaustive(g, PLAIN, alice,
                                              Player.ALICE) == res.value
            assert verify_strategy_exhaustive(g, PLAIN, bob,
                                              Player.BOB) == res.value
            trace = play_match(g, PLAIN, alice, bob)
            assert trace.score == res.value

    def test_states_expanded_positive(self):
        assert cg(cycle(5)).states_expanded > 0

    def test_skip_variant_solvable(self):
        g = complete(3)
        res = cg(g, SkipBudget(1, 1, g.full_mask))
        assert 0 <= res.value <= 3


class TestConsistencyKnobs:
    def test_pruned_equals_unpruned(self):
        rng = random.Random(19)
        for _ in range(20):
            n = rng.randint(2, 8)
            all_edges = [(i, j) for i in range(n) for j in range(i + 1, n)]
            g = Graph.from_edges(n, rng.sample(all_edges,
                                               rng.randint(0, len(all_edges))))
            assert cg(g, use_pruning=True).value == cg(g, use_pruning=False).value

    def test_threads_equal_single(self):
        rng = random.Random(20)
        for _ in range(10):
            n = rng.randint(3, 9)
            g = random_connected_gnm(n, rng.randint(n - 1, n * (n - 1) // 2), rng)
            assert cg(g, threads=1).value == cg(g, threads=3).value

    def test_initial_position_solving(self):
        g = complete(4)
        res = cg(g, initial=GameConfig(red=1, blue=2))
        assert res.value == 2


class TestConnectedVariantEndings:
    def test_score_at_block_equals_board_filling_reading(self):
        # whether Bob keeps colouring after Alice is blocked cannot change
        # the value: his extra moves never touch the red set and Alice's
        # legal set only shrinks; checked against an oracle that fills the
        # board before scoring
        from functools import lru_cache
        rng = random.Random(23)
        for _ in range(15):
            n = rng.randint(2, 6)
            g = random_connected_gnm(n, rng.randint(n - 1, n * (n - 1) // 2), rng)
            adj = {v: {w for w in range(n) if g.adj[v] >> w & 1} for v in range(n)}
            everything = frozenset(range(n))

            @lru_cache(maxsize=None)
            def fill_value(red: frozenset, blue: frozenset, blocked: bool):
                free = everything - red - blue
                alice = (not blocked) and len(red) == len(blue)
                if alice:
                    moves = ({v for v in free if any(w in red for w in adj[v])}
                             if red else free)
                    if not moves:
                        # Alice blocked: Bob fills the rest, score unchanged
                        return fill_value(red, blue | free, True)
                    return max(fill_value(red | {v}, blue, False) for v in moves)
                if not free:
                    from oracles import naive_score_plain
                    return naive_score_plain(g, set(red))
                return min(fill_value(red, blue | {v}, blocked) for v in free)

            assert cg(g, CONNECTED).value == fill_value(frozenset(), frozenset(), False)
            fill_value.cache_clear()


class TestHeadAnalysisToggle:
    def test_invariant_holds_under_both_pass_rules(self):
        for hn in (1, 2, 3):
            pairs = list(itertools.combinations(range(hn), 2))
            for em in range(1 << len(pairs)):
                edges = [e for i, e in enumerate(pairs) if em >> i & 1]
                g = Graph.from_edges(hn, edges)
                for km in range(1, 1 << hn):
                    strict = analyze_head(g, km, strict_pass_rule=True)
                    loose = analyze_head(g, km, strict_pass_rule=False)
                    assert strict.c_star == loose.c_star
                    assert not (loose.exists_sa2 and loose.exists_sb2)
