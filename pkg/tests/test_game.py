"""Game structures, strategies, plays, outcomes, and the normal form."""

import random

import pytest

from dgg import (
    CapExceeded,
    Digraph,
    GameStructure,
    OutcomeKind,
    Play,
    Strategy,
    StrategyProfile,
    build_outcomes,
    counterexample_game,
    format_profile,
    format_strategy,
    normal_form,
    outcome_of,
    play,
    scc_decompose,
    strategies,
    validate,
)
from helpers import random_game


def two_cycle_game() -> GameStructure:
    g = Digraph(("s", "v"), (("s", "v"), ("v", "s")))
    return GameStructure(
        graph=g, players=2, owner={"s": 1, "v": 2}, terminals=frozenset(), initial="s"
    )


def profile_by_successors(gs, choques: dict[int, dict[str, str]]) -> StrategyProfile:
    return StrategyProfile(
        tuple(
            Strategy.from_successors(gs, i, choques.get(i, {}))
            for i in range(1, gs.players + 1)
        )
    )


def test_validate_accepts_the_counterexample_game():
    assert validate(counterexample_game()) == []


def test_validate_flags_dead_end():
    g = Digraph(("a", "b"), (("a", "b"),))
    gs = GameStructure(g, 1, {"a": 1, "b": 1}, frozenset(), "a")
    assert any(i.code == "DeadEnd" and i.subject == "b" for i in validate(gs))


def test_validate_flags_terminal_with_out_edge():
    g = Digraph(("a", "t"), (("a", "t"), ("t", "a")))
    gs = GameStructure(g, 1, {"a": 1}, frozenset({"t"}), "a")
    assert any(i.code == "TerminalWithOutEdge" for i in validate(gs))


def test_validate_flags_missing_owner():
    g = Digraph(("a", "b", "t"), (("a", "b"), ("b", "t")))
    gs = GameStructure(g, 1, {"a": 1}, frozenset({"t"}), "a")
    assert any(i.code == "MissingOwner" and i.subject == "b" for i in validate(gs))


def test_validate_flags_initial_terminal_and_unknowns():
    g = Digraph(("a", "t"), (("a", "t"),))
    gs = GameStructure(g, 1, {"a": 1, "z": 1}, frozenset({"t"}), "t")
    codes = {i.code for i in validate(gs)}
    assert "InitialIsTerminal" in codes
    assert "UnknownVertex" in codes


def test_validate_flags_owned_terminal_and_unknown_player():
    g = Digraph(("a", "t"), (("a", "t"),))
    gs = GameStructure(g, 1, {"a": 3, "t": 1}, frozenset({"t"}), "a")
    codes = {i.code for i in validate(gs)}
    assert "OwnedTerminal" in codes
    assert "UnknownPlayer" in codes


def test_build_outcomes_counterexample():
    gs = counterexample_game()
    os = build_outcomes(gs)
    assert os.labels == ("c1", "c2", "c3", "a1", "a2")
    assert [o.kind for o in os.outcomes] == [
        OutcomeKind.CYCLIC,
        OutcomeKind.CYCLIC,
        OutcomeKind.CYCLIC,
        OutcomeKind.TERMINAL,
        OutcomeKind.TERMINAL,
    ]
    d = os.decomposition
    by_label = {o.label: o for o in os.outcomes}
    assert d.components[by_label["c1"].components[0]] == ("u1", "u2")
    assert d.components[by_label["c2"].components[0]] == ("v1", "u3")
    assert d.components[by_label["c3"].components[0]] == ("v2", "v3")
    assert os.terminal_labels() == ("a1", "a2")
    assert os.cyclic_labels() == ("c1", "c2", "c3")


def test_build_outcomes_single_terminal_path():
    g = Digraph(("a", "b", "t"), (("a", "b"), ("b", "t")))
    gs = GameStructure(g, 1, {"a": 1, "b": 1}, frozenset({"t"}), "a")
    os = build_outcomes(gs)
    assert os.labels == ("t",)


def test_build_outcomes_two_vertex_cycle():
    os = build_outcomes(two_cycle_game())
    assert os.labels == ("c1",)
    assert os.outcomes[0].kind is OutcomeKind.CYCLIC


def test_strategy_counts_counterexample():
    gs = counterexample_game()
    assert len(strategies(gs, 1)) == 12
    assert len(strategies(gs, 2)) == 4
    assert len(strategies(gs, 3)) == 4


def test_strategies_lexicographic_order():
    gs = counterexample_game()
    first = strategies(gs, 1)[0]
    assert format_strategy(first, gs) == "s1->u2,u1->u2,v1->u3"
    last = strategies(gs, 1)[-1]
    assert format_strategy(last, gs) == "s1->v2,u1->v1,v1->v2"


def test_strategy_count_matches_outdegree_product_on_random_games():
    rng = random.Random(1311)
    for _ in range(100):
        gs = random_game(rng, players=2, max_positions=5)
        for i in (1, 2):
            expected = 1
            for v in gs.positions_of(i):
                expected *= len(gs.graph.out_edges(v))
            assert len(strategies(gs, i)) == expected


def test_playerless_player_has_one_empty_strategy():
    g = Digraph(("a", "t"), (("a", "t"),))
    gs = GameStructure(g, 2, {"a": 1}, frozenset({"t"}), "a")
    assert validate(gs) == []
    only = strategies(gs, 2)
    assert len(only) == 1 and only[0].moves == ()
    assert format_strategy(only[0], gs) == "-"


def test_play_lasso_first_subtable_cell():
    gs = counterexample_game()
    x = profile_by_successors(
        gs,
        {
            1: {"s1": "u2", "u1": "u2", "v1": "u3"},
            2: {"u2": "u1", "v2": "v3"},
            3: {"u3": "v1", "v3": "v2"},
        },
    )
    p = play(gs, x)
    assert p.prefix == ("s1",)
    assert p.cycle == ("u2", "u1")
    assert p.canonical_cycle() == ("u1", "u2")


def test_play_to_terminal():
    gs = counterexample_game()
    x = profile_by_successors(
        gs,
        {
            1: {"s1": "u2", "u1": "u2", "v1": "u3"},
            2: {"u2": "u3", "v2": "v3"},
            3: {"u3": "v3", "v3": "a2"},
        },
    )
    p = play(gs, x)
    assert p.is_terminal
    assert p.prefix == ("s1", "u2", "u3", "v3")
    assert p.terminal == "a2"


def test_play_direct_terminal_move():
    g = Digraph(("a", "t"), (("a", "t"),))
    gs = GameStructure(g, 1, {"a": 1}, frozenset({"t"}), "a")
    x = profile_by_successors(gs, {1: {"a": "t"}})
    p = play(gs, x)
    assert p.prefix == ("a",)
    assert p.terminal == "t"


def test_play_equality_is_rotation_invariant():
    p1 = Play(prefix=("s",), cycle=("b", "a"))
    p2 = Play(prefix=("s",), cycle=("a", "b"))
    p3 = Play(prefix=("s",), cycle=("b", "c"))
    assert p1 == p2 and hash(p1) == hash(p2)
    assert p1 != p3
    assert p1 != Play(prefix=("s", "x"), cycle=("a", "b"))


def test_play_requires_exactly_one_terminus():
    with pytest.raises(ValueError):
        Play(prefix=("s",))
    with pytest.raises(ValueError):
        Play(prefix=("s",), terminal="t", cycle=("a",))


def test_outcome_of_third_subtable_cell():
    gs = counterexample_game()
    os = build_outcomes(gs)
    x = profile_by_successors(
        gs,
        {
            1: {"s1": "u2", "u1": "u2", "v1": "v2"},
            2: {"u2": "u3", "v2": "v3"},
            3: {"u3": "v3", "v3": "v2"},
        },
    )
    p = play(gs, x)
    assert p.prefix == ("s1", "u2", "u3")
    assert p.canonical_cycle() == ("v2", "v3")
    assert outcome_of(gs, os, x).label == "c3"


def test_play_invariants_on_random_games():
    rng = random.Random(2718)
    for _ in range(200):
        gs = random_game(rng, players=2, max_positions=5)
        os = build_outcomes(gs)
        d = os.decomposition
        nf = normal_form(gs, os, cap=10_000)
        for f in nf.iter_flat():
            x = nf.profile_at(f)
            p = play(gs, x)
            n_cycle = 0 if p.cycle is None else len(p.cycle)
            assert len(p.prefix) + n_cycle <= len(gs.graph.vertices) + 1
            # prefix vertices are distinct and follow chosen edges
            assert len(set(p.prefix)) == len(p.prefix)
            if p.cycle is not None:
                assert len(set(p.cycle)) == len(p.cycle)
                comps = {d.component_of(v) for v in p.cycle}
                assert len(comps) == 1
            assert nf.outcome_at(f) is outcome_of(gs, os, x)
            assert nf.outcome_at(f).label in os.labels


def test_normal_form_counterexample_shape():
    gs = counterexample_game()
    os = build_outcomes(gs)
    nf = normal_form(gs, os)
    assert nf.shape == (12, 4, 4)
    assert len(nf.cells) == 192
    f = nf.flat_index((3, 1, 2))
    assert nf.unflatten(f) == (3, 1, 2)
    x = nf.profile_at(f)
    assert format_profile(x, gs).count("|") == 2


def test_normal_form_single_cell():
    gs = two_cycle_game()
    os = build_outcomes(gs)
    nf = normal_form(gs, os)
    assert nf.shape == (1, 1)
    assert os.labels[nf.cells[0]] == "c1"


def test_normal_form_cap():
    gs = counterexample_game()
    os = build_outcomes(gs)
    with pytest.raises(CapExceeded):
        normal_form(gs, os, cap=191)


def test_one_player_chain_table():
    g = Digraph(("a", "b", "t"), (("a", "b"), ("a", "t"), ("b", "t"), ("b", "a")))
    gs = GameStructure(g, 1, {"a": 1, "b": 1}, frozenset({"t"}), "a")
    os = build_outcomes(gs)
    nf = normal_form(gs, os)
    assert nf.shape == (4,)
    labels = [os.labels[c] for c in nf.cells]
    # strategies in lex order: (a->b,b->t), (a->b,b->a), (a->t,b->t), (a->t,b->a)
    assert labels == ["t", "c1", "t", "t"]


def test_scc_classes_drive_outcomes_on_random_games():
    rng = random.Random(515)
    for _ in range(200):
        gs = random_game(rng, players=2, max_positions=6, max_terminals=3)
        os = build_outcomes(gs)
        d = scc_decompose(gs.graph)
        non_transient = [j for j, c in enumerate(d.classes) if c.value != "transient"]
        assert len(os) == len(non_transient)
        assert len(set(os.labels)) == len(os.labels)
