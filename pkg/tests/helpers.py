"""Shared random generators and independent oracles for the test suite."""

from __future__ import annotations

import random
from functools import lru_cache

from dgg import (
    Digraph,
    GameStructure,
    OutcomeSet,
    Preference,
    PreferenceProfile,
    build_outcomes,
    reachable_from,
    validate,
)


def random_digraph(
    rng: random.Random,
    max_vertices: int = 8,
    edge_prob: float = 0.25,
    loops: bool = True,
) -> Digraph:
    n = rng.randint(1, max_vertices)
    vertices = tuple(f"n{i}" for i in range(n))
    edges = []
    for u in vertices:
        for v in vertices:
            if u == v and not loops:
                continue
            if rng.random() < edge_prob:
                edges.append((u, v))
    return Digraph(vertices, tuple(edges))


def reach_sets(g: Digraph) -> dict[str, set[str]]:
    out: dict[str, set[str]] = {}
    for start in g.vertices:
        seen = {start}
        frontier = [start]
        while frontier:
            v = frontier.pop()
            for w in g.successors(v):
                if w not in seen:
                    seen.add(w)
                    frontier.append(w)
        out[start] = seen
    return out


def brute_scc_partition(g: Digraph) -> set[frozenset[str]]:
    """Quadratic strong-connectivity oracle: mutual reachability classes."""
    reach = reach_sets(g)
    return {
        frozenset(u for u in g.vertices if u in reach[v] and v in reach[u])
        for v in g.vertices
    }


def random_game(
    rng: random.Random,
    players: int,
    max_positions: int = 5,
    max_terminals: int = 2,
    max_out: int = 3,
) -> GameStructure:
    """A random valid game: every position keeps at least one move."""
    lo = max(1, players if rng.random() < 0.8 else 1)
    n_pos = rng.randint(lo, max(lo, max_positions))
    n_term = rng.randint(0 if n_pos > 1 else 1, max_terminals)
    positions = [f"p{i}" for i in range(n_pos)]
    terminals = [f"t{i}" for i in range(n_term)]
    vertices = tuple(positions + terminals)
    owner = {}
    for i, v in enumerate(positions):
        # spread the first `players` positions around, then assign randomly
        owner[v] = (i % players) + 1 if i < players else rng.randint(1, players)
    edges = []
    for v in positions:
        targets = rng.sample(vertices, k=min(rng.randint(1, max_out), len(vertices)))
        edges.extend((v, w) for w in targets)
    gs = GameStructure(
        graph=Digraph(vertices, tuple(edges)),
        players=players,
        owner=owner,
        terminals=frozenset(terminals),
        initial=positions[0],
    )
    assert not validate(gs)
    return gs


def random_game_with_outcomes(
    rng: random.Random,
    players: int,
    max_positions: int,
    min_outcomes: int,
    max_outcomes: int,
    **kwargs,
) -> tuple[GameStructure, OutcomeSet]:
    while True:
        gs = random_game(rng, players, max_positions=max_positions, **kwargs)
        os = build_outcomes(gs)
        if min_outcomes <= len(os) <= max_outcomes:
            return gs, os


def random_play_once_game(
    rng: random.Random,
    max_positions: int = 6,
    max_terminals: int = 3,
    max_out: int = 3,
) -> GameStructure:
    """Each player owns exactly one position; a terminal is reachable from
    the initial position (the construction needs a terminal play to exist)."""
    while True:
        n = rng.randint(1, max_positions)
        positions = [f"p{i}" for i in range(n)]
        terminals = [f"t{i}" for i in range(rng.randint(1, max_terminals))]
        vertices = tuple(positions + terminals)
        edges = []
        for v in positions:
            targets = rng.sample(vertices, k=min(rng.randint(1, max_out), len(vertices)))
            edges.extend((v, w) for w in targets)
        gs = GameStructure(
            graph=Digraph(vertices, tuple(edges)),
            players=n,
            owner={v: i + 1 for i, v in enumerate(positions)},
            terminals=frozenset(terminals),
            initial=positions[0],
        )
        assert not validate(gs)
        if reachable_from(gs.graph, gs.initial) & gs.terminals:
            return gs


def random_profile(rng: random.Random, os, players: int) -> PreferenceProfile:
    prefs = []
    for i in range(1, players + 1):
        order = list(os.labels)
        rng.shuffle(order)
        prefs.append(Preference(i, tuple(order)))
    return PreferenceProfile(tuple(prefs))


def random_c0_profile(rng: random.Random, os, players: int) -> PreferenceProfile:
    """Random strict orders ranking every terminal above every cyclic outcome."""
    terms = list(os.terminal_labels())
    cyc = list(os.cyclic_labels())
    prefs = []
    for i in range(1, players + 1):
        rng.shuffle(terms)
        rng.shuffle(cyc)
        prefs.append(Preference(i, tuple(terms + cyc)))
    return PreferenceProfile(tuple(prefs))


@lru_cache(maxsize=32)
def _var_masks(num_vars: int) -> tuple[int, ...]:
    rows = 1 << num_vars
    masks = []
    for i in range(num_vars):
        ones = (1 << (1 << i)) - 1
        mask = ones << (1 << i)  # one period: low half 0s, high half 1s
        width = 1 << (i + 1)
        while width < rows:  # tile by doubling
            mask |= mask << width
            width <<= 1
        masks.append(mask)
    return tuple(masks)


def truth_table_models(num_vars: int, clauses) -> int:
    """Bit b of the result is 1 iff row-b assignment satisfies all clauses.

    Row b assigns variable i (1-based) true iff bit (i-1) of b is 1.
    """
    rows_mask = (1 << (1 << num_vars)) - 1
    masks = _var_masks(num_vars)
    formula = rows_mask
    for clause in clauses:
        value = 0
        for lit in clause:
            v = masks[abs(lit) - 1]
            value |= v if lit > 0 else (~v & rows_mask)
        formula &= value
        if not formula:
            break
    return formula


def truth_table_sat(num_vars: int, clauses) -> bool:
    return truth_table_models(num_vars, clauses) != 0


def truth_table_count(num_vars: int, clauses) -> int:
    return truth_table_models(num_vars, clauses).bit_count()


def random_cnf(
    rng: random.Random, max_vars: int = 20, max_clauses: int = 90
) -> tuple[int, list[list[int]]]:
    num_vars = rng.randint(1, max_vars)
    num_clauses = rng.randint(0, max_clauses)
    clauses = []
    for _ in range(num_clauses):
        width = rng.randint(1, 3)
        chosen = rng.sample(range(1, num_vars + 1), k=min(width, num_vars))
        clauses.append([v if rng.random() < 0.5 else -v for v in chosen])
    return num_vars, clauses
