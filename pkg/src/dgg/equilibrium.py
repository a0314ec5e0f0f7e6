"""Nash equilibria in pure stationary strategies.

is_ne / improving_players work straight off the definition (replace one
strategy, replay, compare). all_ne and the brute-force profile search run on
the tabulated normal form with per-cell deviation-outcome bitmasks, which
keeps them independent of the SAT encoding they are checked against.
"""

from __future__ import annotations

import itertools
from typing import Iterator

from .errors import NoNEFound, NoTerminalReachable, PreconditionFailed
from .game import (
    DEFAULT_CELL_CAP,
    GameStructure,
    NormalForm,
    OutcomeSet,
    Strategy,
    StrategyProfile,
    build_outcomes,
    normal_form,
    outcome_of,
    strategies,
)
from .graph import Digraph
from .prefs import Preference, PreferenceProfile, cnd_c0, profile_by_index, profile_count

DEFAULT_WORK_CAP = 1_000_000_000


def improving_players(
    gs: GameStructure, os: OutcomeSet, pp: PreferenceProfile, x: StrategyProfile
) -> dict[int, Strategy]:
    """Players with an improving deviation from x, each with the
    lexicographically first strategy that improves their outcome."""
    current = outcome_of(gs, os, x).label
    out: dict[int, Strategy] = {}
    for i in range(1, gs.players + 1):
        pref = pp.for_player(i)
        cur_rank = pref.rank(current)
        for s in strategies(gs, i):
            alt = outcome_of(gs, os, x.replace(s)).label
            if pref.rank(alt) < cur_rank:
                out[i] = s
                break
    return out


def is_ne(
    gs: GameStructure, os: OutcomeSet, pp: PreferenceProfile, x: StrategyProfile
) -> bool:
    """True when no player can improve their outcome by a unilateral switch."""
    current = outcome_of(gs, os, x).label
    for i in range(1, gs.players + 1):
        pref = pp.for_player(i)
        cur_rank = pref.rank(current)
        for s in strategies(gs, i):
            alt = outcome_of(gs, os, x.replace(s)).label
            if pref.rank(alt) < cur_rank:
                return False
    return True


def deviation_masks(nf: NormalForm) -> list[list[int]]:
    """Per player, per flat cell: bitmask over outcome indices reachable by a
    unilateral deviation and different from the cell's own outcome."""
    total = len(nf.cells)
    cells = nf.cells
    out = []
    for i in range(len(nf.shape)):
        st = nf.strides[i]
        block = st * nf.shape[i]
        masks = [0] * total
        for outer in range(0, total, block):
            for inner in range(st):
                line = range(outer + inner, outer + inner + block, st)
                acc = 0
                for f in line:
                    acc |= 1 << cells[f]
                for f in line:
                    masks[f] = acc & ~(1 << cells[f])
        out.append(masks)
    return out


def better_masks(os: OutcomeSet, pref: Preference) -> list[int]:
    """Per outcome index: bitmask of the outcomes this player strictly prefers."""
    index = {label: k for k, label in enumerate(os.labels)}
    b = [0] * len(os)
    acc = 0
    for label in pref.order:
        w = index[label]
        b[w] = acc
        acc |= 1 << w
    return b


def _ne_cells(nf: NormalForm, pp: PreferenceProfile, start: int, stop: int) -> list[int]:
    dev = deviation_masks(nf)
    better = [better_masks(nf.outcome_set, p) for p in pp.preferences]
    cells = nf.cells
    n = len(nf.shape)
    hits = []
    for f in range(start, stop):
        w = cells[f]
        for i in range(n):
            if dev[i][f] & better[i][w]:
                break
        else:
            hits.append(f)
    return hits


def _ne_chunk_worker(args):
    gs, os, pp, start, stop, cap = args
    nf = normal_form(gs, os, cap=cap)
    return _ne_cells(nf, pp, start, stop)


def _chunks(total: int, jobs: int) -> list[tuple[int, int]]:
    jobs = max(1, min(jobs, total)) if total else 1
    step, extra = divmod(total, jobs)
    bounds = []
    lo = 0
    for j in range(jobs):
        hi = lo + step + (1 if j < extra else 0)
        bounds.append((lo, hi))
        lo = hi
    return bounds


def all_ne(
    gs: GameStructure,
    os: OutcomeSet,
    pp: PreferenceProfile,
    nf: NormalForm | None = None,
    cap: int = DEFAULT_CELL_CAP,
    jobs: int = 1,
) -> list[StrategyProfile]:
    """Every NE profile, in lexicographic profile order."""
    if nf is None:
        nf = normal_form(gs, os, cap=cap)
    if jobs > 1:
        import multiprocessing

        parts = _chunks(len(nf.cells), jobs)
        with multiprocessing.Pool(len(parts)) as pool:
            results = pool.map(
                _ne_chunk_worker, [(gs, os, pp, lo, hi, cap) for lo, hi in parts]
            )
        hits = [f for part in results for f in part]
    else:
        hits = _ne_cells(nf, pp, 0, len(nf.cells))
    return [nf.profile_at(f) for f in hits]


def _stuck_bitsets(nf: NormalForm, player: int) -> list[int]:
    """For each preference permutation of this player (lexicographic order):
    a bitset over cells where the player has no improving deviation."""
    k = len(nf.outcome_set)
    dev = deviation_masks(nf)[player - 1]
    cells = nf.cells
    total = len(cells)
    out = []
    for perm in itertools.permutations(range(k)):
        better = [0] * k
        acc = 0
        for w in perm:
            better[w] = acc
            acc |= 1 << w
        z = 0
        for f in range(total):
            if not dev[f] & better[cells[f]]:
                z |= 1 << f
        out.append(z)
    return out


def _ne_free_indices(
    zsets: list[list[int]], all_cells: int, start: int, stop: int
) -> Iterator[int]:
    """Profile indices (player-major mixed radix over permutation indices)
    whose players' stuck-bitsets AND to zero, i.e. no cell is an NE."""
    n = len(zsets)
    base = len(zsets[0])
    if stop <= start:
        return
    digits = [0] * n
    rem = start
    for i in range(n - 1, -1, -1):
        digits[i] = rem % base
        rem //= base
    partial = [all_cells] * (n + 1)

    def recompute(i: int) -> None:
        for j in range(i, n):
            partial[j + 1] = partial[j] & zsets[j][digits[j]]

    recompute(0)
    for m in range(start, stop):
        if partial[n] == 0:
            yield m
        i = n - 1
        while i >= 0:
            digits[i] += 1
            if digits[i] < base:
                break
            digits[i] = 0
            i -= 1
        if i < 0:
            return
        recompute(i)


def _check_work_cap(gs: GameStructure, os: OutcomeSet, nf: NormalForm, cap: int) -> int:
    total = profile_count(os, gs.players)
    if total * len(nf.cells) > cap:
        raise PreconditionFailed(
            f"brute force needs {total} profiles x {len(nf.cells)} cells, cap is {cap}"
        )
    return total


def _brute_chunk_worker(args):
    gs, os, start, stop, cell_cap, count_only = args
    nf = normal_form(gs, os, cap=cell_cap)
    zsets = [_stuck_bitsets(nf, i) for i in range(1, gs.players + 1)]
    all_cells = (1 << len(nf.cells)) - 1
    it = _ne_free_indices(zsets, all_cells, start, stop)
    return sum(1 for _ in it) if count_only else list(it)


def iter_ne_free_profiles(
    gs: GameStructure,
    os: OutcomeSet,
    cap: int = DEFAULT_WORK_CAP,
    cell_cap: int = DEFAULT_CELL_CAP,
) -> Iterator[PreferenceProfile]:
    """NE-free preference profiles in enumeration order, evaluated directly
    on the normal form (no SAT machinery involved)."""
    nf = normal_form(gs, os, cap=cell_cap)
    total = _check_work_cap(gs, os, nf, cap)
    zsets = [_stuck_bitsets(nf, i) for i in range(1, gs.players + 1)]
    all_cells = (1 << len(nf.cells)) - 1
    for m in _ne_free_indices(zsets, all_cells, 0, total):
        yield profile_by_index(os, gs.players, m)


def brute_force_ne_free_profiles(
    gs: GameStructure,
    os: OutcomeSet,
    cap: int = DEFAULT_WORK_CAP,
    cell_cap: int = DEFAULT_CELL_CAP,
    jobs: int = 1,
) -> list[PreferenceProfile]:
    """All preference profiles under which the game has no NE at all."""
    if jobs <= 1:
        return list(iter_ne_free_profiles(gs, os, cap=cap, cell_cap=cell_cap))
    nf = normal_form(gs, os, cap=cell_cap)
    total = _check_work_cap(gs, os, nf, cap)
    indices = _run_brute_chunks(gs, os, total, cell_cap, jobs, count_only=False)
    return [profile_by_index(os, gs.players, m) for m in indices]


def count_ne_free_profiles(
    gs: GameStructure,
    os: OutcomeSet,
    cap: int = DEFAULT_WORK_CAP,
    cell_cap: int = DEFAULT_CELL_CAP,
    jobs: int = 1,
) -> int:
    nf = normal_form(gs, os, cap=cell_cap)
    total = _check_work_cap(gs, os, nf, cap)
    if jobs <= 1:
        zsets = [_stuck_bitsets(nf, i) for i in range(1, gs.players + 1)]
        all_cells = (1 << len(nf.cells)) - 1
        return sum(1 for _ in _ne_free_indices(zsets, all_cells, 0, total))
    return _run_brute_chunks(gs, os, total, cell_cap, jobs, count_only=True)


def _run_brute_chunks(gs, os, total, cell_cap, jobs, count_only):
    import multiprocessing

    parts = _chunks(total, jobs)
    args = [(gs, os, lo, hi, cell_cap, count_only) for lo, hi in parts]
    with multiprocessing.Pool(len(parts)) as pool:
        results = pool.map(_brute_chunk_worker, args)
    if count_only:
        return sum(results)
    return [m for part in results for m in part]


def _terminal_label(gs: GameStructure, os: OutcomeSet, terminal: str) -> str:
    return os.of_component(os.decomposition.component_of(terminal)).label


def _kept_edges(gs: GameStructure, os: OutcomeSet, pp: PreferenceProfile) -> list[int]:
    """Edge indices surviving the dominated-terminal-move deletion."""
    drop: set[int] = set()
    for v in gs.positions:
        edges = gs.graph.out_edges(v)
        term_edges = [e for e in edges if gs.graph.head(e) in gs.terminals]
        if len(term_edges) < 2:
            continue
        pref = pp.for_player(gs.owner[v])
        best = min(
            term_edges, key=lambda e: (pref.rank(_terminal_label(gs, os, gs.graph.head(e))), e)
        )
        drop.update(e for e in term_edges if e != best)
    return [e for e in range(len(gs.graph.edges)) if e not in drop]


def delete_bad_terminal_moves(
    gs: GameStructure, pp: PreferenceProfile, os: OutcomeSet | None = None
) -> GameStructure:
    """At every position with several direct moves to terminals, keep only
    the move to the owner's most preferred one. SCCs and outcomes are
    unchanged; an NE of the result is an NE of the original."""
    if os is None:
        os = build_outcomes(gs)
    kept = _kept_edges(gs, os, pp)
    g2 = Digraph(gs.graph.vertices, tuple(gs.graph.edges[e] for e in kept))
    return GameStructure(
        graph=g2,
        players=gs.players,
        owner=gs.owner,
        terminals=gs.terminals,
        initial=gs.initial,
    )


def is_play_once(gs: GameStructure) -> bool:
    """True when every player owns exactly one position."""
    counts = [0] * gs.players
    for v, i in gs.owner.items():
        if 1 <= i <= gs.players:
            counts[i - 1] += 1
    return all(c == 1 for c in counts)


def construct_ne_play_once_c0(
    gs: GameStructure,
    os: OutcomeSet,
    pp: PreferenceProfile,
    cap: int = DEFAULT_CELL_CAP,
) -> StrategyProfile:
    """Equilibrium for a play-once game whose players all rank terminals
    above cyclic outcomes.

    Recipe: drop dominated terminal moves, aim every on-path position along
    a BFS-shortest play to a terminal (ties by input order), point off-path
    positions at their first non-terminal move (else their single remaining
    terminal move). The result is verified; if it fails, fall back to the
    first NE by exhaustive scan, and raise NoNEFound when there is none.
    """
    if not is_play_once(gs):
        raise PreconditionFailed("game is not play-once")
    if not cnd_c0(os, pp):
        raise PreconditionFailed("some player ranks a cyclic outcome above a terminal")

    kept = set(_kept_edges(gs, os, pp))
    g = gs.graph

    # BFS over kept edges for the closest terminal, ties by discovery order
    parent: dict[str, int] = {}
    seen = {gs.initial}
    queue = [gs.initial]
    found: str | None = None
    while queue and found is None:
        nxt = []
        for v in queue:
            for e in g.out_edges(v):
                if e not in kept:
                    continue
                w = g.head(e)
                if w in seen:
                    continue
                seen.add(w)
                parent[w] = e
                if w in gs.terminals:
                    found = w
                    break
                nxt.append(w)
            if found:
                break
        queue = nxt
    if found is None:
        raise NoTerminalReachable("no terminal vertex is reachable from the initial position")

    on_path: dict[str, int] = {}
    v = found
    while v != gs.initial:
        e = parent[v]
        on_path[g.tail(e)] = e
        v = g.tail(e)

    parts = []
    for i in range(1, gs.players + 1):
        (pos,) = gs.positions_of(i)
        if pos in on_path:
            choice = on_path[pos]
        else:
            options = [e for e in g.out_edges(pos) if e in kept]
            non_terminal = [e for e in options if g.head(e) not in gs.terminals]
            choice = non_terminal[0] if non_terminal else options[0]
        parts.append(Strategy(player=i, moves=((pos, choice),)))
    x = StrategyProfile(tuple(parts))

    if is_ne(gs, os, pp, x):
        return x
    fallback = all_ne(gs, os, pp, cap=cap)
    if fallback:
        return fallback[0]
    raise NoNEFound("play-once construction failed and no NE exists")
