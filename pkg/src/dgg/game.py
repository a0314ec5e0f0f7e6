"""Game structures on digraphs, plays, outcomes, and normal forms.

A game places players on a digraph: every non-terminal vertex (a "position")
belongs to one player, terminals belong to nobody, and one vertex is initial.
A pure stationary strategy picks one outgoing edge per owned position; a
strategy profile then induces a unique walk from the initial vertex that
either stops at a terminal or laps a cycle. Outcomes are the non-transient
SCCs of the digraph, so every play maps to exactly one outcome.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Mapping

from .errors import CapExceeded, LabelCollision
from .graph import Digraph, SccClass, SccDecomposition, scc_decompose

DEFAULT_CELL_CAP = 10_000_000


@dataclass(frozen=True)
class ValidationIssue:
    code: str
    subject: str
    message: str

    def __str__(self) -> str:
        return f"{self.code}({self.subject}): {self.message}"


@dataclass(frozen=True, eq=False)
class GameStructure:
    """Digraph + ownership + terminals + initial vertex.

    Construction is permissive so that broken structures can be built and
    then reported on by validate(); every other operation assumes a
    structure validate() accepts.
    """

    graph: Digraph
    players: int
    owner: Mapping[str, int]
    terminals: frozenset[str]
    initial: str

    def __post_init__(self):
        object.__setattr__(self, "owner", dict(self.owner))
        object.__setattr__(self, "terminals", frozenset(self.terminals))

    def __eq__(self, other) -> bool:
        if not isinstance(other, GameStructure):
            return NotImplemented
        return (
            self.graph == other.graph
            and self.players == other.players
            and self.owner == other.owner
            and self.terminals == other.terminals
            and self.initial == other.initial
        )

    def positions_of(self, player: int) -> tuple[str, ...]:
        """Positions owned by player, in vertex input order."""
        return tuple(
            v for v in self.graph.vertices if self.owner.get(v) == player
        )

    @cached_property
    def positions(self) -> tuple[str, ...]:
        return tuple(v for v in self.graph.vertices if v not in self.terminals)


def validate(gs: GameStructure) -> list[ValidationIssue]:
    """Check every structural invariant; return all violations, throw none."""
    issues: list[ValidationIssue] = []
    g = gs.graph
    declared = set(g.vertices)

    for v in gs.owner:
        if v not in declared:
            issues.append(ValidationIssue("UnknownVertex", v, "owned vertex is not in the digraph"))
    for v in sorted(gs.terminals):
        if v not in declared:
            issues.append(ValidationIssue("UnknownVertex", v, "terminal is not in the digraph"))
    if gs.initial not in declared:
        issues.append(ValidationIssue("UnknownVertex", gs.initial, "initial vertex is not in the digraph"))

    for v in g.vertices:
        owned = v in gs.owner
        terminal = v in gs.terminals
        if owned and terminal:
            issues.append(ValidationIssue("OwnedTerminal", v, "vertex is both owned and terminal"))
        elif not owned and not terminal:
            issues.append(ValidationIssue("MissingOwner", v, "vertex is neither owned nor terminal"))
        if owned and not (1 <= gs.owner[v] <= gs.players):
            issues.append(
                ValidationIssue("UnknownPlayer", v, f"owner {gs.owner[v]} outside 1..{gs.players}")
            )
        out = g.out_edges(v)
        if terminal and out:
            issues.append(ValidationIssue("TerminalWithOutEdge", v, "terminal has outgoing edges"))
        if not terminal and not out:
            issues.append(ValidationIssue("DeadEnd", v, "position has no outgoing edge"))

    if gs.initial in gs.terminals:
        issues.append(ValidationIssue("InitialIsTerminal", gs.initial, "initial vertex is terminal"))
    return issues


class OutcomeKind(enum.Enum):
    TERMINAL = "terminal"
    CYCLIC = "cyclic"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Outcome:
    """A labeled outcome covering one or more SCCs (several only after merging)."""

    label: str
    kind: OutcomeKind
    components: tuple[int, ...]


@dataclass(frozen=True)
class OutcomeSet:
    """The game's outcomes in component order, tied to the decomposition."""

    decomposition: SccDecomposition
    outcomes: tuple[Outcome, ...]

    @cached_property
    def labels(self) -> tuple[str, ...]:
        return tuple(o.label for o in self.outcomes)

    @cached_property
    def _by_label(self) -> dict[str, Outcome]:
        return {o.label: o for o in self.outcomes}

    @cached_property
    def _by_component(self) -> dict[int, Outcome]:
        out = {}
        for o in self.outcomes:
            for j in o.components:
                out[j] = o
        return out

    def __len__(self) -> int:
        return len(self.outcomes)

    def by_label(self, label: str) -> Outcome:
        return self._by_label[label]

    def index_of(self, label: str) -> int:
        return self.labels.index(label)

    def of_component(self, j: int) -> Outcome:
        """Outcome of a non-transient component index."""
        return self._by_component[j]

    def terminal_labels(self) -> tuple[str, ...]:
        return tuple(o.label for o in self.outcomes if o.kind is OutcomeKind.TERMINAL)

    def cyclic_labels(self) -> tuple[str, ...]:
        return tuple(o.label for o in self.outcomes if o.kind is OutcomeKind.CYCLIC)


def build_outcomes(
    gs: GameStructure,
    component_labels: Mapping[int, str] | None = None,
) -> OutcomeSet:
    """Outcomes = non-transient SCCs in component order.

    An outcome is terminal when its component is a single declared terminal
    vertex; every other non-transient component holds a dicycle the play can
    repeat forever, so its outcome is cyclic (a no-exit cycle included).
    Default labels: a terminal outcome takes its vertex's name, cyclic
    outcomes are c1, c2, ... in component order. component_labels overrides
    labels per component index; giving several CYCLIC components the same
    label merges them into one outcome (positioned at the first merged
    component).
    """
    d = scc_decompose(gs.graph)
    overrides = dict(component_labels or {})

    # group components by final label, preserving component order
    order: list[str] = []
    groups: dict[str, list[int]] = {}
    kinds: dict[str, OutcomeKind] = {}
    cyc_count = 0
    for j, cls in enumerate(d.classes):
        if cls is SccClass.TRANSIENT:
            continue
        comp = d.components[j]
        terminal = len(comp) == 1 and comp[0] in gs.terminals
        kind = OutcomeKind.TERMINAL if terminal else OutcomeKind.CYCLIC
        if j in overrides:
            label = overrides[j]
        elif terminal:
            label = comp[0]
        else:
            cyc_count += 1
            label = f"c{cyc_count}"
        if label in groups:
            if kinds[label] is OutcomeKind.TERMINAL or kind is OutcomeKind.TERMINAL:
                raise LabelCollision(f"label {label!r} assigned to more than one non-cyclic outcome")
            groups[label].append(j)
        else:
            order.append(label)
            groups[label] = [j]
            kinds[label] = kind
    outcomes = tuple(
        Outcome(label=lab, kind=kinds[lab], components=tuple(groups[lab])) for lab in order
    )
    return OutcomeSet(decomposition=d, outcomes=outcomes)


@dataclass(frozen=True)
class Strategy:
    """One player's pure stationary strategy.

    moves pairs each owned position (vertex input order) with the index of
    the chosen outgoing edge, so parallel edges stay distinguishable.
    """

    player: int
    moves: tuple[tuple[str, int], ...]

    @cached_property
    def _edge_for(self) -> dict[str, int]:
        return dict(self.moves)

    def edge_for(self, position: str) -> int:
        return self._edge_for[position]

    @classmethod
    def from_successors(cls, gs: GameStructure, player: int, choice: Mapping[str, str]) -> "Strategy":
        """Build from position -> successor names; first matching edge wins."""
        moves = []
        for pos in gs.positions_of(player):
            target = choice[pos]
            for e in gs.graph.out_edges(pos):
                if gs.graph.head(e) == target:
                    moves.append((pos, e))
                    break
            else:
                raise ValueError(f"no edge {pos} -> {target}")
        return cls(player=player, moves=tuple(moves))


@dataclass(frozen=True)
class StrategyProfile:
    """One strategy per player, player order."""

    strategies: tuple[Strategy, ...]

    @cached_property
    def _edge_at(self) -> dict[str, int]:
        out = {}
        for s in self.strategies:
            out.update(s.moves)
        return out

    def edge_at(self, position: str) -> int:
        return self._edge_at[position]

    def for_player(self, player: int) -> Strategy:
        return self.strategies[player - 1]

    def replace(self, strategy: Strategy) -> "StrategyProfile":
        parts = list(self.strategies)
        parts[strategy.player - 1] = strategy
        return StrategyProfile(tuple(parts))


def strategies(gs: GameStructure, player: int) -> list[Strategy]:
    """All strategies of a player, lexicographic: positions in vertex input
    order, the last position's edge choice varying fastest."""
    positions = gs.positions_of(player)
    choice_lists = [gs.graph.out_edges(p) for p in positions]
    out = []
    for combo in itertools.product(*choice_lists):
        out.append(Strategy(player=player, moves=tuple(zip(positions, combo))))
    return out


def format_strategy(s: Strategy, gs: GameStructure) -> str:
    if not s.moves:
        return "-"
    return ",".join(f"{pos}->{gs.graph.head(e)}" for pos, e in s.moves)


def format_profile(x: StrategyProfile, gs: GameStructure) -> str:
    return " | ".join(format_strategy(s, gs) for s in x.strategies)


@dataclass(frozen=True, eq=False)
class Play:
    """A lasso: a loop-free prefix then either a terminal vertex or a cycle.

    The cycle is stored as walked, starting at the first repeated vertex;
    equality and hash treat rotations of the cycle as equal.
    """

    prefix: tuple[str, ...]
    terminal: str | None = None
    cycle: tuple[str, ...] | None = None

    def __post_init__(self):
        if (self.terminal is None) == (self.cycle is None):
            raise ValueError("exactly one of terminal/cycle must be set")

    @property
    def is_terminal(self) -> bool:
        return self.terminal is not None

    def canonical_cycle(self) -> tuple[str, ...] | None:
        if self.cycle is None:
            return None
        c = self.cycle
        k = min(range(len(c)), key=lambda i: c[i:] + c[:i])
        return c[k:] + c[:k]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Play):
            return NotImplemented
        return (
            self.prefix == other.prefix
            and self.terminal == other.terminal
            and self.canonical_cycle() == other.canonical_cycle()
        )

    def __hash__(self) -> int:
        return hash((self.prefix, self.terminal, self.canonical_cycle()))


def play(gs: GameStructure, x: StrategyProfile) -> Play:
    """Walk the profile's moves from the initial vertex until a terminal or
    the first repeated vertex."""
    g = gs.graph
    walk: list[str] = []
    at: dict[str, int] = {}
    v = gs.initial
    while True:
        if v in gs.terminals:
            return Play(prefix=tuple(walk), terminal=v)
        if v in at:
            k = at[v]
            return Play(prefix=tuple(walk[:k]), cycle=tuple(walk[k:]))
        at[v] = len(walk)
        walk.append(v)
        v = g.head(x.edge_at(v))


def outcome_of(gs: GameStructure, os: OutcomeSet, x: StrategyProfile) -> Outcome:
    """The outcome of the SCC where the profile's play ends up."""
    p = play(gs, x)
    v = p.terminal if p.is_terminal else p.cycle[0]
    return os.of_component(os.decomposition.component_of(v))


@dataclass(frozen=True, eq=False)
class NormalForm:
    """Dense outcome table over the product of per-player strategy lists.

    cells holds outcome indices in lexicographic profile order (player 1
    slowest). Strides allow walking one player's line through the table.
    """

    game: GameStructure
    outcome_set: OutcomeSet
    strategy_lists: tuple[tuple[Strategy, ...], ...]
    cells: tuple[int, ...]

    @cached_property
    def shape(self) -> tuple[int, ...]:
        return tuple(len(sl) for sl in self.strategy_lists)

    @cached_property
    def strides(self) -> tuple[int, ...]:
        strides = [1] * len(self.shape)
        for i in range(len(self.shape) - 2, -1, -1):
            strides[i] = strides[i + 1] * self.shape[i + 1]
        return tuple(strides)

    def flat_index(self, indices: tuple[int, ...]) -> int:
        return sum(t * s for t, s in zip(indices, self.strides))

    def unflatten(self, flat: int) -> tuple[int, ...]:
        out = []
        for s in self.strides:
            out.append(flat // s)
            flat %= s
        return tuple(out)

    def profile_at(self, flat: int) -> StrategyProfile:
        idx = self.unflatten(flat)
        return StrategyProfile(
            tuple(sl[t] for sl, t in zip(self.strategy_lists, idx))
        )

    def outcome_at(self, flat: int) -> Outcome:
        return self.outcome_set.outcomes[self.cells[flat]]

    def iter_flat(self) -> Iterator[int]:
        return iter(range(len(self.cells)))


def normal_form(
    gs: GameStructure,
    os: OutcomeSet,
    cap: int = DEFAULT_CELL_CAP,
) -> NormalForm:
    """Tabulate every profile's outcome; raises CapExceeded past cap cells."""
    lists = tuple(tuple(strategies(gs, i)) for i in range(1, gs.players + 1))
    total = 1
    for sl in lists:
        total *= len(sl)
    if total > cap:
        raise CapExceeded(f"normal form needs {total} cells, cap is {cap}")

    label_index = {o.label: k for k, o in enumerate(os.outcomes)}
    cells = []
    for combo in itertools.product(*lists):
        o = outcome_of(gs, os, StrategyProfile(combo))
        cells.append(label_index[o.label])
    return NormalForm(
        game=gs, outcome_set=os, strategy_lists=lists, cells=tuple(cells)
    )
