"""Strict preference orders over outcomes, rank vectors, and the merge map.

Each player ranks all outcomes with no ties. The rank vector counts, per
player, the terminal outcomes that sit below some cyclic outcome in that
player's order; the two solvability conditions are predicates on it.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Mapping

from .errors import CapExceeded, NoCyclicOutcomes, UnknownOutcome
from .game import Outcome, OutcomeKind, OutcomeSet

DEFAULT_PROFILE_CAP = 10_000_000


@dataclass(frozen=True)
class Preference:
    """One player's strict total order over outcome labels, best first."""

    player: int
    order: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "order", tuple(self.order))
        if len(set(self.order)) != len(self.order):
            raise ValueError(f"player {self.player}: duplicate label in order")

    @cached_property
    def _rank(self) -> dict[str, int]:
        return {w: k for k, w in enumerate(self.order)}

    def rank(self, label: str) -> int:
        """0 is best."""
        try:
            return self._rank[label]
        except KeyError:
            raise UnknownOutcome(f"player {self.player}: unknown outcome {label!r}") from None

    def prefers(self, w1: str, w2: str) -> bool:
        """True when this player strictly prefers w1 over w2."""
        return self.rank(w1) < self.rank(w2)

    @classmethod
    def from_scores(cls, player: int, scores: Mapping[str, float]) -> "Preference":
        """Higher score = better; tied scores are rejected."""
        if len(set(scores.values())) != len(scores):
            raise ValueError(f"player {player}: tied scores")
        order = tuple(sorted(scores, key=lambda w: -scores[w]))
        return cls(player=player, order=order)

    def __str__(self) -> str:
        return f"{self.player}: " + " > ".join(self.order)


@dataclass(frozen=True)
class PreferenceProfile:
    """One Preference per player, player order."""

    preferences: tuple[Preference, ...]

    def __post_init__(self):
        for k, p in enumerate(self.preferences, start=1):
            if p.player != k:
                raise ValueError(f"preference at slot {k} belongs to player {p.player}")

    def for_player(self, player: int) -> Preference:
        return self.preferences[player - 1]

    @property
    def players(self) -> int:
        return len(self.preferences)

    def __str__(self) -> str:
        return " | ".join(str(p) for p in self.preferences)


def rank_vector(os: OutcomeSet, pp: PreferenceProfile) -> tuple[int, ...]:
    """Per player: how many terminal outcomes have a better cyclic outcome."""
    terminals = os.terminal_labels()
    cyclics = os.cyclic_labels()
    out = []
    for p in pp.preferences:
        best_cyclic = min((p.rank(c) for c in cyclics), default=None)
        if best_cyclic is None:
            out.append(0)
        else:
            out.append(sum(1 for t in terminals if p.rank(t) > best_cyclic))
    return tuple(out)


def cnd_c0(os: OutcomeSet, pp: PreferenceProfile) -> bool:
    """Every player ranks every terminal above every cyclic outcome."""
    return all(r == 0 for r in rank_vector(os, pp))


def cnd_c22(os: OutcomeSet, pp: PreferenceProfile) -> bool:
    """At least two players have rank at least 2."""
    return sum(1 for r in rank_vector(os, pp) if r >= 2) >= 2


def merge_cyclic(os: OutcomeSet, label: str = "c") -> OutcomeSet:
    """Collapse all cyclic outcomes into a single one, placed where the first
    cyclic outcome was; terminal outcomes are untouched."""
    cyclic = [o for o in os.outcomes if o.kind is OutcomeKind.CYCLIC]
    if not cyclic:
        raise NoCyclicOutcomes("outcome set has no cyclic outcome to merge")
    terminal_labels = {o.label for o in os.outcomes if o.kind is not OutcomeKind.CYCLIC}
    if label in terminal_labels:
        raise ValueError(f"merged label {label!r} collides with a terminal outcome")
    merged = Outcome(
        label=label,
        kind=OutcomeKind.CYCLIC,
        components=tuple(j for o in cyclic for j in o.components),
    )
    outcomes = []
    placed = False
    for o in os.outcomes:
        if o.kind is OutcomeKind.CYCLIC:
            if not placed:
                outcomes.append(merged)
                placed = True
        else:
            outcomes.append(o)
    return OutcomeSet(decomposition=os.decomposition, outcomes=tuple(outcomes))


def profile_count(os: OutcomeSet, players: int) -> int:
    return math.factorial(len(os.outcomes)) ** players


def profile_by_index(os: OutcomeSet, players: int, index: int) -> PreferenceProfile:
    """The index-th profile of enumerate_preference_profiles' order."""
    perms = list(itertools.permutations(os.labels))
    digits = []
    for _ in range(players):
        index, r = divmod(index, len(perms))
        digits.append(r)
    digits.reverse()  # player 1 is the most significant digit
    return PreferenceProfile(
        tuple(Preference(i + 1, perms[d]) for i, d in enumerate(digits))
    )


def enumerate_preference_profiles(
    os: OutcomeSet,
    players: int,
    cap: int = DEFAULT_PROFILE_CAP,
    start: int = 0,
    stop: int | None = None,
) -> Iterator[PreferenceProfile]:
    """All (k!)^players strict profiles, player-major: player 1's order is the
    most significant digit, each player's orders run in lexicographic order
    of the outcome-set label sequence. start/stop select an index range."""
    total = profile_count(os, players)
    if total > cap:
        raise CapExceeded(f"{total} preference profiles, cap is {cap}")
    if stop is None:
        stop = total
    if start == 0 and stop == total:
        perms = list(itertools.permutations(os.labels))
        for combo in itertools.product(perms, repeat=players):
            yield PreferenceProfile(
                tuple(Preference(i + 1, p) for i, p in enumerate(combo))
            )
    else:
        for m in range(start, stop):
            yield profile_by_index(os, players, m)


def parse_preference(text: str, labels: tuple[str, ...] | None = None) -> Preference:
    """Parse "2: c3 > a1 > c2"; when labels is given, the order must be a
    permutation of exactly those labels."""
    head, sep, tail = text.partition(":")
    if not sep:
        raise ValueError(f"missing ':' in preference line {text!r}")
    try:
        player = int(head.strip())
    except ValueError:
        raise ValueError(f"bad player number {head.strip()!r}") from None
    order = tuple(w.strip() for w in tail.split(">"))
    if any(not w for w in order):
        raise ValueError(f"empty outcome label in {text!r}")
    pref = Preference(player=player, order=order)
    if labels is not None and sorted(order) != sorted(labels):
        raise ValueError(
            f"player {player}: order is not a permutation of {{{', '.join(labels)}}}"
        )
    return pref
