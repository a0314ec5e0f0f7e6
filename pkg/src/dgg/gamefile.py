"""Plain-text game files: parsing, canonical printing, round-tripping.

Format by example:

    # full-line comments start with '#'
    players: 3
    positions: s1:1 u1:1 v1:1 u2:2 v2:2 u3:3 v3:3
    terminals: a1 a2
    initial: s1
    edges:
      s1 -> u2
      ...
    cycles:            # optional: rename/merge non-transient SCCs
      c1 = {u1, u2}
    preferences:       # optional: one strict order per player
      1: a2 > c3 > c2 > a1 > c1

Vertex input order is the positions line followed by the terminals line;
edge input order is the edges block. Repeating one cycle label on several
lines merges those (cyclic) components into a single outcome.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import CycleLabelMismatch, GameFileError, InvalidGame
from .game import (
    GameStructure,
    OutcomeKind,
    OutcomeSet,
    build_outcomes,
    validate,
)
from .graph import Digraph, SccClass, scc_decompose
from .prefs import Preference, PreferenceProfile, parse_preference

_SCALAR_SECTIONS = ("players", "positions", "terminals", "initial")
_BLOCK_SECTIONS = ("edges", "cycles", "preferences")
_SECTION = re.compile(r"^(players|positions|terminals|initial|edges|cycles|preferences):\s*(.*)$")
_NAME = re.compile(r"^[A-Za-z0-9_.'+-]+$")


@dataclass(frozen=True)
class GameFile:
    """A parsed game file: structure, declared cycle labels, preferences."""

    game: GameStructure
    outcome_set: OutcomeSet
    cycles: tuple[tuple[str, tuple[str, ...]], ...]
    preferences: PreferenceProfile | None


def _check_name(name: str, line_no: int) -> str:
    if not _NAME.match(name):
        raise GameFileError(line_no, f"bad name {name!r}")
    return name


def parse_game_file(text: str) -> GameFile:
    scalars: dict[str, tuple[int, str]] = {}
    blocks: dict[str, list[tuple[int, str]]] = {}
    current: str | None = None

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        m = _SECTION.match(raw.rstrip())
        if m and not raw[0].isspace():
            name, inline = m.group(1), m.group(2).strip()
            if name in scalars or name in blocks:
                raise GameFileError(line_no, f"duplicate section {name!r}")
            if name in _SCALAR_SECTIONS:
                scalars[name] = (line_no, inline)
                current = None
            else:
                if inline:
                    raise GameFileError(line_no, f"section {name!r} takes indented lines")
                blocks[name] = []
                current = name
            continue
        if current is None:
            raise GameFileError(line_no, f"content outside any section: {line!r}")
        blocks[current].append((line_no, line))

    for required in ("players", "positions", "initial", "edges"):
        if required not in scalars and required not in blocks:
            raise GameFileError(0, f"missing section {required!r}")

    line_no, text_val = scalars["players"]
    try:
        players = int(text_val)
    except ValueError:
        raise GameFileError(line_no, f"bad player count {text_val!r}") from None
    if players < 1:
        raise GameFileError(line_no, "player count must be at least 1")

    owner: dict[str, int] = {}
    order: list[str] = []
    line_no, text_val = scalars["positions"]
    for token in text_val.split():
        name, sep, player_text = token.partition(":")
        if not sep:
            raise GameFileError(line_no, f"position {token!r} needs ':player'")
        _check_name(name, line_no)
        try:
            player = int(player_text)
        except ValueError:
            raise GameFileError(line_no, f"bad owner in {token!r}") from None
        if name in owner:
            raise GameFileError(line_no, f"duplicate position {name!r}")
        owner[name] = player
        order.append(name)

    terminals: list[str] = []
    if "terminals" in scalars:
        line_no, text_val = scalars["terminals"]
        for name in text_val.split():
            _check_name(name, line_no)
            if name in owner or name in terminals:
                raise GameFileError(line_no, f"duplicate vertex {name!r}")
            terminals.append(name)

    init_line, initial = scalars["initial"]
    if not initial:
        raise GameFileError(init_line, "initial line is empty")

    vertices = tuple(order + terminals)
    known = set(vertices)
    edges: list[tuple[str, str]] = []
    for line_no, line in blocks["edges"]:
        tail, sep, head = line.partition("->")
        if not sep:
            raise GameFileError(line_no, f"edge line {line!r} needs '->'")
        tail, head = tail.strip(), head.strip()
        for v in (tail, head):
            if v not in known:
                raise GameFileError(line_no, f"unknown vertex {v!r}")
        edges.append((tail, head))

    if initial not in known:
        raise GameFileError(init_line, f"unknown initial vertex {initial!r}")

    gs = GameStructure(
        graph=Digraph(vertices, tuple(edges)),
        players=players,
        owner=owner,
        terminals=frozenset(terminals),
        initial=initial,
    )
    issues = validate(gs)
    if issues:
        raise InvalidGame(issues)

    cycles: list[tuple[str, tuple[str, ...]]] = []
    component_labels: dict[int, str] = {}
    if "cycles" in blocks:
        d = scc_decompose(gs.graph)
        by_set = {
            frozenset(comp): j
            for j, comp in enumerate(d.components)
            if d.classes[j] is not SccClass.TRANSIENT
        }
        label_terminal: dict[str, bool] = {}
        for line_no, line in blocks["cycles"]:
            m = re.match(r"^(\S+)\s*=\s*\{([^{}]*)\}$", line)
            if m is None:
                raise GameFileError(line_no, f"bad cycle line {line!r}")
            label = _check_name(m.group(1), line_no)
            members = tuple(v.strip() for v in m.group(2).split(",") if v.strip())
            j = by_set.get(frozenset(members))
            if j is None:
                raise CycleLabelMismatch(
                    line_no, f"{{{', '.join(members)}}} is not a non-transient component"
                )
            if j in component_labels:
                raise GameFileError(line_no, f"component already labeled {component_labels[j]!r}")
            is_terminal = len(members) == 1 and members[0] in gs.terminals
            if label in label_terminal and (label_terminal[label] or is_terminal):
                raise CycleLabelMismatch(
                    line_no, f"label {label!r} merges a terminal outcome"
                )
            label_terminal[label] = is_terminal
            component_labels[j] = label
            cycles.append((label, members))

    outcome_set = build_outcomes(gs, component_labels or None)

    preferences: PreferenceProfile | None = None
    if "preferences" in blocks:
        by_player: dict[int, Preference] = {}
        for line_no, line in blocks["preferences"]:
            try:
                pref = parse_preference(line, labels=outcome_set.labels)
            except ValueError as exc:
                raise GameFileError(line_no, str(exc)) from None
            if pref.player in by_player:
                raise GameFileError(line_no, f"player {pref.player} listed twice")
            if not 1 <= pref.player <= players:
                raise GameFileError(line_no, f"player {pref.player} outside 1..{players}")
            by_player[pref.player] = pref
        missing = [i for i in range(1, players + 1) if i not in by_player]
        if missing:
            raise GameFileError(0, f"preferences missing for players {missing}")
        preferences = PreferenceProfile(tuple(by_player[i] for i in range(1, players + 1)))

    return GameFile(
        game=gs, outcome_set=outcome_set, cycles=tuple(cycles), preferences=preferences
    )


def print_game_file(gf: GameFile) -> str:
    gs = gf.game
    lines = [f"players: {gs.players}"]
    positions = " ".join(f"{v}:{gs.owner[v]}" for v in gs.positions)
    lines.append(f"positions: {positions}")
    terms = [v for v in gs.graph.vertices if v in gs.terminals]
    lines.append("terminals: " + " ".join(terms) if terms else "terminals:")
    lines.append(f"initial: {gs.initial}")
    lines.append("edges:")
    for tail, head in gs.graph.edges:
        lines.append(f"  {tail} -> {head}")
    if gf.cycles:
        lines.append("cycles:")
        for label, members in gf.cycles:
            lines.append(f"  {label} = {{{', '.join(members)}}}")
    if gf.preferences is not None:
        lines.append("preferences:")
        for p in gf.preferences.preferences:
            lines.append(f"  {p}")
    return "\n".join(lines) + "\n"


def merged_game_file(gf: GameFile, label: str = "c") -> GameFile:
    """The same structure with every cyclic outcome declared under one label
    and the (no longer applicable) preferences dropped."""
    os = gf.outcome_set
    terminal_labels = {
        o.label for o in os.outcomes if o.kind is not OutcomeKind.CYCLIC
    }
    if label in terminal_labels:
        raise ValueError(f"merge label {label!r} collides with a terminal outcome")
    d = os.decomposition
    cycles: list[tuple[str, tuple[str, ...]]] = []
    component_labels: dict[int, str] = {}
    for j, cls in enumerate(d.classes):
        if cls is SccClass.TRANSIENT:
            continue
        o = os.of_component(j)
        if o.kind is OutcomeKind.CYCLIC:
            cycles.append((label, d.components[j]))
            component_labels[j] = label
        elif len(d.components[j]) > 1 or o.label != d.components[j][0]:
            # keep a terminal relabeling from the source file explicit
            cycles.append((o.label, d.components[j]))
            component_labels[j] = o.label
    return GameFile(
        game=gf.game,
        outcome_set=build_outcomes(gf.game, component_labels),
        cycles=tuple(cycles),
        preferences=None,
    )
