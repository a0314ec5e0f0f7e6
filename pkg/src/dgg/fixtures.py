"""Bundled example games with their documented properties, and the checks
behind the `verify-paper` command.

The headline fixture is a three-player game on nine vertices that has no
Nash equilibrium in pure stationary strategies under its bundled preference
profile. Its full annotated normal form (192 cells: outcome plus the set of
players with an improving deviation) ships as a data file so any divergence
is diffable. The second fixture is a two-player blackmail game with exactly
two equilibria, one of which survives dominated-terminal-move deletion.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .equilibrium import (
    all_ne,
    delete_bad_terminal_moves,
    improving_players,
)
from .game import (
    GameStructure,
    OutcomeSet,
    build_outcomes,
    format_strategy,
    normal_form,
)
from .graph import Digraph, SccClass, scc_decompose
from .prefs import (
    Preference,
    PreferenceProfile,
    cnd_c22,
    enumerate_preference_profiles,
    merge_cyclic,
    rank_vector,
)
from .sat import decode_model, encode, solve

CellKey = tuple[str, str, str]
CellValue = tuple[str, frozenset[int]]


@dataclass(frozen=True)
class Counterexample:
    """The NE-free three-player game with its annotated normal form."""

    game: GameStructure
    preferences: PreferenceProfile
    expected_table: dict[CellKey, CellValue]

    def outcome_set(self) -> OutcomeSet:
        return build_outcomes(self.game)


@dataclass(frozen=True)
class BlackmailExample:
    """Two-player game: threaten (go to v) or settle; two NE, one dominated."""

    game: GameStructure
    preferences: PreferenceProfile
    expected_ne: tuple[str, ...]  # formatted profiles, lexicographic
    expected_ne_after_deletion: tuple[str, ...]

    def outcome_set(self) -> OutcomeSet:
        return build_outcomes(self.game)


def counterexample_game() -> GameStructure:
    graph = Digraph(
        vertices=("s1", "u1", "v1", "u2", "v2", "u3", "v3", "a1", "a2"),
        edges=(
            ("s1", "u2"),
            ("s1", "v1"),
            ("s1", "v2"),
            ("u1", "u2"),
            ("u1", "v1"),
            ("u2", "u1"),
            ("u2", "u3"),
            ("v1", "u3"),
            ("v1", "v2"),
            ("u3", "v1"),
            ("u3", "v3"),
            ("v2", "v3"),
            ("v2", "a1"),
            ("v3", "v2"),
            ("v3", "a2"),
        ),
    )
    return GameStructure(
        graph=graph,
        players=3,
        owner={"s1": 1, "u1": 1, "v1": 1, "u2": 2, "v2": 2, "u3": 3, "v3": 3},
        terminals=frozenset({"a1", "a2"}),
        initial="s1",
    )


def counterexample_preferences() -> PreferenceProfile:
    return PreferenceProfile(
        (
            Preference(1, ("a2", "c3", "c2", "a1", "c1")),
            Preference(2, ("c3", "a1", "c2", "c1", "a2")),
            Preference(3, ("a1", "c2", "a2", "c1", "c3")),
        )
    )


_CELL_LINE = re.compile(r"^(.*) \| (.*) \| (.*) -> (\S+?)\^\{([\d,]*)\}$")


def _parse_expected_table(text: str) -> dict[CellKey, CellValue]:
    table: dict[CellKey, CellValue] = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        m = _CELL_LINE.match(line)
        if m is None:
            raise ValueError(f"bad table line: {line!r}")
        p1, p2, p3, outcome, sups = m.groups()
        improvers = frozenset(int(d) for d in sups.split(",") if d)
        table[(p1, p2, p3)] = (outcome, improvers)
    return table


@lru_cache(maxsize=1)
def counterexample() -> Counterexample:
    text = (
        resources.files("dgg").joinpath("data/counterexample_table.txt").read_text()
    )
    return Counterexample(
        game=counterexample_game(),
        preferences=counterexample_preferences(),
        expected_table=_parse_expected_table(text),
    )


@lru_cache(maxsize=1)
def blackmail() -> BlackmailExample:
    graph = Digraph(
        vertices=("s", "v", "t", "t'", "t''"),
        edges=(("s", "v"), ("s", "t"), ("v", "t'"), ("v", "t''")),
    )
    game = GameStructure(
        graph=graph,
        players=2,
        owner={"s": 1, "v": 2},
        terminals=frozenset({"t", "t'", "t''"}),
        initial="s",
    )
    # payoffs: t = (2, 3), t' = (3, 2), t'' = (1, 1); higher is better
    preferences = PreferenceProfile(
        (
            Preference.from_scores(1, {"t": 2, "t'": 3, "t''": 1}),
            Preference.from_scores(2, {"t": 3, "t'": 2, "t''": 1}),
        )
    )
    return BlackmailExample(
        game=game,
        preferences=preferences,
        expected_ne=("s->v | v->t'", "s->t | v->t''"),
        expected_ne_after_deletion=("s->v | v->t'",),
    )


@dataclass(frozen=True)
class CheckResult:
    key: str
    description: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"{status} ({self.key}) {self.description}"
        if self.detail and not self.passed:
            text += f": {self.detail}"
        return text


@dataclass(frozen=True)
class VerifyReport:
    checks: tuple[CheckResult, ...]

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def lines(self) -> list[str]:
        out = [c.line() for c in self.checks]
        out.append("all checks passed" if self.all_passed else "SOME CHECKS FAILED")
        return out


def annotated_table(
    gs: GameStructure, os: OutcomeSet, pp: PreferenceProfile
) -> dict[CellKey, CellValue]:
    """Recompute what the expected table stores, from the definitions."""
    nf = normal_form(gs, os)
    table: dict[CellKey, CellValue] = {}
    for f in nf.iter_flat():
        x = nf.profile_at(f)
        key = tuple(format_strategy(s, gs) for s in x.strategies)
        outcome = nf.outcome_at(f).label
        improvers = frozenset(improving_players(gs, os, pp, x))
        table[key] = (outcome, improvers)
    return table


def _fmt_cell(value: CellValue) -> str:
    outcome, improvers = value
    return f"{outcome}^{{{','.join(str(i) for i in sorted(improvers))}}}"


def verify_counterexample(
    cx: Counterexample | None = None, bx: BlackmailExample | None = None
) -> VerifyReport:
    """Re-derive every published property of the bundled fixtures.

    Checks run independently; an exception inside one becomes a FAIL for
    that check (with the exception text as detail) rather than a raise, so
    a divergent fixture still yields a full report.
    """
    cx = cx or counterexample()
    bx = bx or blackmail()
    gs, pp = cx.game, cx.preferences

    def structure() -> tuple[bool, str]:
        d = scc_decompose(gs.graph)
        expected_components = (
            ("s1",),
            ("u1", "u2"),
            ("v1", "u3"),
            ("v2", "v3"),
            ("a1",),
            ("a2",),
        )
        expected_classes = (
            SccClass.TRANSIENT,
            SccClass.INNER,
            SccClass.INNER,
            SccClass.INNER,
            SccClass.TERMINAL,
            SccClass.TERMINAL,
        )
        ok = d.components == expected_components and d.classes == expected_classes
        return ok, "" if ok else f"got {d.components} {tuple(map(str, d.classes))}"

    def labels() -> tuple[bool, str]:
        os = build_outcomes(gs)
        return set(os.labels) == {"a1", "a2", "c1", "c2", "c3"}, f"got {os.labels}"

    def rank() -> tuple[bool, str]:
        r = rank_vector(build_outcomes(gs), pp)
        return r == (1, 2, 1), f"got {r}"

    def second_condition() -> tuple[bool, str]:
        flag = cnd_c22(build_outcomes(gs), pp)
        return flag is False, f"got {flag}"

    def table() -> tuple[bool, str]:
        actual = annotated_table(gs, build_outcomes(gs), pp)
        if set(actual) != set(cx.expected_table):
            return False, "cell key sets differ"
        for key in sorted(actual):
            if actual[key] != cx.expected_table[key]:
                detail = (
                    f"cell {' | '.join(key)}: expected "
                    f"{_fmt_cell(cx.expected_table[key])}, got {_fmt_cell(actual[key])}"
                )
                return False, detail
        return True, ""

    def no_ne() -> tuple[bool, str]:
        ne = all_ne(gs, build_outcomes(gs), pp)
        return not ne, f"found {len(ne)}"

    def merged_solvable() -> tuple[bool, str]:
        merged = merge_cyclic(build_outcomes(gs))
        mnf = normal_form(gs, merged)
        for mpp in enumerate_preference_profiles(merged, gs.players):
            if not all_ne(gs, merged, mpp, nf=mnf):
                return False, f"profile without NE: {mpp}"
        return True, ""

    def encoding() -> tuple[bool, str]:
        cnf = encode(gs, build_outcomes(gs))
        model = solve(cnf)
        if model is None:
            return False, "formula is unsatisfiable"
        decoded = decode_model(cnf, model)
        leftover = all_ne(gs, build_outcomes(gs), decoded)
        if leftover:
            return False, f"decoded profile {decoded} still has {len(leftover)} NE"
        return True, ""

    def blackmail_ne() -> tuple[bool, str]:
        bgs, bpp = bx.game, bx.preferences
        bos = build_outcomes(bgs)
        before = tuple(
            " | ".join(format_strategy(s, bgs) for s in x.strategies)
            for x in all_ne(bgs, bos, bpp)
        )
        reduced = delete_bad_terminal_moves(bgs, bpp, bos)
        ros = build_outcomes(reduced)
        after = tuple(
            " | ".join(format_strategy(s, reduced) for s in x.strategies)
            for x in all_ne(reduced, ros, bpp)
        )
        ok = before == bx.expected_ne and after == bx.expected_ne_after_deletion
        return ok, f"before={before} after={after}"

    steps = (
        ("a", "six components with expected classes", structure),
        ("b", "outcomes are {a1, a2, c1, c2, c3}", labels),
        ("c", "rank vector is (1, 2, 1)", rank),
        ("d", "cnd_c22 is false", second_condition),
        ("e", "all 192 cells match the expected table", table),
        ("f", "no NE under the bundled preferences", no_ne),
        ("g", "merged game has an NE for all 216 profiles", merged_solvable),
        ("h", "encoding satisfiable, first model decodes NE-free", encoding),
        ("i", "blackmail game: 2 NE, then 1 after deletion", blackmail_ne),
    )
    checks = []
    for key, description, fn in steps:
        try:
            ok, detail = fn()
        except Exception as exc:
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        checks.append(CheckResult(key, description, ok, detail))
    return VerifyReport(tuple(checks))
