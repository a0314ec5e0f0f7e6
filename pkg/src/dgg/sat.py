"""Existence of an NE-free preference profile as a CNF formula.

One boolean variable per (player, unordered outcome pair) encodes which way
the player ranks the pair. Acyclicity clauses forbid 3-cycles, so models are
exactly strict orders; one clause per normal-form cell demands an improving
deviation there. The formula is satisfiable iff some preference profile
leaves the game without any NE, and each model decodes to such a profile.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Mapping, Sequence, Union

from .equilibrium import deviation_masks
from .errors import CapExceeded, CyclicTournament, DimacsError, EmptyClause
from .game import (
    DEFAULT_CELL_CAP,
    GameStructure,
    NormalForm,
    OutcomeSet,
    format_profile,
    normal_form,
)
from .prefs import Preference, PreferenceProfile

DEFAULT_MODEL_CAP = 1_000_000

Assignment = Sequence[bool]


@dataclass(frozen=True)
class PrefVar:
    """True asserts that player ranks `first` above `second`; the pair is
    canonical: `first` precedes `second` in the global outcome order."""

    player: int
    first: str
    second: str


@dataclass(frozen=True)
class AcyclicityClause:
    player: int
    triple: tuple[str, str, str]


@dataclass(frozen=True)
class SituationClause:
    cell: tuple[int, ...]


Provenance = Union[AcyclicityClause, SituationClause]


@dataclass(frozen=True)
class Cnf:
    players: int
    outcomes: tuple[str, ...]
    variables: tuple[PrefVar, ...]
    clauses: tuple[tuple[int, ...], ...]
    provenance: tuple[Provenance, ...]

    @property
    def var_count(self) -> int:
        return len(self.variables)

    @cached_property
    def _var_ids(self) -> dict[tuple[int, str, str], int]:
        return {
            (v.player, v.first, v.second): k + 1 for k, v in enumerate(self.variables)
        }

    @cached_property
    def _outcome_index(self) -> dict[str, int]:
        return {w: k for k, w in enumerate(self.outcomes)}

    def literal(self, player: int, better: str, worse: str) -> int:
        """Signed literal asserting that player prefers `better` to `worse`."""
        if self._outcome_index[better] < self._outcome_index[worse]:
            return self._var_ids[(player, better, worse)]
        return -self._var_ids[(player, worse, better)]


def pref_variables(players: int, outcomes: Sequence[str]) -> tuple[PrefVar, ...]:
    """Player-major, pairs in lexicographic order of the global outcome order."""
    return tuple(
        PrefVar(player=i, first=w1, second=w2)
        for i in range(1, players + 1)
        for w1, w2 in itertools.combinations(outcomes, 2)
    )


def build_acyclicity_cnf(os: OutcomeSet, players: int) -> Cnf:
    """Two clauses per player and unordered outcome triple.

    A model fixes every pairwise direction, i.e. a tournament per player,
    and a tournament is a strict order iff it has no directed 3-cycle (any
    longer directed cycle in a tournament shortcuts to one). The six ordered
    3-cycles on {a, b, c} are rotations of just two orientations, so two
    clauses per unordered triple forbid them all: players * C(k, 3) * 2.
    """
    outcomes = os.labels
    variables = pref_variables(players, outcomes)
    cnf = Cnf(
        players=players,
        outcomes=outcomes,
        variables=variables,
        clauses=(),
        provenance=(),
    )
    clauses = []
    provenance = []
    for i in range(1, players + 1):
        for a, b, c in itertools.combinations(outcomes, 3):
            ab = cnf.literal(i, a, b)
            bc = cnf.literal(i, b, c)
            ac = cnf.literal(i, a, c)
            clauses.append((-ab, -bc, ac))
            clauses.append((ab, bc, -ac))
            provenance.append(AcyclicityClause(player=i, triple=(a, b, c)))
            provenance.append(AcyclicityClause(player=i, triple=(a, b, c)))
    return Cnf(
        players=players,
        outcomes=outcomes,
        variables=variables,
        clauses=tuple(clauses),
        provenance=tuple(provenance),
    )


def build_ne_free_cnf(
    gs: GameStructure,
    os: OutcomeSet,
    nf: NormalForm | None = None,
    cap: int = DEFAULT_CELL_CAP,
) -> Cnf:
    """One clause per normal-form cell: some player prefers some deviation
    outcome over the cell's own. A cell with no outcome-changing deviation
    yields an empty clause; that is raised as EmptyClause since it certifies
    an NE under every preference profile."""
    if nf is None:
        nf = normal_form(gs, os, cap=cap)
    outcomes = os.labels
    variables = pref_variables(gs.players, outcomes)
    cnf = Cnf(
        players=gs.players,
        outcomes=outcomes,
        variables=variables,
        clauses=(),
        provenance=(),
    )
    dev = deviation_masks(nf)
    k = len(outcomes)
    clauses = []
    provenance = []
    for f in range(len(nf.cells)):
        current = outcomes[nf.cells[f]]
        lits = []
        for i in range(1, gs.players + 1):
            mask = dev[i - 1][f]
            for w in range(k):
                if mask >> w & 1:
                    lits.append(cnf.literal(i, outcomes[w], current))
        if not lits:
            cell = nf.unflatten(f)
            raise EmptyClause(
                cell,
                f"situation {cell} [{format_profile(nf.profile_at(f), gs)}] has no "
                "outcome-changing deviation, so it is an NE under every "
                "preference profile",
            )
        clauses.append(tuple(lits))
        provenance.append(SituationClause(cell=nf.unflatten(f)))
    return Cnf(
        players=gs.players,
        outcomes=outcomes,
        variables=variables,
        clauses=tuple(clauses),
        provenance=tuple(provenance),
    )


def encode(
    gs: GameStructure,
    os: OutcomeSet,
    nf: NormalForm | None = None,
    cap: int = DEFAULT_CELL_CAP,
) -> Cnf:
    """Acyclicity clauses followed by the per-situation clauses."""
    acyc = build_acyclicity_cnf(os, gs.players)
    free = build_ne_free_cnf(gs, os, nf=nf, cap=cap)
    return Cnf(
        players=acyc.players,
        outcomes=acyc.outcomes,
        variables=acyc.variables,
        clauses=acyc.clauses + free.clauses,
        provenance=acyc.provenance + free.provenance,
    )


def _dpll(num_vars: int, clauses: list[tuple[int, ...]]) -> list[bool] | None:
    """Deterministic DPLL: unit propagation, branch on the lowest unassigned
    variable, try True first."""
    assign: list[bool | None] = [None] * (num_vars + 1)
    trail: list[int] = []

    def undo(mark: int) -> None:
        while len(trail) > mark:
            assign[trail.pop()] = None

    def propagate() -> bool:
        changed = True
        while changed:
            changed = False
            for cl in clauses:
                satisfied = False
                unassigned = 0
                last = 0
                for lit in cl:
                    val = assign[lit if lit > 0 else -lit]
                    if val is None:
                        unassigned += 1
                        last = lit
                        if unassigned > 1:
                            break
                    elif val == (lit > 0):
                        satisfied = True
                        break
                if satisfied or unassigned > 1:
                    continue
                if unassigned == 0:
                    return True
                v = last if last > 0 else -last
                assign[v] = last > 0
                trail.append(v)
                changed = True
        return False

    def search() -> bool:
        mark = len(trail)
        if propagate():
            undo(mark)
            return False
        var = next((v for v in range(1, num_vars + 1) if assign[v] is None), None)
        if var is None:
            return True
        for val in (True, False):
            dmark = len(trail)
            assign[var] = val
            trail.append(var)
            if search():
                return True
            undo(dmark)
        undo(mark)
        return False

    if search():
        return [bool(assign[v]) for v in range(1, num_vars + 1)]
    return None


def solve(cnf: Cnf) -> tuple[bool, ...] | None:
    """One satisfying assignment (index v-1 holds variable v), or None."""
    model = _dpll(cnf.var_count, list(cnf.clauses))
    return None if model is None else tuple(model)


def enumerate_models(cnf: Cnf, cap: int = DEFAULT_MODEL_CAP) -> Iterator[tuple[bool, ...]]:
    """All models in solver order, each blocked before the next search."""
    clauses = list(cnf.clauses)
    found = 0
    while True:
        model = _dpll(cnf.var_count, clauses)
        if model is None:
            return
        found += 1
        if found > cap:
            raise CapExceeded(f"more than {cap} models")
        yield tuple(model)
        clauses.append(
            tuple(-(v + 1) if value else v + 1 for v, value in enumerate(model))
        )


def _assignment_value(assignment, var_id: int) -> bool:
    if isinstance(assignment, Mapping):
        return bool(assignment[var_id])
    return bool(assignment[var_id - 1])


def decode_model(cnf: Cnf, assignment) -> PreferenceProfile:
    """Read each player's tournament off the assignment and sort by wins;
    raises CyclicTournament when the relation is not a strict order."""
    prefs = []
    for i in range(1, cnf.players + 1):
        beats: set[tuple[str, str]] = set()
        wins = {w: 0 for w in cnf.outcomes}
        for w1, w2 in itertools.combinations(cnf.outcomes, 2):
            var_id = cnf._var_ids[(i, w1, w2)]
            if _assignment_value(assignment, var_id):
                beats.add((w1, w2))
                wins[w1] += 1
            else:
                beats.add((w2, w1))
                wins[w2] += 1
        order = sorted(cnf.outcomes, key=lambda w: (-wins[w], cnf._outcome_index[w]))
        for a, b in itertools.combinations(order, 2):
            if (a, b) not in beats:
                raise CyclicTournament(f"player {i}: preference relation has a cycle")
        prefs.append(Preference(player=i, order=tuple(order)))
    return PreferenceProfile(tuple(prefs))


def profile_to_assignment(cnf: Cnf, pp: PreferenceProfile) -> tuple[bool, ...]:
    """The assignment a preference profile induces on the variables."""
    return tuple(
        pp.for_player(v.player).prefers(v.first, v.second) for v in cnf.variables
    )


def satisfies(cnf: Cnf, assignment) -> bool:
    for cl in cnf.clauses:
        for lit in cl:
            if _assignment_value(assignment, abs(lit)) == (lit > 0):
                break
        else:
            return False
    return True


def sat_ne_free_profiles(
    gs: GameStructure,
    os: OutcomeSet,
    cap: int = DEFAULT_MODEL_CAP,
    cell_cap: int = DEFAULT_CELL_CAP,
) -> list[PreferenceProfile]:
    """Decoded models of the full encoding; [] when the game is solvable for
    every preference profile (UNSAT or certified by an empty clause)."""
    try:
        cnf = encode(gs, os, cap=cell_cap)
    except EmptyClause:
        return []
    return [decode_model(cnf, model) for model in enumerate_models(cnf, cap=cap)]


def format_dimacs(num_vars: int, clauses: Sequence[Sequence[int]]) -> str:
    lines = [f"p cnf {num_vars} {len(clauses)}"]
    for cl in clauses:
        lines.append(" ".join(str(lit) for lit in cl) + " 0")
    return "\n".join(lines) + "\n"


def to_dimacs(cnf: Cnf, comments: bool = True, dedup: bool = False) -> str:
    """DIMACS text; comments (before the p-line) map variable ids to ranked
    pairs and clause numbers to their origin."""
    clauses = list(cnf.clauses)
    provenance = list(cnf.provenance)
    if dedup:
        seen: set[tuple[int, ...]] = set()
        kept = []
        kept_prov = []
        for cl, pr in zip(clauses, provenance):
            if cl in seen:
                continue
            seen.add(cl)
            kept.append(cl)
            kept_prov.append(pr)
        clauses, provenance = kept, kept_prov

    out = []
    if comments:
        for k, v in enumerate(cnf.variables, start=1):
            out.append(f"c var {k} = player {v.player}: {v.first} > {v.second}")
        for num, pr in enumerate(provenance, start=1):
            if isinstance(pr, AcyclicityClause):
                triple = ", ".join(pr.triple)
                out.append(f"c clause {num} = acyclic player {pr.player} ({triple})")
            else:
                cell = ", ".join(str(t) for t in pr.cell)
                out.append(f"c clause {num} = situation ({cell})")
    body = format_dimacs(cnf.var_count, clauses)
    if out:
        return "\n".join(out) + "\n" + body
    return body


def parse_dimacs(text: str) -> tuple[int, tuple[tuple[int, ...], ...]]:
    """(variable count, clauses) of a DIMACS document; comments dropped."""
    num_vars = None
    num_clauses = None
    tokens: list[int] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            if num_vars is not None:
                raise DimacsError(f"line {line_no}: second p-line")
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise DimacsError(f"line {line_no}: malformed p-line {line!r}")
            try:
                num_vars, num_clauses = int(parts[2]), int(parts[3])
            except ValueError:
                raise DimacsError(f"line {line_no}: malformed p-line {line!r}") from None
            continue
        if num_vars is None:
            raise DimacsError(f"line {line_no}: clause before p-line")
        try:
            tokens.extend(int(t) for t in line.split())
        except ValueError:
            raise DimacsError(f"line {line_no}: non-integer token") from None
    if num_vars is None:
        raise DimacsError("missing p-line")
    clauses = []
    current: list[int] = []
    for t in tokens:
        if t == 0:
            clauses.append(tuple(current))
            current = []
            continue
        if abs(t) > num_vars:
            raise DimacsError(f"literal {t} outside declared variable range")
        current.append(t)
    if current:
        raise DimacsError("unterminated final clause")
    if len(clauses) != num_clauses:
        raise DimacsError(f"p-line declares {num_clauses} clauses, found {len(clauses)}")
    return num_vars, tuple(clauses)


def parse_model(text: str) -> dict[int, bool]:
    """Literals of a solver model line; 'v' prefixes and a terminating 0 are
    accepted and ignored."""
    assignment: dict[int, bool] = {}
    for token in text.split():
        if token == "v":
            continue
        try:
            lit = int(token)
        except ValueError:
            raise ValueError(f"unexpected token {token!r} in model") from None
        if lit == 0:
            break
        assignment[abs(lit)] = lit > 0
    return assignment
