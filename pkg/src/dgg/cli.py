"""Command-line interface.

Exit codes: 0 on success (a game being NE-FREE or a formula UNSAT is a
result, not a failure), 1 when verify-paper reports a failed check or
play-once-solve finds no equilibrium, 2 on unusable input.
"""

from __future__ import annotations

import argparse
import os as _os
import sys

from .equilibrium import (
    all_ne,
    brute_force_ne_free_profiles,
    construct_ne_play_once_c0,
    count_ne_free_profiles,
    improving_players,
)
from .errors import DggError, EmptyClause, NoNEFound
from .game import (
    DEFAULT_CELL_CAP,
    format_profile,
    format_strategy,
    normal_form,
    outcome_of,
)
from .gamefile import merged_game_file, parse_game_file, print_game_file
from .fixtures import verify_counterexample
from .graph import SccClass, condense, is_symmetric
from .prefs import cnd_c0, cnd_c22, rank_vector
from .sat import decode_model, encode, enumerate_models, solve, to_dimacs


def _cell_cap() -> int:
    value = _os.environ.get("DGG_CELL_CAP")
    return int(value) if value else DEFAULT_CELL_CAP


def _load(path: str):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise DggError(f"cannot read {path}: {exc}") from None
    return parse_game_file(text)


def _write_out(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _format_rank(r: tuple[int, ...]) -> str:
    return "(" + ", ".join(str(v) for v in r) + ")"


def _require_preferences(gf):
    if gf.preferences is None:
        raise DggError("this command needs a preferences section in the game file")
    return gf.preferences


def cmd_analyze(args) -> int:
    gf = _load(args.file)
    gs, os_ = gf.game, gf.outcome_set
    d = os_.decomposition
    print(f"vertices: {len(gs.graph.vertices)}")
    print(f"edges: {len(gs.graph.edges)}")
    print(f"players: {gs.players}")
    print(f"initial: {gs.initial}")
    print("components:")
    for j, comp in enumerate(d.components):
        line = f"  {j}: {{{', '.join(comp)}}} {d.classes[j]}"
        if d.classes[j] is not SccClass.TRANSIENT:
            line += f" -> {os_.of_component(j).label}"
        print(line)
    print("outcomes: " + " ".join(os_.labels))
    print(f"condensation: {len(condense(gs.graph, d).graph.edges)} edges")
    print(f"symmetric: {str(is_symmetric(gs.graph, gs.terminals, gs.initial)).lower()}")
    if gf.preferences is not None:
        print("preferences:")
        for p in gf.preferences.preferences:
            print(f"  {p}")
        print(f"r = {_format_rank(rank_vector(os_, gf.preferences))}")
        print(f"cnd_c0 = {str(cnd_c0(os_, gf.preferences)).lower()}")
        print(f"cnd_c22 = {str(cnd_c22(os_, gf.preferences)).lower()}")
    return 0


def cmd_rank(args) -> int:
    gf = _load(args.file)
    pp = _require_preferences(gf)
    print(f"r = {_format_rank(rank_vector(gf.outcome_set, pp))}")
    return 0


def cmd_normal_form(args) -> int:
    gf = _load(args.file)
    gs, os_ = gf.game, gf.outcome_set
    nf = normal_form(gs, os_, cap=_cell_cap())
    pp = gf.preferences
    rows = []
    for f in nf.iter_flat():
        x = nf.profile_at(f)
        outcome = nf.outcome_at(f).label
        improvers = sorted(improving_players(gs, os_, pp, x)) if pp else []
        rows.append((x, outcome, improvers))
    if args.format == "cells":
        for x, outcome, improvers in rows:
            sup = f"^{{{','.join(str(i) for i in improvers)}}}" if improvers else ""
            print(f"{format_profile(x, gs)} -> {outcome}{sup}")
    else:
        print("\t".join([f"player{i}" for i in range(1, gs.players + 1)] + ["outcome", "improvers"]))
        for x, outcome, improvers in rows:
            cols = [format_strategy(s, gs) for s in x.strategies]
            cols.append(outcome)
            cols.append(",".join(str(i) for i in improvers))
            print("\t".join(cols))
    return 0


def cmd_ne(args) -> int:
    gf = _load(args.file)
    gs, os_ = gf.game, gf.outcome_set
    pp = _require_preferences(gf)
    nf = normal_form(gs, os_, cap=_cell_cap())
    found = all_ne(gs, os_, pp, nf=nf, jobs=args.jobs)
    if found:
        for x in found:
            print(f"{format_profile(x, gs)} -> {outcome_of(gs, os_, x).label}")
        print(f"NE count: {len(found)}")
        return 0
    print("NE-FREE")
    for f in nf.iter_flat():
        x = nf.profile_at(f)
        witnesses = improving_players(gs, os_, pp, x)
        parts = [f"{i}={format_strategy(s, gs)}" for i, s in witnesses.items()]
        print(f"{format_profile(x, gs)} -> {nf.outcome_at(f).label} improvers: {'; '.join(parts)}")
    return 0


def cmd_merge(args) -> int:
    gf = _load(args.file)
    _write_out(print_game_file(merged_game_file(gf)), args.output)
    return 0


def cmd_brute(args) -> int:
    gf = _load(args.file)
    gs, os_ = gf.game, gf.outcome_set
    if args.count_only:
        count = count_ne_free_profiles(gs, os_, cell_cap=_cell_cap(), jobs=args.jobs)
    else:
        profiles = brute_force_ne_free_profiles(gs, os_, cell_cap=_cell_cap(), jobs=args.jobs)
        for pp in profiles:
            print(pp)
        count = len(profiles)
    print(f"ne-free profiles: {count}")
    return 0


def _certified(exc: EmptyClause) -> int:
    print(f"SOLVABLE-FOR-ALL: {exc}")
    return 0


def cmd_sat_encode(args) -> int:
    gf = _load(args.file)
    try:
        cnf = encode(gf.game, gf.outcome_set, cap=_cell_cap())
    except EmptyClause as exc:
        return _certified(exc)
    _write_out(to_dimacs(cnf, comments=not args.no_comments, dedup=args.dedup), args.output)
    return 0


def cmd_sat_solve(args) -> int:
    gf = _load(args.file)
    try:
        cnf = encode(gf.game, gf.outcome_set, cap=_cell_cap())
    except EmptyClause as exc:
        return _certified(exc)
    model = solve(cnf)
    if model is None:
        print("UNSAT")
        return 0
    print("SAT")
    for p in decode_model(cnf, model).preferences:
        print(p)
    return 0


def cmd_sat_enumerate(args) -> int:
    gf = _load(args.file)
    try:
        cnf = encode(gf.game, gf.outcome_set, cap=_cell_cap())
    except EmptyClause as exc:
        _certified(exc)
        print("models: 0")
        return 0
    count = 0
    for model in enumerate_models(cnf):
        print(decode_model(cnf, model))
        count += 1
        if args.limit is not None and count >= args.limit:
            break
    print(f"models: {count}")
    return 0


def cmd_play_once_solve(args) -> int:
    gf = _load(args.file)
    gs, os_ = gf.game, gf.outcome_set
    pp = _require_preferences(gf)
    try:
        x = construct_ne_play_once_c0(gs, os_, pp, cap=_cell_cap())
    except NoNEFound as exc:
        print(f"NO-NE: {exc}")
        return 1
    print(f"NE: {format_profile(x, gs)} -> {outcome_of(gs, os_, x).label}")
    return 0


def cmd_verify_paper(args) -> int:
    report = verify_counterexample()
    for line in report.lines():
        print(line)
    return 0 if report.all_passed else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="dgg",
        description="Deterministic graphical games: outcomes, equilibria, SAT certificates.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="components, outcomes, rank, condition flags")
    p.add_argument("file")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("rank", help="print the rank vector")
    p.add_argument("file")
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("normal-form", help="print the outcome table")
    p.add_argument("file")
    p.add_argument("--format", choices=("cells", "tsv"), default="cells")
    p.set_defaults(func=cmd_normal_form)

    p = sub.add_parser("ne", help="list all NE, or NE-FREE with witnesses")
    p.add_argument("file")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_ne)

    p = sub.add_parser("merge", help="emit the game with cyclic outcomes merged")
    p.add_argument("file")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_merge)

    p = sub.add_parser("brute", help="search all preference profiles for NE-free ones")
    p.add_argument("file")
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_brute)

    p = sub.add_parser("sat", help="CNF encoding commands")
    satsub = p.add_subparsers(dest="sat_command", required=True)
    q = satsub.add_parser("encode", help="emit DIMACS")
    q.add_argument("file")
    q.add_argument("-o", "--output")
    q.add_argument("--dedup", action="store_true")
    q.add_argument("--no-comments", action="store_true")
    q.set_defaults(func=cmd_sat_encode)
    q = satsub.add_parser("solve", help="solve the encoding, decode one profile")
    q.add_argument("file")
    q.set_defaults(func=cmd_sat_solve)
    q = satsub.add_parser("enumerate", help="decode every model")
    q.add_argument("file")
    q.add_argument("--limit", type=int)
    q.set_defaults(func=cmd_sat_enumerate)

    p = sub.add_parser("play-once-solve", help="construct an NE for play-once games")
    p.add_argument("file")
    p.set_defaults(func=cmd_play_once_solve)

    p = sub.add_parser("verify-paper", help="re-derive the bundled fixtures' properties")
    p.set_defaults(func=cmd_verify_paper)

    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DggError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def console_main() -> None:
    try:
        code = main()
        sys.stdout.flush()
    except BrokenPipeError:
        # Downstream (e.g. `head`) closed the pipe; suppress the traceback.
        devnull = _os.open(_os.devnull, _os.O_WRONLY)
        _os.dup2(devnull, sys.stdout.fileno())
        code = 1
    sys.exit(code)


if __name__ == "__main__":
    console_main()
