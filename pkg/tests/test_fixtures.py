"""Bundled examples, the expected-table data file, and the check report."""

import dataclasses
from collections import Counter

from dgg import (
    Preference,
    PreferenceProfile,
    annotated_table,
    blackmail,
    build_outcomes,
    counterexample,
    validate,
    verify_counterexample,
)


def test_counterexample_game_is_valid_and_table_complete():
    cx = counterexample()
    assert validate(cx.game) == []
    assert len(cx.expected_table) == 192
    outcome_counts = Counter(outcome for outcome, _ in cx.expected_table.values())
    assert outcome_counts == {"a1": 65, "a2": 46, "c1": 16, "c2": 28, "c3": 37}
    assert all(imp for _, imp in cx.expected_table.values())
    assert all(imp <= {1, 2, 3} for _, imp in cx.expected_table.values())


def test_annotated_table_matches_bundled_data():
    cx = counterexample()
    os = cx.outcome_set()
    assert annotated_table(cx.game, os, cx.preferences) == cx.expected_table


def test_verify_report_passes_and_formats():
    report = verify_counterexample()
    assert report.all_passed
    lines = report.lines()
    assert len(lines) == 10
    assert all(line.startswith("PASS (") for line in lines[:9])
    assert [line[6] for line in lines[:9]] == list("abcdefghi")
    assert lines[-1] == "all checks passed"


def test_verify_detects_wrong_preferences():
    cx = counterexample()
    mutated = dataclasses.replace(
        cx,
        preferences=PreferenceProfile(
            (
                Preference(1, ("a2", "c3", "c2", "c1", "a1")),  # a1/c1 swapped
                cx.preferences.for_player(2),
                cx.preferences.for_player(3),
            )
        ),
    )
    report = verify_counterexample(cx=mutated)
    assert not report.all_passed
    failed = {line[6] for line in report.lines() if line.startswith("FAIL")}
    assert "e" in failed  # table annotations no longer match
    assert report.lines()[-1] == "SOME CHECKS FAILED"


def test_verify_detects_corrupt_expected_table():
    cx = counterexample()
    table = dict(cx.expected_table)
    key = next(iter(table))
    outcome, improvers = table[key]
    table[key] = ("a1" if outcome != "a1" else "a2", improvers)
    report = verify_counterexample(cx=dataclasses.replace(cx, expected_table=table))
    by_key = {c.key: c for c in report.checks}
    assert not by_key["e"].passed
    assert not report.all_passed


def test_verify_detects_structural_change():
    cx = counterexample()
    graph = cx.game.graph
    pruned = dataclasses.replace(
        graph, edges=tuple(e for e in graph.edges if e != ("u2", "u1"))
    )
    report = verify_counterexample(
        cx=dataclasses.replace(cx, game=dataclasses.replace(cx.game, graph=pruned))
    )
    by_key = {c.key: c for c in report.checks}
    assert not by_key["a"].passed


def test_verify_detects_wrong_blackmail_expectations():
    bx = blackmail()
    mutated = dataclasses.replace(
        bx, expected_ne=("s->t | v->t''", "s->v | v->t'")
    )
    report = verify_counterexample(bx=mutated)
    by_key = {c.key: c for c in report.checks}
    assert not by_key["i"].passed


def test_blackmail_fixture_contents():
    bx = blackmail()
    assert validate(bx.game) == []
    os = build_outcomes(bx.game)
    assert os.labels == ("t", "t'", "t''")
    assert bx.expected_ne == ("s->v | v->t'", "s->t | v->t''")
    assert bx.expected_ne_after_deletion == ("s->v | v->t'",)


def test_fixture_caching_returns_same_object():
    assert counterexample() is counterexample()
    assert blackmail() is blackmail()
