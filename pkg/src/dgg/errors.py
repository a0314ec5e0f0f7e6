"""Exception types shared across the package."""

from __future__ import annotations


class DggError(Exception):
    """Base class for all package-specific errors."""


class CapExceeded(DggError):
    """An enumeration would exceed its configured size cap."""


class UnknownOutcome(DggError):
    """An outcome label is not part of the preference order / outcome set."""


class NoCyclicOutcomes(DggError):
    """merge_cyclic was asked to merge an outcome set with no cyclic outcome."""


class LabelCollision(DggError):
    """Two distinct outcomes ended up with the same label."""


class InvalidGame(DggError):
    """A game structure failed validation; carries the issue list."""

    def __init__(self, issues):
        self.issues = list(issues)
        lines = "; ".join(str(i) for i in self.issues)
        super().__init__(f"invalid game: {lines}")


class PreconditionFailed(DggError):
    """An operation's precondition does not hold for the given arguments."""


class NoTerminalReachable(DggError):
    """No terminal vertex is reachable from the initial position."""


class NoNEFound(DggError):
    """The play-once construction found no equilibrium (a finding, not a bug)."""


class CyclicTournament(DggError):
    """A model's preference relation for some player is not acyclic."""


class EmptyClause(DggError):
    """The NE-free encoding produced an empty clause.

    This is a positive certificate: the offending situation admits no
    outcome-changing deviation, so it is an equilibrium under every
    preference profile and the game is solvable for all preferences.
    """

    def __init__(self, situation, message):
        self.situation = situation
        super().__init__(message)


class GameFileError(DggError):
    """A game file could not be parsed; message carries the line number."""

    def __init__(self, line_no, message):
        self.line_no = line_no
        super().__init__(f"line {line_no}: {message}")


class CycleLabelMismatch(GameFileError):
    """A declared cycle label does not match any outcome component."""


class DimacsError(DggError):
    """A DIMACS document is malformed."""
