"""Shared exception types and the explicit unknown sentinel.

Three failure vocabularies are kept apart on purpose:

* input errors: the caller handed us something malformed (bad file, unknown
  vertex, overlapping sets).  These raise InputError.
* refusals: a stated hypothesis does not hold or an exact computation is
  over its size cap.  These raise HypothesisError (or SizeRefusal) and,
  when available, carry a certificate of the violation.
* hard errors: a construction guaranteed by a verified hypothesis failed.
  These raise TheoremViolationError and always indicate a bug on our side
  or a counterexample, so they must never be swallowed.

Search-based operations that run out of budget return UNKNOWN instead of
guessing; unknown is a value, not an exception, because downstream callers
are expected to branch on it.
"""
from __future__ import annotations


class InputError(ValueError):
    """Malformed input from the caller."""


class GraphParseError(InputError):
    """Text format violation, with the 1-based line number."""

    def __init__(self, message: str, line_no: int | None = None):
        self.line_no = line_no
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)


class HypothesisError(RuntimeError):
    """A required hypothesis failed; carries its name and any certificate."""

    def __init__(self, hypothesis: str, message: str = "", certificate=None):
        self.hypothesis = hypothesis
        self.certificate = certificate
        text = hypothesis if not message else f"{hypothesis}: {message}"
        super().__init__(text)


class SizeRefusal(HypothesisError):
    """Exact computation refused above its cap (use the bounded variants)."""


class TheoremViolationError(RuntimeError):
    """A construction failed although its verified hypotheses guarantee it."""


class Unknown:
    """Singleton result for searches that exhausted their budget."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "UNKNOWN"

    def __bool__(self) -> bool:
        return False


UNKNOWN = Unknown()


def is_unknown(value) -> bool:
    return value is UNKNOWN
