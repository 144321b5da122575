"""Shared primitives: failure records, input validation, check outcomes.

Every verification routine in this package reports a falsified condition
as a `Failure` value (stable code plus the first witness found) rather
than raising, so that expected negative results stay first-class data.
Exceptions are reserved for malformed input and for conditions that the
constructions themselves guarantee.
"""
from __future__ import annotations

from dataclasses import dataclass, field

IndexTable = tuple[tuple[int, ...], ...]
PartialTable = tuple[tuple[int | None, ...], ...]
BoolMatrix = tuple[tuple[bool, ...], ...]


class MalformedInputError(ValueError):
    """Structurally broken input: wrong shape, index out of range, etc."""


class BudgetExceeded(RuntimeError):
    """An enumeration or search would exceed its configured budget."""


@dataclass(frozen=True)
class Failure:
    """A falsified condition.

    `code` is a stable machine-readable identifier, `witness` the
    lexicographically first tuple of element indices exhibiting the
    violation, and `detail` an optional human-oriented note.
    """

    code: str
    witness: tuple = ()
    detail: str = ""

    def __str__(self) -> str:
        parts = [self.code]
        if self.witness:
            parts.append(f"witness={self.witness}")
        if self.detail:
            parts.append(self.detail)
        return " ".join(parts)


class VerificationError(RuntimeError):
    """A condition guaranteed by construction failed to verify.

    Raised when one of the structural theorems this package re-derives
    (round trips, expansion laws, cross-checked formulas) is falsified
    by the implementation; this always signals a bug or corrupt input,
    never an expected negative result.
    """

    def __init__(self, failure: Failure):
        super().__init__(str(failure))
        self.failure = failure


@dataclass(frozen=True)
class Check:
    """Named outcome of one verification step."""

    name: str
    failure: Failure | None = None

    @property
    def ok(self) -> bool:
        return self.failure is None


def all_ok(checks) -> bool:
    return all(c.ok for c in checks)


def freeze_table(rows, expect: int | None = None, allow_none: bool = False):
    """Validate and freeze an n-by-n table of element indices.

    Entries must lie in [0, n); `allow_none` additionally admits None
    for partially defined tables.  Raises MalformedInputError otherwise.
    """
    frozen = tuple(tuple(row) for row in rows)
    n = len(frozen)
    if expect is not None and n != expect:
        raise MalformedInputError(f"table has {n} rows, expected {expect}")
    for i, row in enumerate(frozen):
        if len(row) != n:
            raise MalformedInputError(f"row {i} has length {len(row)}, expected {n}")
        for j, v in enumerate(row):
            if v is None:
                if not allow_none:
                    raise MalformedInputError(f"entry ({i},{j}) is undefined in a total table")
                continue
            if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < n:
                raise MalformedInputError(f"entry ({i},{j})={v!r} out of range [0,{n})")
    return frozen


def freeze_bool_matrix(rows, expect: int) -> BoolMatrix:
    frozen = tuple(tuple(bool(v) for v in row) for row in rows)
    if len(frozen) != expect or any(len(r) != expect for r in frozen):
        raise MalformedInputError(f"relation must be {expect}x{expect}")
    return frozen


def freeze_indices(values, n: int, what: str = "index") -> tuple[int, ...]:
    out = tuple(values)
    for v in out:
        if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < n:
            raise MalformedInputError(f"{what} {v!r} out of range [0,{n})")
    return out
