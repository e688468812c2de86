"""Exception hierarchy shared by every engine component.

Each exception carries an ``exit_code`` used by the command line front end:
1 for invalid user input, 2 for exhausted budgets and 3 for a failed internal
invariant.
"""

from typing import Any, Dict


class SchemeError(Exception):
    """Base class for all engine errors."""

    exit_code: int = 1

    def __init__(self, message: str, **context: Any):
        super().__init__(message)
        self.message = message
        self.context: Dict[str, Any] = context

    def to_dict(self) -> Dict[str, Any]:
        """Machine readable form used in CLI error payloads."""
        return {
            "error": self.__class__.__name__,
            "message": self.message,
            "context": {key: _plain(value) for key, value in self.context.items()},
        }


def _plain(value: Any) -> Any:
    if isinstance(value, (list, tuple)):
        return [_plain(item) for item in value]
    if isinstance(value, (int, str, float, bool)) or value is None:
        return value
    return str(value)


# User errors


class InvalidType(SchemeError):
    """A type sequence violates one of the type clauses."""

    def __init__(self, message: str, k: int, clause: str, **context: Any):
        super().__init__(message, k=k, clause=clause, **context)
        self.k = k
        self.clause = clause


class IncompatiblePartition(SchemeError):
    """Some partition cell misses some root size under the schedule."""

    def __init__(self, message: str, cell: int, missing_r: int, **context: Any):
        super().__init__(message, cell=cell, missing_r=missing_r, **context)
        self.cell = cell
        self.missing_r = missing_r


class NotMember(SchemeError):
    """The set is not a member of the scheme."""


class RankZero(SchemeError):
    """Rank-zero members have no canonical decomposition."""


class RankMismatch(SchemeError):
    """Two members were expected to have equal rank."""


class NotSubscheme(SchemeError):
    """The transported set is not a member contained in the source set."""


class NonBinaryType(SchemeError):
    """The construction needs a type with n_k = 2 at every level."""


class TypeTooSmall(SchemeError):
    """The branching numbers are below the bound a construction needs."""

    def __init__(self, message: str, k: int, required: int, actual: int, **context: Any):
        super().__init__(message, k=k, required=required, actual=actual, **context)
        self.k = k
        self.required = required
        self.actual = actual


class PreconditionViolation(SchemeError):
    """An operation was called outside its precondition."""


class BoundViolation(SchemeError):
    """A marker bound required by a projection does not hold."""


class DemandUnsatisfiable(SchemeError):
    """A dense-set demand cannot be met by the current fragment."""


class UnknownSuite(SchemeError):
    """No verification suite is registered under the requested name."""


# Budget errors


class BudgetExceeded(SchemeError):
    """A configured computation budget was exhausted."""

    exit_code = 2


class LevelTooDeep(BudgetExceeded):
    """Materializing the requested level would exceed the element budget."""


class ScanBudgetExceeded(BudgetExceeded):
    """A finite scan would visit more candidates than allowed."""


class NoWitnessInBudget(BudgetExceeded):
    """No witness was found within the configured search levels."""


# Internal invariant violations


class InvariantViolation(SchemeError):
    """A checked structural property failed."""

    exit_code = 3


class NonIntegerQuotient(InvariantViolation):
    """A piece-index quotient was not an exact integer."""
