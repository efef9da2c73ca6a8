"""Exception hierarchy shared by all modules."""


class AutomataError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(AutomataError, ValueError):
    """Invalid input: out-of-range states/letters or a violated precondition."""


class NotIndependentError(DomainError):
    """A word set fails the independence condition.

    ``state`` is the first state whose image set differs from the common one.
    """

    def __init__(self, message: str, state: int | None = None):
        super().__init__(message)
        self.state = state


class NotOneClusterError(DomainError):
    """A letter's transition graph does not have a unique cycle."""

    def __init__(self, message: str, cycle_counts: dict[int, int] | None = None):
        super().__init__(message)
        self.cycle_counts = cycle_counts or {}


class NotSynchronizingError(DomainError):
    """The automaton admits no reset word.  ``max_reducible`` carries the
    maximal cardinality of reducible subsets of the range that was reached."""

    def __init__(self, message: str, max_reducible: int | None = None):
        super().__init__(message)
        self.max_reducible = max_reducible


class CapExceededError(AutomataError):
    """An exponential search refused to run beyond its configured size cap."""


class TheoryError(AutomataError):
    """An internal invariant that is mathematically guaranteed was violated.

    Seeing this exception means a bug (or a counterexample to a proved
    statement); it is never a user input problem.
    """


class ParseError(AutomataError):
    """Malformed input file; carries 1-based line and column numbers."""

    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
