"""Exception hierarchy shared by all modules."""


class QuadIndecError(Exception):
    """Base class for errors raised by this package."""


class OutOfScopeError(QuadIndecError, ValueError):
    """Input violates a precondition (perfect square, wrong residue class, ...)."""


class InvariantError(QuadIndecError, ArithmeticError):
    """An internal arithmetic invariant failed; indicates a bug or corrupt input."""


class BudgetError(QuadIndecError):
    """A configured resource limit was reached before the computation finished."""


class FactorizationError(BudgetError):
    """The probabilistic splitter ran out of budget before fully factoring n."""

    def __init__(self, n, partial=None):
        self.n = n
        self.partial = partial or {}
        super().__init__(f"could not factor {n} within budget (unfactored cofactor)")


class NonResidueError(QuadIndecError, ValueError):
    """The congruence x^2 = a (mod n) has no solution."""


class PeriodBudgetError(BudgetError):
    """The continued fraction period is longer than the caller allowed."""


class RootCountError(BudgetError):
    """Too many CRT root combinations to enumerate under the configured cap."""


class UndecidedError(QuadIndecError):
    """Interval refinement hit the precision cap without separating the two sides."""


class NoFamilyError(QuadIndecError, ValueError):
    """A period word admits no parametric family of discriminants."""
