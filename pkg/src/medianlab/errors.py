"""Exception types shared across medianlab."""


class MedianlabError(Exception):
    """Base class for all library errors."""


class InvalidInput(MedianlabError, ValueError):
    """Input violates an operation's precondition."""


class BudgetExceeded(MedianlabError):
    """A construction or search outgrew its configured budget.

    ``partial`` carries whatever size or progress was reached.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class DisconnectedGraph(InvalidInput):
    pass


class InternalContradiction(MedianlabError):
    """A guaranteed object could not be produced; the input table is broken."""
