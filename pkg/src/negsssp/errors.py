"""Exception hierarchy."""


class NegSSSPError(Exception):
    """Base class for errors raised by this package."""


class GraphError(NegSSSPError, ValueError):
    """Malformed graph: endpoint out of range, weight guard violated, bad id."""


class NegativeWeightPresent(NegSSSPError, ValueError):
    """A routine that needs nonnegative weights got a negative one."""


class PartitionNotDag(NegSSSPError, ValueError):
    pass


class NegativeIntraPartEdge(NegSSSPError, ValueError):
    pass


class BudgetExhausted(NegSSSPError):
    """A step budget ran out, standing in for non-termination.

    ``certified`` is true when the routine proved it would never terminate
    (a label dropped further than any simple path allows), which only
    happens in the presence of a negative cycle.
    """

    def __init__(self, message="step budget exhausted", *, certified=False):
        super().__init__(message)
        self.certified = certified


class MonteCarloError(NegSSSPError):
    """Every Monte-Carlo attempt ran out of budget."""


class InternalError(NegSSSPError):
    """An internal check failed or the restart cap was hit."""


class ParseError(NegSSSPError, ValueError):
    pass
