class BergeSatError(Exception):
    """Base class for errors raised by bergesat."""


class HypergraphFormatError(BergeSatError, ValueError):
    pass


class SizeLimitError(BergeSatError, ValueError):
    """An exact routine was asked to run above its configured size cap."""


class SearchBudgetExceeded(BergeSatError):
    """The containment search ran out of nodes before reaching a decision.

    The answer is INDETERMINATE; callers must not treat it as "free".
    """

    def __init__(self, budget, nodes):
        super().__init__(f"search budget of {budget} nodes exhausted after {nodes} nodes")
        self.budget = budget
        self.nodes = nodes


class UnsupportedCase(BergeSatError):
    """No row of the case table applies to the (F, k) pair."""


class ConstructionError(BergeSatError, ValueError):
    pass


class NotSaturatedError(BergeSatError):
    pass


class SaturationNotFound(BergeSatError):
    """No saturated host exists within the edge cap."""

    def __init__(self, m_cap):
        super().__init__(f"no saturated host with at most {m_cap} edges")
        self.m_cap = m_cap


class ExtractionError(BergeSatError):
    """Tight-path extraction failed; indicates a bug, never a bound certificate."""
