"""Exception hierarchy.

CapabilityError marks requests the library refuses on principle (wrong
input class for a route, enumeration too large), as opposed to invalid
input data (GraphValidationError) or bugs (InternalConsistencyError).
"""


class QGraphError(Exception):
    """Base class for all library errors."""


class GraphValidationError(QGraphError):
    """Input graph violates a structural invariant."""

    def __init__(self, report):
        self.report = report
        super().__init__(str(report))


class CapabilityError(QGraphError):
    """The requested computation is outside this route's capabilities."""


class IncommensurableLengthsError(CapabilityError):
    """Edge lengths admit no common rational measure; polynomial mode unusable."""


class OrbitCapExceededError(CapabilityError):
    """Pseudo-orbit enumeration exceeded the configured cap."""


class TrivialConditionError(QGraphError):
    """The resonance condition is a nonzero constant: no resonances exist."""


class GhostReductionError(QGraphError):
    """A hypothesis of the edge-deletion reduction is violated."""


class InternalConsistencyError(QGraphError):
    """Two redundant computations disagreed; indicates a numerical or logic bug."""
