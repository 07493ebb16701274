"""Exception hierarchy for the mcastcap library."""


class McastcapError(Exception):
    """Base class for all library errors."""


class InvalidGraph(McastcapError):
    """Graph violates a structural invariant (dangling endpoint, self-loop, bad capacity)."""


class DisconnectedTerminals(McastcapError):
    """Some pair of terminals is not connected in the graph."""


class BridgeBetweenTerminals(McastcapError):
    """A cut-edge separates two terminals; the terminal connectivity is 1."""


class UnknownVertex(McastcapError):
    pass


class UnknownEdge(McastcapError):
    pass


class SameVertex(McastcapError):
    pass


class SameEdge(McastcapError):
    pass


class Disconnected(McastcapError):
    pass


class NotIncident(McastcapError):
    """The two edges do not share an endpoint (or the requested pivot)."""


class CutEdgeAtPivot(McastcapError):
    """A cut-edge is incident to the splitting pivot."""


class DegreeThree(McastcapError):
    """Pivot has unit-edge degree 3; disjoint admissible pairing is not guaranteed."""


class OddDegree(McastcapError):
    """Pivot has odd unit-edge degree; scale capacities by 2 first."""


class SearchExhausted(McastcapError):
    """Backtracking found no complete admissible splitting.

    Existence is guaranteed for even-degree pivots with no incident cut-edge,
    so hitting this error indicates a bug; the message carries a diagnostic dump.
    """


class InvalidPacking(McastcapError):
    pass


class TooManyTrees(McastcapError):
    """Minimal Steiner tree enumeration exceeded the requested limit."""


class TooManyVertices(McastcapError):
    """Instance too large for exhaustive partition enumeration."""


class UndefinedGain(McastcapError):
    """Gain bound denominator is zero at this connectivity."""


class BadSlot(McastcapError):
    """Relay slot index outside the cycle's gap range."""


class Underconnected(McastcapError):
    """Randomly generated instance has terminal connectivity below 2."""
