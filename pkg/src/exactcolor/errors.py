"""Exception types shared across the package."""


class ExactColorError(Exception):
    """Base class for all package errors."""


class InvalidInput(ExactColorError):
    """Arguments outside a documented precondition."""


# --- number theory ---

class NotCoprime(ExactColorError):
    """Modular inverse requested for non-coprime arguments."""


class NoSuchPower(ExactColorError):
    """Every prime power in the product divides the given difference."""


class AmbiguousThreshold(ExactColorError):
    """A product landed within floating-point slop of the search threshold."""


# --- graph model ---

class GraphError(ExactColorError):
    pass


class SelfLoop(GraphError):
    pass


class DuplicateEdge(GraphError):
    pass


class ColorOutOfRange(GraphError):
    pass


class UnusedColor(GraphError):
    def __init__(self, color):
        super().__init__(f"color {color} declared but never used")
        self.color = color


class VertexOutOfRange(GraphError):
    pass


class ParseError(ExactColorError):
    """Malformed or non-canonical graph file."""


# --- randomized generators ---

class RetriesExhausted(ExactColorError):
    pass


class BudgetTooLarge(ExactColorError):
    """Exhaustive enumeration would exceed the hard subset budget."""


class NTooSmall(ExactColorError):
    pass


class TooFewSets(ExactColorError):
    pass


# --- constructions ---

class NotSpecialCase(ExactColorError):
    """(c, m) does not fall in the even q = k-2 branch."""


class EdgeConflict(ExactColorError):
    """Two duplicated-color pairs claim the same edge."""

    def __init__(self, edge, colors):
        super().__init__(f"edge {edge} claimed by colors {colors}")
        self.edge = edge
        self.colors = colors


class PairOverlap(ExactColorError):
    """Two 4-sets in a family share an edge (should be impossible)."""


class PreconditionViolated(ExactColorError):
    pass


# --- oracle ---

class TooLarge(ExactColorError):
    """Graph too big for exhaustive subset enumeration."""


class MInvalid(ExactColorError):
    pass
