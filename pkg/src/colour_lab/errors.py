"""Exception types shared across the package."""


class ColourLabError(Exception):
    """Base class for all package-specific errors."""


class UnknownVertex(ColourLabError):
    pass


class AdjacentIdentification(ColourLabError):
    """Raised when asked to identify two adjacent vertices."""


class MalformedGraph6(ColourLabError):
    """Bad graph6 input; carries the byte offset of the first bad byte."""

    def __init__(self, message, offset):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class PartialColouring(ColourLabError):
    """A colouring does not assign a colour to every vertex."""


class ImproperInput(ColourLabError):
    """An operation required a proper colouring but got a monochromatic edge."""


class ParamOutOfRange(ColourLabError):
    pass


class NoSchemeRecorded(ColourLabError):
    """No reference colouring is recorded for this gadget/variant."""


class NoForwardScheme(ColourLabError):
    """Witness translation is not offered for this construction."""


class PreconditionViolated(ColourLabError):
    """A reduction input fails the construction's stated input class."""


class InvalidOutputColouring(ColourLabError):
    """The colouring handed to witness_backward does not validate."""


class CapExceeded(ColourLabError):
    """A brute-force oracle was asked to exceed its configured cap."""


class BudgetExceeded(ColourLabError):
    """Search ran out of budget; carries the partial count/node totals."""

    def __init__(self, message, count=0, nodes=0):
        super().__init__(message)
        self.count = count
        self.nodes = nodes
