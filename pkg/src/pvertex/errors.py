"""Exception hierarchy shared by every module."""


class PropertyPError(ValueError):
    """Base class for all errors raised by this package."""


class DisconnectedInput(PropertyPError):
    pass


class NonSquare(PropertyPError):
    pass


class Singular(PropertyPError):
    pass


class SizeMismatch(PropertyPError):
    pass


class AsymmetricMatrix(PropertyPError):
    pass


class PatternError(PropertyPError):
    """Matrix support disagrees with the graph's edge set."""

    def __init__(self, message, position=None):
        super().__init__(message)
        self.position = position


class InvalidBipartition(PropertyPError):
    pass


class UnbalancedParts(PropertyPError):
    pass


class NotBipartite(PropertyPError):
    pass


class NotPerfect(PropertyPError):
    pass


class NotATree(PropertyPError):
    pass


class ParameterOutOfRange(PropertyPError):
    pass


class BadBailVertex(PropertyPError):
    pass


class BailBudgetExceeded(PropertyPError):
    pass


class InvalidAssignment(PropertyPError):
    pass


class UnverifiedInput(PropertyPError):
    pass


class ZeroCoupling(PropertyPError):
    pass


class ComponentTooSmall(PropertyPError):
    pass


class NotTreeCycleBlock(PropertyPError):
    pass


class NoConsecutiveSingletons(PropertyPError):
    pass


class SingularPoint(PropertyPError):
    pass


class MalformedInput(PropertyPError):
    """Unparseable graph or matrix document."""
