"""Exception types shared across the package."""


class PacError(Exception):
    """Base class for all errors raised by this package."""


class EmptyBoundary(PacError):
    pass


class DuplicateLabel(PacError):
    pass


class NonHyperbolicSurface(PacError):
    pass


class Unflippable(PacError):
    pass


class BadEdge(PacError):
    pass


class InvalidWalk(PacError):
    pass


class Inessential(PacError):
    """The drawn arc is isotopic into a single puncture."""


class NotSimple(PacError):
    """The drawn arc has a transverse self-crossing that cannot be removed."""


class FrameMismatch(PacError):
    pass


class InternalNonTermination(PacError):
    """A loop that must make progress did not; this is a bug signal."""


class UnknownLabel(PacError):
    pass


class LabelMismatch(PacError):
    pass


class NoSharedEdge(PacError):
    pass


class HypothesisViolated(PacError):
    pass


class CaseExhausted(PacError):
    """No surgery case applied even though one always should."""


class BoundTooLargeForMemory(PacError):
    pass


class VertexNotInBall(PacError):
    pass


class NoSuchLoop(PacError):
    pass


class DisconnectedSample(PacError):
    pass


class FamilyOutOfBall(PacError):
    pass


class EmptySubgraph(PacError):
    pass


class InvalidPartition(PacError):
    pass


class OrbitEscapesBall(PacError):
    pass


class ConfigError(PacError):
    pass
