"""Exception hierarchy.

Every domain error carries a short ``code`` (the class name) and a ``detail``
mapping so the CLI can emit it as machine-readable JSON.
"""

from __future__ import annotations

from typing import Any


class BidiError(Exception):
    """Base class for all domain errors raised by this package."""

    def __init__(self, message: str = "", **detail: Any) -> None:
        super().__init__(message or self.__class__.__name__)
        self.detail = detail

    @property
    def code(self) -> str:
        return self.__class__.__name__

    def to_json(self) -> dict[str, Any]:
        return {"error": self.code, "message": str(self), "detail": self.detail}


# graph construction
class LoopEdge(BidiError):
    pass


class UnknownVertex(BidiError):
    pass


class UnknownEdge(BidiError):
    pass


class DuplicateEdgeId(BidiError):
    pass


class FormatError(BidiError):
    pass


# trails
class BrokenIncidence(BidiError):
    pass


class RepeatedEdge(BidiError):
    pass


class SignClash(BidiError):
    pass


class JunctionSignClash(BidiError):
    pass


class EndpointMismatch(BidiError):
    pass


class InvalidTrail(BidiError):
    pass


class InvalidPath(InvalidTrail):
    pass


class NotAPath(InvalidTrail):
    pass


# matching
class NotPerfectMatching(BidiError):
    pass


class SameNode(BidiError):
    pass


# reachability / preconditions
class MissingRoot(BidiError):
    pass


class RootTarget(BidiError):
    pass


class SameVertex(BidiError):
    pass


class NotTrailReachable(BidiError):
    pass


class NotPathReachable(BidiError):
    pass


class NotReachable(BidiError):
    pass


class NotEdgeClean(BidiError):
    pass


class NotClean(BidiError):
    pass


class TargetIsRoot(BidiError):
    pass


class RootTargetEdge(BidiError):
    pass


class XXPathExists(BidiError):
    pass


class InvalidFamily(BidiError):
    pass


class NotSubgraph(BidiError):
    pass


class NotSpanningReachable(BidiError):
    pass


# internal-consistency failures: reaching one of these means a theorem-backed
# construction did not produce what it should have
class InternalInconsistency(BidiError):
    pass


class StalledDeletion(InternalInconsistency):
    pass


class InfeasibleLowerBounds(InternalInconsistency):
    pass


class ReconstructionFailed(InternalInconsistency):
    pass


# oracle
class TooLarge(BidiError):
    pass


class ConstraintUnsatisfiable(BidiError):
    pass
