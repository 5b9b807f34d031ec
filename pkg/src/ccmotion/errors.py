"""Exception types shared across the package.

Validation problems derive from ``ValidationError`` (CLI exit code 1),
size caps from ``CapExceeded`` (exit code 2) and failed internal soundness
assertions from ``SoundnessError`` (exit code 3).
"""

from __future__ import annotations


class CCMotionError(Exception):
    """Base class for all package errors."""


class ValidationError(CCMotionError, ValueError):
    pass


class NotSquare(ValidationError):
    pass


class VertexEdgeColorClash(ValidationError):
    pass


class PairingUndefined(ValidationError):
    pass


class UnusedColorId(ValidationError):
    pass


class NotCoherent(ValidationError):
    """Raised when some color triple count is not constant on a color class.

    ``witness`` is ``(i, j, t, (u1, v1), (u2, v2))``: both pairs have color t
    but a different number of w with c(u,w)=i and c(w,v)=j.
    """

    def __init__(self, witness, counts=None):
        self.witness = witness
        self.counts = counts
        i, j, t, a, b = witness
        msg = f"triple (i={i}, j={j}, t={t}) differs between pairs {a} and {b}"
        if counts is not None:
            msg += f" ({counts[0]} vs {counts[1]})"
        super().__init__(msg)


class NotHomogeneous(ValidationError):
    pass


class NotHomogeneousCoherent(ValidationError):
    pass


class NotPrimitive(ValidationError):
    pass


class NotRank4(ValidationError):
    pass


class WrongRank(ValidationError):
    pass


class NotClosedUnderPairing(ValidationError):
    pass


class SameVertex(ValidationError):
    pass


class DegreeTooLarge(ValidationError):
    pass


class BadAlpha(ValidationError):
    pass


class BadParams(ValidationError):
    pass


class NotRegular(ValidationError):
    pass


class HasTriangle(ValidationError):
    pass


class NotDistanceRegular(ValidationError):
    def __init__(self, msg, witness=None):
        self.witness = witness
        super().__init__(msg)


class NotTransitive(ValidationError):
    pass


class NotMonic(ValidationError):
    pass


class DegreeMismatch(ValidationError):
    pass


class NonNegativeTheta(ValidationError):
    pass


class NotSmallestEigenvalueMinus2(ValidationError):
    pass


class GeometryViolation(ValidationError):
    pass


class VertexNotInTwoLines(ValidationError):
    pass


class NotLineGraph(ValidationError):
    pass


class BaseHasTriangle(ValidationError):
    pass


class NotTriangular(ValidationError):
    pass


class HypothesisViolated(ValidationError):
    def __init__(self, which, detail=""):
        self.which = which
        super().__init__(f"hypothesis violated: {which}" + (f" ({detail})" if detail else ""))


class PreconditionViolated(ValidationError):
    pass


class BranchMismatch(ValidationError):
    pass


class NoSuchTriangle(ValidationError):
    pass


class UnknownCommand(ValidationError):
    pass


class CapExceeded(CCMotionError):
    pass


class TooLarge(CapExceeded):
    pass


class RankOverflow(CapExceeded):
    pass


class SoundnessError(CCMotionError, AssertionError):
    """A proven inequality failed on concrete data: signals a bug."""


class NoOutcome(SoundnessError):
    pass
