"""Exception hierarchy shared by every module."""

from __future__ import annotations


class MatroidError(Exception):
    """Base class for all errors raised by matroidkit."""


class AxiomViolation(MatroidError):
    def __init__(self, reason, witness=None):
        self.reason = reason
        self.witness = witness
        msg = reason if witness is None else f"{reason}: {witness}"
        super().__init__(msg)


class DuplicateLabel(MatroidError):
    pass


class UnknownLabel(MatroidError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class LabelCollision(MatroidError):
    pass


class NotABijection(MatroidError):
    pass


class SizeCapExceeded(MatroidError):
    pass


class GroundSetMismatch(MatroidError):
    pass


class NotAFlat(MatroidError):
    pass


class SameElement(MatroidError):
    pass


class LoopElement(MatroidError):
    pass


class NotAPartition(MatroidError):
    pass


class NotA3Separation(MatroidError):
    pass


class PinSpecViolation(MatroidError):
    pass


class PreconditionViolation(MatroidError):
    pass


class InputInvariantViolation(MatroidError):
    pass


class NoIncomparableWitness(MatroidError):
    pass


class UnsupportedField(MatroidError):
    pass


class BudgetExceeded(MatroidError):
    pass


class DimensionMismatch(MatroidError):
    pass
