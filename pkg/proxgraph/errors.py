"""
Exception types raised by the proxgraph library.

Every error is a ``ValueError``. The CLI maps ``ParseError`` to exit code 2
and every other ``ProxGraphError`` to exit code 1.
"""


class ProxGraphError(ValueError):
    """Base class for all domain errors."""

    def __init__(self, message, **details):
        super().__init__(message)
        self.details = details


class ParseError(ProxGraphError):
    """Input file is not valid JSON or does not follow the declared format."""


# metric spaces

class DimensionMismatch(ProxGraphError):
    pass


class AsymmetricMatrix(ProxGraphError):
    pass


class NegativeDistance(ProxGraphError):
    pass


class NonzeroDiagonal(ProxGraphError):
    pass


class ZeroOffDiagonal(ProxGraphError):
    pass


class DuplicateLabel(ProxGraphError):
    pass


class EmptySet(ProxGraphError):
    pass


class UnknownPoint(ProxGraphError):
    pass


class UnknownPart(ProxGraphError):
    pass


class NotUltrametric(ProxGraphError):
    pass


class NonpositiveShift(ProxGraphError):
    pass


class NotBijective(ProxGraphError):
    pass


# bipartite graphs

class PartsOverlap(ProxGraphError):
    pass


class EmptyPart(ProxGraphError):
    pass


class EdgeWithinPart(ProxGraphError):
    pass


class UnknownEndpoint(ProxGraphError):
    pass


class EdgesOnInfiniteEmptyClaim(ProxGraphError):
    pass


class EmptyGraph(ProxGraphError):
    pass


class TooLarge(ProxGraphError):
    pass


# realization

class NotCompletelyDecomposable(ProxGraphError):
    pass


class InvalidIndex(ProxGraphError):
    pass


class WrongFamilyKind(ProxGraphError):
    pass


# cyclic maps

class NotTotal(ProxGraphError):
    pass


class NotCyclic(ProxGraphError):
    pass


class PreconditionFailed(ProxGraphError):
    pass


class NotBestProximityPair(ProxGraphError):
    pass
