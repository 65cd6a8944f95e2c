from typing import Any, Optional


class CubicSurfaceError(Exception):
    """
    Base class of every failure raised by the library.

    Each failure carries a machine readable ``reason`` (its class name) and an
    optional ``witness`` describing where the failure was detected, so that the
    command line can write structured failure records.
    """

    exit_code = 1

    def __init__(self, message: str, witness: Optional[Any] = None) -> None:
        super().__init__(message)
        self.message = message
        self.witness = witness

    @property
    def reason(self) -> str:
        return type(self).__name__

    def to_json(self) -> dict:
        record = {"failure": self.reason, "message": self.message}
        if self.witness is not None:
            record["witness"] = self.witness
        return record


class MathematicalFailure(CubicSurfaceError):
    """A structured mathematical failure (exit code 2)."""

    exit_code = 2


class InputError(CubicSurfaceError, ValueError):
    """Malformed input or an unmet precondition (exit code 3)."""

    exit_code = 3


class DegenerateAlgebra(MathematicalFailure):
    """The modulus of an etale algebra is not squarefree."""


class NotABasis(MathematicalFailure):
    """The vectors handed to lattice reduction are linearly dependent."""


class DegenerateConfig(MathematicalFailure):
    """Six points that are not in general position."""


class NotDefinedHere(MathematicalFailure):
    """A rational map evaluated on its indeterminacy locus."""


class InternalInconsistency(MathematicalFailure):
    """An identity that must hold by construction was violated."""


class ZeroVector(MathematicalFailure):
    """A weighted projective point with all coordinates zero."""


class NoProperPentahedron(MathematicalFailure):
    """E = 0, so the surface has no proper Sylvester pentahedron."""


class UnexpectedKernel(MathematicalFailure):
    """A kernel that must be one-dimensional is not."""


class MultipleZeroes(MathematicalFailure):
    """The pentahedral quintic g(T) is not separable."""


class DescentDimensionMismatch(MathematicalFailure):
    """The descent space does not have dimension ten."""


class RelationTransportError(MathematicalFailure):
    """Transported cubic relations are not rational or not of rank 30."""


class NotFoundWithinBound(MathematicalFailure):
    """No usable rational point was found within the height bound."""


class InsufficientSamples(InputError):
    """Fewer samples than monomials in a relation-space computation."""


class InvalidFieldData(InputError):
    """Field data violating the Galois conditions."""


class NotOnVariety(InputError):
    """A point that does not satisfy the transported cubic relations."""
