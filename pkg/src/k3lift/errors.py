"""Exception hierarchy shared by every module.

Two families matter to callers.  ``InputError`` means the data itself is
malformed (bad shapes, mismatched rings, unparseable payloads) and maps to
CLI exit code 1.  ``PreconditionError`` means the data is well formed but a
mathematical precondition fails (wild order, non-unit pivot, no convergence)
and maps to CLI exit code 2.
"""

from __future__ import annotations


class K3LiftError(Exception):
    """Base class for every error raised by this package."""

    @property
    def code(self) -> str:
        """Machine-readable error code: the exception class name."""
        return type(self).__name__


class InputError(K3LiftError):
    """Malformed or inconsistent input data."""


class ContextMismatch(InputError):
    """Operands live over different ring contexts."""


class DimensionMismatch(InputError):
    """Vector or matrix shapes do not line up."""


class PreconditionError(K3LiftError):
    """A documented mathematical precondition does not hold."""


class NonUnit(PreconditionError):
    """Inversion of an element with positive valuation."""


class NotTame(PreconditionError):
    """The order N is divisible by the residue characteristic p."""


class NotWeaklyTame(NotTame):
    """The order of the action on the slope-above-one piece is divisible by p."""


class InsufficientResidueField(PreconditionError):
    """N-th roots of unity require N | p^m - 1; enlarge the residue degree m."""


class NonSimpleRoot(PreconditionError):
    """Newton iteration needs f'(x0) to be a unit."""


class BadPairing(PreconditionError):
    """The pairing u.v must be a unit for the isotropic combination."""


class NotNearIsotropic(PreconditionError):
    """The norm u.u must be divisible by p before correction."""


class NonUnitPivot(PreconditionError):
    """Orthogonalization or elimination hit a pivot of positive valuation."""


class PrecisionLoss(PreconditionError):
    """A kernel or quotient is not well defined at the working precision."""


class DegenerateForm(PreconditionError):
    """The bilinear form is degenerate where a nondegenerate one is required."""


class ValuationViolation(PreconditionError):
    """A coordinate fails its required divisibility by p."""


class NotEigenvector(PreconditionError):
    """The supplied residue vector is not an eigenvector of the reduced matrix."""


class HodgeLineNotEigen(NotEigenvector):
    """The Hodge line is not an eigenline of the reduced isometry."""


class ProjectionCollapse(PreconditionError):
    """An averaging projector annihilated a vector it should preserve."""


class SymplecticInput(PreconditionError):
    """The non-symplectic builder received an action trivial on the Hodge line."""


class NotSymplectic(PreconditionError):
    """The symplectic builder received an action moving the Hodge line."""


class IndependenceFailure(PreconditionError):
    """Hodge line and ample class are residually dependent (Artin invariant 1)."""


class RankTooSmall(PreconditionError):
    """The fixed eigenspace is too small to host the construction."""


class NoUnitPartner(PreconditionError):
    """No vector with unit pairing against the lifted line is available."""


class NoConvergence(PreconditionError):
    """An iteration exhausted its budget without reaching a fixed point."""


class OrderViolation(InputError):
    """A declared order is not the exact multiplicative order of the matrix."""
