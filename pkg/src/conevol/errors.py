"""Exception types shared across the library."""


class ConevolError(Exception):
    """Base class for all library-specific failures."""


class PoleError(ConevolError):
    """Evaluation of a rational function too close to a denominator zero."""


class NonConvergenceError(ConevolError):
    """An iterative solve (Newton polish, quadrature refinement) did not converge."""


class NotBracketedError(ConevolError):
    """The hyperbolic/spherical transition indicator never changed sign.

    Raised for cone angles outside the search window, and for family members
    that admit no hyperbolic cone structure at all (torus-knot members).
    """


class SelectionAmbiguityError(ConevolError):
    """More than one certified candidate survived geometric root selection."""

    def __init__(self, message, candidates=()):
        super().__init__(message)
        self.candidates = list(candidates)


class DegenerateLongitudeError(ConevolError):
    """Longitude eigenvalue undefined because the relevant matrix entry vanishes."""


class BranchError(ConevolError):
    """No branch of a multivalued inverse satisfied the required constraints."""


class PathBlockedError(ConevolError):
    """No admissible integration path: a singularity obstructs both detours."""


class QuadratureError(ConevolError):
    """Adaptive quadrature failed to reach the requested tolerance."""
