"""Exception types raised by the passivenode library."""


class PassiveNodeError(Exception):
    """Base class for all library errors."""


class DimensionMismatch(PassiveNodeError):
    """Matrix dimensions are not conformable."""


class SingularResolvent(PassiveNodeError):
    """sI - A (or zI - Ad) is singular to working precision."""


class NotSquare(PassiveNodeError):
    """Operation requires an equal number of inputs and outputs."""


class OmegaInSpectrum(PassiveNodeError):
    """The requested i*omega lies in the spectrum of A."""


class ASSViolated(PassiveNodeError):
    """The colocation resolvent identity B*(iwI+A*)^-1 = C(iwI-A)^-1 fails."""


class NotESAD(PassiveNodeError):
    """A + A* = -Q with Q >= 0 does not hold."""


class NotColocated(PassiveNodeError):
    """C = B* (in the state inner product) does not hold."""


class NotSelfAdjoint(PassiveNodeError):
    """Matrix expected to be self-adjoint is not."""


class NotSelfAdjointDissipative(PassiveNodeError):
    """A = A* <= 0 does not hold."""


class AlphaInSpectrum(PassiveNodeError):
    """Cayley parameter alpha lies in the spectrum of A."""


class AlphaNotRightHalfPlane(PassiveNodeError):
    """Cayley parameter alpha must satisfy Re(alpha) > 0."""


class MinusOneEigenvalue(PassiveNodeError):
    """-1 is an eigenvalue of Ad: no continuous-time generator exists."""


class NonPositiveAlpha(PassiveNodeError):
    """Laguerre parameter alpha must satisfy Re(alpha) > 0."""


class NotImpedancePassive(PassiveNodeError):
    """Operation requires an impedance-passive node."""


class SingularIPlusKD(PassiveNodeError):
    """I + k*D is singular; diagonal transform undefined."""


class SingularIMinusKD(PassiveNodeError):
    """I - K*D is singular; feedback inadmissible at finite dimension."""


class KappaOutOfRange(PassiveNodeError):
    """Feedback gain kappa is outside the open interval (0, kappa0)."""


class NotAlmostPassive(PassiveNodeError):
    """The shifted node Sigma_E fails impedance-passivity certification."""


class NotContraction(PassiveNodeError):
    """A does not generate a contraction semigroup (WA + A*W <= 0 fails)."""


class LambdaInOpenLoopSpectrum(PassiveNodeError):
    """Spectrum-gate point lies in the open-loop spectrum."""


class GridPointInSpectrum(PassiveNodeError):
    """Positive-real scan grid point lies in the spectrum of A."""


class SingularA0(PassiveNodeError):
    """Stiffness matrix A0 is singular."""


class SingularM(PassiveNodeError):
    """Damping matrix M is singular."""


class RootFindingFailure(PassiveNodeError):
    """Bracketed root search for beam mode frequencies failed."""


class NonFiniteState(PassiveNodeError):
    """Simulation produced a non-finite state (blow-up)."""


class ParseError(PassiveNodeError):
    """Input file is not valid JSON."""


class SchemaError(PassiveNodeError):
    """Input file does not match the expected schema."""
