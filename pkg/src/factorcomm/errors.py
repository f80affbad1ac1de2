"""Exception hierarchy shared by all factorcomm modules."""


class FactorCommError(Exception):
    """Base class for every error raised by this package."""


class DimensionMismatch(FactorCommError):
    """Operands have incompatible shapes."""


class InvalidParameter(FactorCommError):
    """A constructor or operation received an out-of-contract argument."""


class NotHermitian(FactorCommError):
    """An operation requiring a self-adjoint matrix received one that is not."""


class NotNormal(FactorCommError):
    """An operation requiring a normal matrix received one that is not."""


class ConvergenceFailure(FactorCommError):
    """An iterative decomposition did not converge."""


class SpectrumHit(FactorCommError):
    """A resolvent was requested too close to the spectrum."""


class EndpointOnSpectrum(FactorCommError):
    """An interval endpoint coincides with an eigenvalue."""


class ConditionFailed(FactorCommError):
    """The algebraic precondition of a construction does not hold."""


class VerificationFailed(FactorCommError):
    """An internal consistency check failed; indicates a numerics bug."""
