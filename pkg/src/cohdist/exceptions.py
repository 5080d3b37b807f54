"""Exception hierarchy. Every error names the invariant it found violated."""


class CohDistError(ValueError):
    """Base class for all cohdist errors."""


class InvalidDistribution(CohDistError):
    pass


class NotHermitian(CohDistError):
    pass


class NotPSD(CohDistError):
    pass


class TraceNotOne(CohDistError):
    pass


class NotNormalized(CohDistError):
    pass


class InvalidPermutation(CohDistError):
    pass


class DimensionMismatch(CohDistError):
    pass


class DimensionOverflow(CohDistError):
    pass


class CliqueVerificationFailed(CohDistError):
    """A saturation component is not a clique; the tolerance is inconsistent with the input."""


class NotPure(CohDistError):
    pass


class ZeroWeight(CohDistError):
    pass


class NotDistillable(CohDistError):
    pass


class NotMajorized(CohDistError):
    pass


class NotTransformable(CohDistError):
    pass


class InvalidChannel(CohDistError):
    pass
