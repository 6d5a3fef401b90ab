"""Exception types raised across the package."""


class OmegaTrackError(ValueError):
    """Base class for every error raised by omegatrack."""


# scene
class NonPositiveDepth(OmegaTrackError):
    pass


class NegativeSigma(OmegaTrackError):
    pass


# numdiff
class TooFewSamples(OmegaTrackError):
    pass


class NonUniformSampling(OmegaTrackError):
    pass


class NonMonotonicTime(OmegaTrackError):
    pass


# estimator
class ZeroDisplacement(OmegaTrackError):
    pass


class CoincidentDisplacements(OmegaTrackError):
    pass


class NonPositiveOmegaSq(OmegaTrackError):
    pass


class TimestampMismatch(OmegaTrackError):
    pass


# segmentation
class EmptyInput(OmegaTrackError):
    pass


# trackio
class MalformedHeader(OmegaTrackError):
    pass


class EmptyFile(OmegaTrackError):
    pass


class NonNumericField(OmegaTrackError):
    def __init__(self, line, field=None):
        self.line = line
        self.field = field
        msg = f"non-numeric field on line {line}"
        if field is not None:
            msg += f": {field!r}"
        super().__init__(msg)


class DuplicateTimestamp(OmegaTrackError):
    def __init__(self, point_id, t):
        self.point_id = point_id
        self.t = t
        super().__init__(f"duplicate timestamp {t!r} for point {point_id!r}")
