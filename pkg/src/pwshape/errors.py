"""Exception hierarchy shared by the numerical and I/O layers."""


class PwShapeError(Exception):
    """Base class for all errors raised by :mod:`pwshape`."""


class DomainError(PwShapeError, ValueError):
    """Argument outside the mathematical domain of a function."""


class PoleError(DomainError):
    """A gamma-function factor hit a pole."""


class NotPositiveDefiniteError(DomainError):
    pass


class RankDeficientError(DomainError):
    pass


class SingularBlockError(DomainError):
    """The leading block V11 is numerically singular."""


class NumericalError(PwShapeError, ArithmeticError):
    """Base for failures of an iterative or truncated numerical method."""


class SeriesNonconvergenceError(NumericalError):
    pass


class QuadratureError(NumericalError):
    pass


class NoPlateauError(NumericalError):
    pass


class DegenerateSupportError(NumericalError):
    pass


class DataError(PwShapeError, ValueError):
    """Malformed or inconsistent landmark input."""


class ParseError(DataError):
    pass


class InconsistentLandmarksError(DataError):
    pass


class DensityEvaluationError(PwShapeError):
    """A per-specimen density failed; carries the specimen id."""

    def __init__(self, specimen_id, cause):
        super().__init__(f"specimen {specimen_id!r}: {cause}")
        self.specimen_id = specimen_id
        self.cause = cause
