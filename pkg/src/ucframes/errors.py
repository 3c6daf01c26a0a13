"""Exception types raised by ucframes."""


class FrameError(ValueError):
    """Base class for all ucframes errors."""


class NonSquareError(FrameError):
    pass


class NotHermitianError(FrameError):
    pass


class NotPositiveError(FrameError):
    pass


class NotInvertibleError(FrameError):
    pass


class NotBijectiveError(NotInvertibleError):
    pass


class LengthMismatchError(FrameError):
    pass


class DimensionMismatchError(FrameError):
    pass


class NotControlledFrameError(FrameError):
    pass


class ConvergenceError(FrameError, ArithmeticError):
    pass


class ParseError(FrameError):
    """Malformed system document."""


class ShapeError(FrameError):
    """System document with inconsistent dimensions."""
