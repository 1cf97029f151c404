"""Exception types shared across the library."""


class OrthowaveError(Exception):
    """Base class for all library errors."""


class UnknownFilter(OrthowaveError):
    def __init__(self, name):
        super().__init__(f"unknown filter name: {name!r}")
        self.name = name


class EmptyFilter(OrthowaveError):
    pass


class FilterLongerThanBlock(OrthowaveError):
    pass


class LengthMismatch(OrthowaveError):
    pass


class IndexOutOfRange(OrthowaveError):
    pass


class SizeMismatch(OrthowaveError):
    pass


class SizeOverflow(OrthowaveError):
    pass


class DegenerateEstimate(OrthowaveError):
    pass


class ZeroEnergy(OrthowaveError):
    pass


class UndefinedForN1(OrthowaveError):
    pass


class UnknownSignal(OrthowaveError):
    def __init__(self, name):
        super().__init__(f"unknown signal name: {name!r}")
        self.name = name


class ConstantSignal(OrthowaveError):
    pass


class BadLength(OrthowaveError):
    pass


class NonSquare(OrthowaveError):
    pass


class NotPowerOfTwo(OrthowaveError):
    pass


class MalformedHeader(OrthowaveError):
    pass


class TruncatedData(OrthowaveError):
    pass


class UnsupportedMagic(OrthowaveError):
    pass


class RecipeSyntaxError(OrthowaveError):
    """Recipe string could not be parsed; `position` is the 0-based offset."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class ReplicateFailure(OrthowaveError):
    """A Monte Carlo replicate raised; carries the replicate index."""

    def __init__(self, replicate, cause):
        super().__init__(f"replicate {replicate} failed: {cause}")
        self.replicate = replicate
