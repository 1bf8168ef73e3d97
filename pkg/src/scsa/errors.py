"""Exception hierarchy shared by all scsa modules."""


class SCSAError(Exception):
    """Base class for every error raised by this package."""


class InvalidSignal(SCSAError, ValueError):
    pass


class InvalidGrid(SCSAError, ValueError):
    pass


class InvalidParams(SCSAError, ValueError):
    pass


class InvalidInput(SCSAError, ValueError):
    pass


class DegenerateInput(SCSAError, ValueError):
    """The input makes a quantity undefined (zero curvature, zero spread...)."""


class PeakNotFound(SCSAError, ValueError):
    pass


class NumericalFailure(SCSAError, RuntimeError):
    pass


class InfiniteSNR(SCSAError, ArithmeticError):
    """Reconstruction matches the reference exactly, so the SNR is unbounded."""
