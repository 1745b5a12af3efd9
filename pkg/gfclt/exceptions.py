class GfcltError(Exception):
    """Base class for every error raised by gfclt"""


class UsageError(GfcltError):
    """Bad input or configuration; the CLI maps these to exit code 1"""


class KernelSpecError(UsageError):
    pass


class EnumerationLimitError(UsageError):
    pass


class NumericalError(GfcltError):
    """A computation could not be completed; the CLI maps these to exit code 2"""


class DivisionImpossibleError(NumericalError):
    pass


class BranchError(NumericalError):
    pass


class SeriesOrderError(NumericalError):
    pass


class SeriesUnavailableError(NumericalError):
    pass


class SingularKernelError(NumericalError):
    pass


class KernelDomainError(NumericalError):
    pass


class StencilError(KernelDomainError):
    pass


class RootTrackingError(NumericalError):
    pass


class QuadratureDomainError(NumericalError):
    pass
