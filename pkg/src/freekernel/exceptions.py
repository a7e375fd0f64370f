"""Exception hierarchy shared by all modules."""


class FreeKernelError(ValueError):
    """Base class for every error raised by :mod:`freekernel`."""


class InvalidWordError(FreeKernelError):
    """A letter lies outside ``1..N``."""


class PreconditionError(FreeKernelError):
    """An operation was called outside its domain."""


class ValidationError(FreeKernelError):
    """Malformed kernel or parameter data."""


class DegenerateKernelError(FreeKernelError):
    """The kernel is not strictly positive definite where it must be."""


class ContractionError(FreeKernelError):
    """A parameter or tuple entry is not a (strict) contraction."""


class NumericalConsistencyError(FreeKernelError):
    """A computed quantity left its admissible range beyond round-off."""


class InvarianceError(FreeKernelError):
    """The kernel is not invariant under left concatenation."""

    def __init__(self, message, triple=None, violation=None):
        super().__init__(message)
        self.triple = triple
        self.violation = violation


class DepthError(FreeKernelError):
    """A moment beyond the stored depth was requested."""


class ResourceError(FreeKernelError):
    """An enumeration request exceeds the supported bound."""
