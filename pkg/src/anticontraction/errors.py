class KernelError(Exception):
    """Base class for every error raised by the kernel."""

    exit_code = 1


class PosetError(KernelError):
    pass


class ValidationError(KernelError):
    """A piece of data violates a structural invariant."""


class NoLimit(KernelError):
    pass


class NoColimit(KernelError):
    pass


class CapabilityMissing(KernelError):
    """The category instance does not provide the requested construction."""

    exit_code = 3


class ParseError(KernelError):
    exit_code = 2


class MoveError(KernelError):
    pass
