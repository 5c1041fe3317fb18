"""Exception hierarchy shared by every module.

Input problems derive from KostkaError (a ValueError); failed internal checks
derive from AuditFailure (an AssertionError) and signal a bug, never bad input.
"""


class KostkaError(ValueError):
    """Base class for rejected inputs."""


class InvalidPartition(KostkaError):
    pass


class InvalidPair(KostkaError):
    pass


class InvalidSequence(KostkaError):
    pass


class InvalidInstance(KostkaError):
    pass


class ConfigError(KostkaError):
    pass


class SizeCapExceeded(KostkaError):
    def __init__(self, size, cap, what="boxes"):
        super().__init__(f"{what}={size} exceeds cap {cap}")
        self.size = size
        self.cap = cap


class WidthCapExceeded(SizeCapExceeded):
    def __init__(self, size, cap):
        super().__init__(size, cap, what="width")


class LengthCapExceeded(SizeCapExceeded):
    def __init__(self, size, cap):
        super().__init__(size, cap, what="length")


class RankCapExceeded(SizeCapExceeded):
    def __init__(self, size, cap):
        super().__init__(size, cap, what="rank")


class WidthTooSmall(KostkaError):
    pass


class NotAWitness(KostkaError):
    pass


class MalformedStarMatrix(KostkaError):
    pass


class ShapeError(KostkaError):
    pass


class AuditFailure(AssertionError):
    """An internal consistency check failed; carries the offending object."""

    def __init__(self, message, subject=None):
        super().__init__(message)
        self.subject = subject


class InconsistentExtremalityTests(AuditFailure):
    pass


class KgrInvariantError(AuditFailure):
    pass
