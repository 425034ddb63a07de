"""Exception types raised across the package."""


class HyperclassError(Exception):
    """Base class for every error raised by hyperclass."""


class InvalidPermutation(HyperclassError, ValueError):
    pass


class OrderCapExceeded(HyperclassError):
    pass


class LatticeCapExceeded(HyperclassError):
    pass


class NotSubgroup(HyperclassError):
    pass


class NotNormal(HyperclassError):
    def __init__(self, message: str, name: str | None = None):
        super().__init__(message)
        self.name = name


class NotSubgroupOfGroup(HyperclassError):
    def __init__(self, message: str, name: str | None = None):
        super().__init__(message)
        self.name = name


class ParseError(HyperclassError, ValueError):
    pass


class FormatError(HyperclassError, ValueError):
    pass


class PreconditionFailed(HyperclassError):
    pass
