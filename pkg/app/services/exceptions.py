class DeBruijnError(Exception):
    """Base class for every error raised by the cycle services"""


class ParameterError(DeBruijnError, ValueError):
    """Input outside the domain of an operation"""


class PosetError(ParameterError):
    """Poset input that is not a valid Hasse diagram, or a bad coloring"""


class CapExceededError(DeBruijnError):
    """Instance larger than the configured enumeration cap"""

    def __init__(self, what: str, size: int, cap: int):
        self.what = what
        self.size = size
        self.cap = cap
        super().__init__(f"{what} {size} exceeds the cap of {cap}")


class StepCapExceededError(DeBruijnError, RuntimeError):
    """A path routine ran past its step cap; never expected for valid parameters"""


class ConstructionError(DeBruijnError, RuntimeError):
    """Internal degree or connectivity violation found while building a cycle"""
