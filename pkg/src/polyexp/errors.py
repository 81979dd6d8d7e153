"""Exception hierarchy shared by all polyexp modules."""


class PolyexpError(Exception):
    """Base class for every error raised by polyexp."""


class InputError(PolyexpError, ValueError):
    """Malformed or inconsistent input (CLI exit code 2)."""


class HypothesisError(PolyexpError):
    """A theorem's hypothesis does not hold for the given system (CLI exit code 1)."""


class OrderTooLarge(InputError):
    """Cyclotomic order beyond the configured degree cap."""


class SearchTooLarge(InputError):
    """Requested search grid exceeds the configured cardinality cap."""

    def __init__(self, cardinality, cap):
        super().__init__(f"search too large: {cardinality} grid points (cap {cap})")
        self.cardinality = cardinality
        self.cap = cap
