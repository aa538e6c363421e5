"""Exception types shared across the package."""


class DataError(Exception):
    """Bad input data: missing file, malformed row, empty corpus, no usable features."""


class NumericError(Exception):
    """Numerical failure: non-finite training loss, singular linear system."""
