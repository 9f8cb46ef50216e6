"""Error types shared across the library.

Contract violations (bad arguments) raise plain ``ValueError``; the classes
here mark conditions a caller may want to handle programmatically.
"""


class CapacityError(Exception):
    """A degree cap or enumeration budget would be exceeded.

    Raised *before* any partial work is returned; budgets never truncate
    silently.
    """


class PrecisionError(Exception):
    """A computation needs more p-adic precision than the given spec carries."""


class IllFormedSeriesError(Exception):
    """A rational function is not expandable as a power series in Y.

    This signals a formula-construction bug (e.g. a numerator with negative
    Y-exponents after assembly), never a user error.
    """
