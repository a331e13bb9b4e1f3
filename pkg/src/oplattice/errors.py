"""Exception types raised across the package."""


class DuplicateAbscissa(ValueError):
    pass


class NonHalfIntegerArgument(ValueError):
    """q-lattices are only evaluated where ``2s`` is an integer."""


class DegenerateSampling(RuntimeError):
    """No set of distinct lattice abscissae found for realising D or S."""


class DivisionByZeroInFormula(ZeroDivisionError):
    """A recurrence formula has a genuine pole: some required d_k vanishes."""


class InsufficientMoments(ValueError):
    pass


class TableTooShort(ValueError):
    pass


class InversionUndefined(ZeroDivisionError):
    """The (B0, B1, C1, C2) inversion divides by C2 = 0."""


class IndexOutOfRange(IndexError):
    pass


class InvalidParameters(ValueError):
    pass
