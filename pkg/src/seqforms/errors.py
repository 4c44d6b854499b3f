"""Exception types shared across the package."""


class SeqFormsError(Exception):
    """Base class for domain errors."""


class DimensionMismatch(SeqFormsError):
    pass


class SupportOverflow(SeqFormsError):
    """A sequence term does not fit in the requested truncation."""


class NotPositiveDefinite(SeqFormsError):
    pass


class NotLowerSemiFrame(SeqFormsError):
    pass


class NotZeroClosed(SeqFormsError):
    pass


class UnknownScenario(SeqFormsError):
    pass


class DegenerateNormWarning(UserWarning):
    """Analysis operator has a nontrivial kernel; graph norm degenerates.

    Inf-sup constants are still computed, on the quotient by the kernel.
    """
