"""Exception types shared across the package."""


class SizeLimitError(ValueError):
    """A requested computation exceeds a hard size guard.

    Raised instead of silently attempting factorial- or exponential-size
    work (causal-order enumeration, brute-force Kraus sums).
    """


class ReductionError(RuntimeError):
    """The symbolic contraction engine got stuck on a word.

    Carries the offending word in ``word`` for post-mortem inspection.
    This indicates an internal inconsistency and should never trigger for
    well-formed inputs.
    """

    def __init__(self, message: str, word=None):
        super().__init__(message)
        self.word = word
