"""Exception types raised by purity_lens."""


class PurityLensError(ValueError):
    """Base class for invalid input or an estimation that cannot proceed."""


class ZeroSpreadError(PurityLensError):
    """A sample group has no spread, so no bandwidth can be derived from it."""


class DegenerateAnchorError(PurityLensError):
    """The two anchor curves used for reconstruction are identical."""


class NoBoundaryError(PurityLensError):
    """The line through two anchor curves never leaves the simplex on one side."""


class BudgetExceededError(PurityLensError):
    """A brute-force search would exceed its configured work budget."""
