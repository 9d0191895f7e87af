"""Exception hierarchy shared by every module in the package."""


class CurTangentError(Exception):
    """Base class for all package errors."""


class InvalidInputError(CurTangentError, ValueError):
    """Malformed input: non-finite entries, bad shapes, out-of-range indices."""


class DegenerateInputError(CurTangentError, ValueError):
    """Input for which a construction would divide by zero."""


class AdmissibilityError(CurTangentError):
    """The sampling pair does not capture the row or column space of M."""


class HypothesisViolationError(CurTangentError):
    """A perturbation exceeds the size for which a local bound is guaranteed."""


class ConstructionError(CurTangentError):
    """A test problem could not be built within the retry budget."""
