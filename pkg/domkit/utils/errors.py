"""Exception hierarchy shared by all domkit modules."""


class DomkitError(Exception):
    """Base class for every error raised on purpose by domkit."""


class NumericsError(DomkitError):
    """A dense linear-algebra routine failed to converge or to meet its residual bound."""


class SingularLyapunovError(NumericsError):
    """Two eigenvalues of A sum to zero, so AᵀP + PA = -Q has no unique solution."""


class InconclusiveError(DomkitError):
    """A test cannot reach a verdict on the given data.

    Args:
        reason: short machine-readable reason, reported verbatim by the CLI.
    """

    def __init__(self, reason: str, detail: str = ""):
        self.reason = reason
        self.detail = detail
        super().__init__(f"{reason}: {detail}" if detail else reason)


class BoundaryError(InconclusiveError):
    """A pole or zero lies on the boundary of the shifted region."""


class GridTooCoarseError(InconclusiveError):
    """Phase accumulation along a sampled locus is not resolved by the grid."""

    def __init__(self, detail: str = ""):
        super().__init__("grid too coarse", detail)


class SpecError(DomkitError):
    """A system description file is malformed."""
