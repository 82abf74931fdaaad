"""Exception hierarchy shared across the package."""


class BackedgesError(Exception):
    """Base class for all errors raised by this package."""


class SizeOutOfRange(BackedgesError):
    """Vertex count outside the supported 1..64 range."""


class ReflexivePair(BackedgesError):
    """A beats-relation contains a loop (i beats i)."""


class AsymmetryViolation(BackedgesError):
    """A vertex pair has both or neither orientation set."""


class NumberingSizeMismatch(BackedgesError):
    """Numbering length does not match the host's vertex count."""


class InvalidWalk(BackedgesError):
    """Walk has equal or nonadjacent consecutive vertices."""


class UnknownName(BackedgesError):
    """Catalog lookup for a name that is not defined."""


class TooLarge(BackedgesError):
    """Input exceeds the documented exact-computation cap."""


class TooLargeForExactCanonicalization(TooLarge):
    """Canonical form requested above the factorial-search cap."""


class NotAPurePair(BackedgesError):
    """Claimed pure/anticomplete/complete pair fails validation."""


class NotAComponent(BackedgesError):
    """Position set is not a connected component of the graph."""


class BudgetExhausted(BackedgesError):
    """Search stopped by its budget before completing."""


class SearchFailed(BackedgesError):
    """Best-effort search finished without a witness.

    ``progress`` carries a human-readable account of how far it got.
    """

    def __init__(self, message: str, progress=None):
        super().__init__(message)
        self.progress = progress


class VertexNotInBlockade(BackedgesError):
    """Vertex does not lie in any block of the blockade."""


class RetryLimitExceeded(BackedgesError):
    """Random sampling exhausted its retry budget."""


class VerificationFailed(BackedgesError):
    """A constructed object failed one of its verification checks.

    ``report`` carries the full check-by-check record.
    """

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class UnknownSuite(BackedgesError):
    """run_suite called with an unknown suite name."""


class UnsupportedFormat(BackedgesError):
    """emit/parse called with an unsupported format name."""


class FormatError(BackedgesError):
    """Textual input does not match the documented format."""
