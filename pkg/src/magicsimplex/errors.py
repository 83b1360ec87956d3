"""Exception types shared across the package."""


class MagicSimplexError(Exception):
    """Base class for all library errors."""


class UnsupportedDimensionError(MagicSimplexError):
    """Local dimension outside the supported set."""


class DimensionMismatchError(MagicSimplexError):
    """Matrix or coordinate shape inconsistent with the requested operation."""


class NonHermitianError(MagicSimplexError):
    """Input tagged Hermitian fails the Hermiticity tolerance."""


class OracleDisagreementError(MagicSimplexError):
    """Closed-form and matrix-oracle verdicts disagree outside the boundary band."""


class UnknownPredicateError(MagicSimplexError):
    """Boolean expression references a predicate absent from the tally."""


class UnknownReferenceError(MagicSimplexError):
    """Requested name is not in the exact-reference catalog."""


class EmptyTallyError(MagicSimplexError):
    """Probabilities requested from a tally with no feasible points."""


class CorruptCheckpointError(MagicSimplexError):
    """Checkpoint file failed version or integrity validation."""


class RegionEmptyError(MagicSimplexError):
    """No point satisfying the requested region was found within the raw budget."""


class NoSignChangeError(MagicSimplexError):
    """Bisection bracket endpoints do not straddle the target."""


class ZeroAlphaError(MagicSimplexError):
    """A beta formula would divide by a vanishing alpha parameter."""


class MalformedCertificateError(MagicSimplexError):
    """Separable-decomposition certificate violates its schema."""


class NoSeparableSplitError(MagicSimplexError):
    """Best-separable-approximation search exhausted its restarts."""
