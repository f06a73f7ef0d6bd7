"""Exception types shared across the package."""


class ParPrivacyError(Exception):
    """Base class for all errors raised by this package."""


class TableFormatError(ParPrivacyError):
    """Malformed table, permutation, or hyper-rectangle data."""


class DistributionError(ParPrivacyError):
    """Distribution weights are malformed (negative, wrong length, bad sum)."""


class UnsupportedDimensionError(ParPrivacyError):
    """Operation is only implemented for a restricted number of parties."""


class SizeLimitError(ParPrivacyError):
    """Grid exceeds the configured size cap for an exhaustive computation."""


class NotBooleanTilingError(ParPrivacyError):
    """Perfect-protocol construction requires a two-valued table whose
    maximal monochromatic regions tile the grid."""


class PerfectCutMissingError(ParPrivacyError):
    """No non-splitting guillotine cut exists on a two-valued tiling block.

    This must never happen; raising instead of falling back keeps the
    constructor's guarantee honest.
    """


class ProtocolExecutionError(ParPrivacyError):
    """A protocol tree is invalid for the table it is run against."""


class BspInputError(ParPrivacyError):
    """BSP input rectangles overlap or fall outside the bounds."""


class FragmentBoundError(ParPrivacyError):
    """The BSP builder exceeded the guaranteed per-rectangle fragment bound.

    A violation means the builder itself is broken and must be fixed; it is
    never accepted silently.
    """


class GalleryError(ParPrivacyError):
    """Invalid parameters for a gallery generator."""
