"""Exception types shared across the toolkit.

The CLI maps these onto its exit-code taxonomy, so new exception types
should subclass one of the groups below rather than raising bare
ValueError from library code.
"""


class LiotError(Exception):
    """Base class for all toolkit errors."""


class UnsupportedFormatError(LiotError):
    """Raster file exists but is not an 8-bit grayscale or 8-bit RGB image."""


class ZeroDimensionError(LiotError):
    """A requested image dimension is zero or negative."""


class DimensionMismatchError(LiotError):
    """Two rasters that must share dimensions do not."""


class NonPositiveGammaError(LiotError):
    """Gamma for a power-law lookup table must be > 0."""


class EmptyEvaluationRegionError(LiotError):
    """No pixels left to evaluate (empty field-of-view intersection)."""


class DegenerateLabelsError(LiotError):
    """Ranking metrics need at least one positive and one negative pixel."""


class EmptyGroundTruthError(LiotError):
    """Connectivity is undefined when the ground truth has no foreground."""


class UnknownDatasetError(LiotError):
    """Requested a builtin dataset preset that does not exist."""


class MissingPairError(LiotError):
    """A dataset image lacks its ground-truth (or configured FOV) partner."""


class ConfigError(LiotError):
    """Dataset config file is malformed."""
