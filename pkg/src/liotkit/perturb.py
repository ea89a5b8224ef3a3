"""Monotone contrast perturbations for exercising order invariance.

The order-based transforms are invariant under any remapping of gray
levels that preserves strict ordering on the values actually present in
an image. This module generates such remappings as 256-entry lookup
tables:

- gamma_lut builds power-law tables. Rounding to integers can merge
  adjacent levels, so a gamma table is not necessarily strict; its
  is_strict flag says whether it is.
- random_strict_lut builds strictly increasing float tables,
  deterministic in the seed, for the invariance suite. (A strictly
  increasing 256-entry table confined to the *integers* 0..255 could
  only be the identity, hence float values.)
- swap_lut exchanges two levels, deliberately breaking monotonicity,
  as the negative control.

Only strict tables are admitted as invariance witnesses; non-strict
tables can create ties that legitimately change strict comparisons.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import NonPositiveGammaError
from .imgcore import ensure_gray

LUT_SIZE = 256


@dataclass(frozen=True)
class IntensityLut:
    """A 256-entry intensity remapping with values in [0, 255].

    Values may be integers or floats; is_strict reports whether the
    table is strictly increasing, which is what the invariance suite
    requires globally. A non-strict table can still serve as a valid
    invariance witness on a particular image if it is injective on the
    gray levels present there (see is_injective_on).
    """

    table: np.ndarray = field(repr=False)
    is_strict: bool = field(init=False)

    def __post_init__(self):
        table = np.asarray(self.table)
        if table.shape != (LUT_SIZE,):
            raise ValueError(f"LUT must have {LUT_SIZE} entries, got shape {table.shape}")
        if table.min() < 0 or table.max() > 255:
            raise ValueError("LUT values must lie in [0, 255]")
        table = table.copy()
        table.setflags(write=False)
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "is_strict", bool(np.all(np.diff(table) > 0)))

    def is_injective_on(self, img):
        """True if the table maps the gray levels present in img to
        distinct outputs (sufficient for order preservation when the
        table is non-decreasing)."""
        values = np.unique(np.asarray(img, dtype=np.intp).ravel())
        mapped = self.table[values]
        return len(np.unique(mapped)) == len(values)


def identity_lut():
    return IntensityLut(np.arange(LUT_SIZE, dtype=np.uint8))


def gamma_lut(gamma):
    """Power-law table: table[i] = round(255 * (i/255)**gamma).

    Raises:
        NonPositiveGammaError: gamma <= 0.
    """
    if gamma <= 0:
        raise NonPositiveGammaError(f"gamma must be positive, got {gamma}")
    levels = np.arange(LUT_SIZE, dtype=np.float64) / 255.0
    table = np.floor(255.0 * np.power(levels, gamma) + 0.5)
    return IntensityLut(np.clip(table, 0, 255).astype(np.uint8))


def random_strict_lut(seed):
    """Strictly increasing float table, deterministic in seed.

    Built from cumulative positive increments rescaled to span exactly
    [0, 255], so strictness holds by construction.
    """
    rng = np.random.default_rng(seed)
    increments = rng.random(LUT_SIZE) + 1e-6
    table = np.cumsum(increments)
    table = (table - table[0]) / (table[-1] - table[0]) * 255.0
    lut = IntensityLut(table)
    assert lut.is_strict
    return lut


def swap_lut(a, b):
    """Identity table with levels a and b exchanged. Non-monotone by
    construction; used as the negative control in invariance tests."""
    table = np.arange(LUT_SIZE, dtype=np.uint8)
    table[a], table[b] = table[b], table[a]
    return IntensityLut(table)


def apply_lut(img, lut):
    """Pointwise table lookup. The output dtype follows the table
    (uint8 tables keep images uint8; float tables produce float
    images), and dimensions are preserved."""
    arr = ensure_gray(img)
    return lut.table[np.asarray(arr, dtype=np.intp)]


def save_lut(path, lut):
    """Serialize a table as a 256-line text file, one value per line."""
    with open(path, "w", encoding="ascii") as fh:
        for value in lut.table.tolist():
            fh.write(f"{value!r}\n")


def load_lut(path):
    """Read a 256-line LUT text file back into an IntensityLut."""
    with open(path, "r", encoding="ascii") as fh:
        values = [line.strip() for line in fh if line.strip()]
    if len(values) != LUT_SIZE:
        raise ValueError(f"{path}: expected {LUT_SIZE} lines, got {len(values)}")
    if any("." in v or "e" in v or "E" in v for v in values):
        return IntensityLut(np.array([float(v) for v in values]))
    return IntensityLut(np.array([int(v) for v in values], dtype=np.uint8))
