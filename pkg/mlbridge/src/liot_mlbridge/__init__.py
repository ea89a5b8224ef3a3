"""Array-in/array-out binding of the liotkit transform for deep
learning data loaders.

Training pipelines hand over a uint8 numpy array, (H, W) grayscale or
(H, W, 3) RGB, and get back a channel-first (4, H, W) uint8 tensor with
the plane order left, right, top, bottom. Bytes are identical to the
core library's output (and to the planes of CLI-written LIOT1
containers) for the same pixels.

Contiguous inputs are used as-is (the core never writes to its input);
non-contiguous buffers are copied once. The heavy lifting happens in
vectorized array primitives that drop the interpreter lock internally,
so parallel loader workers scale.
"""

import numpy as np

import liotkit
from liotkit import prepare_and_transform

__all__ = ["bridge_liot", "bridge_version", "BadShapeError", "BadDtypeError"]

__version__ = "0.1.0"


class BadShapeError(ValueError):
    """Input is not (H, W) or (H, W, 3)."""


class BadDtypeError(TypeError):
    """Input is not uint8."""


def _validated(array):
    arr = np.asarray(array)
    if arr.dtype != np.uint8:
        raise BadDtypeError(f"expected uint8 input, got {arr.dtype}")
    if arr.ndim == 2:
        h, w = arr.shape
    elif arr.ndim == 3 and arr.shape[2] == 3:
        h, w = arr.shape[:2]
    else:
        raise BadShapeError(f"expected (H, W) or (H, W, 3), got {arr.shape}")
    if h == 0 or w == 0:
        raise BadShapeError(f"zero-sized input {arr.shape}")
    if not arr.flags.c_contiguous:
        arr = np.ascontiguousarray(arr)
    return arr


def bridge_liot(array, gray_mode="green-channel", invert=False):
    """Transform one image array into its (4, H, W) uint8 code stack.

    Args:
        array: uint8 numpy array, (H, W) gray or (H, W, 3) RGB.
        gray_mode: "green-channel" or "luma", used for RGB inputs.
        invert: invert intensities first (bright-on-dark structures).

    Returns:
        (4, H, W) uint8 array, planes ordered left, right, top, bottom.

    Raises:
        BadShapeError, BadDtypeError: input fails validation.
    """
    arr = _validated(array)
    return prepare_and_transform(arr, gray_mode=gray_mode, invert=invert)


def bridge_version():
    """Core library version, for pipelines that pin behavior."""
    return liotkit.__version__
