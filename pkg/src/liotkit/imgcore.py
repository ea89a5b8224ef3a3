"""Image containers, raster I/O, gray conversion, inversion, and resizing.

Conventions used throughout the toolkit:

- Rasters are numpy arrays in row-major order with origin at the top-left
  corner: axis 0 is y (grows downward), axis 1 is x (grows rightward).
  "Top" therefore means decreasing y.
- Grayscale images are 2D arrays, canonically uint8 in [0, 255]. Float
  arrays in [0, 255] are accepted by order-based consumers (they arise
  from lookup-table remapping).
- Color images are (H, W, 3) uint8 arrays with interleaved R, G, B.
- Binary masks are 2D bool arrays.

Third-party dependencies:
- Pillow decodes/encodes PNG and binary PGM/PPM; everything else
  (bilinear resize, nearest-neighbor resize) is implemented here because
  its exact byte behavior is part of the toolkit's contract.
"""

import numpy as np
from PIL import Image

from .errors import DimensionMismatchError, UnsupportedFormatError, ZeroDimensionError

# Luma weights for the general-purpose color fallback (retinal pipelines
# use the green channel instead).
LUMA_WEIGHTS = (0.299, 0.587, 0.114)

GRAY_MODES = ("green-channel", "luma")


def _normalize_gray_mode(mode):
    if mode in ("green", "green-channel"):
        return "green-channel"
    if mode == "luma":
        return "luma"
    raise ValueError(f"unknown gray mode {mode!r}; expected one of {GRAY_MODES}")


def ensure_gray(img):
    """Validate a grayscale raster (2D, values in [0, 255]) and return it."""
    arr = np.asarray(img)
    if arr.ndim != 2:
        raise DimensionMismatchError(f"expected 2D grayscale array, got shape {arr.shape}")
    if arr.size == 0:
        raise ZeroDimensionError("grayscale image has a zero dimension")
    return arr


def ensure_color(img):
    """Validate an RGB raster ((H, W, 3) uint8) and return it."""
    arr = np.asarray(img)
    if arr.ndim != 3 or arr.shape[2] != 3:
        raise DimensionMismatchError(f"expected (H, W, 3) color array, got shape {arr.shape}")
    if arr.shape[0] == 0 or arr.shape[1] == 0:
        raise ZeroDimensionError("color image has a zero dimension")
    return arr


def ensure_mask(mask):
    """Validate a binary mask (2D bool) and return it."""
    arr = np.asarray(mask)
    if arr.ndim != 2:
        raise DimensionMismatchError(f"expected 2D mask, got shape {arr.shape}")
    if arr.dtype != np.bool_:
        raise TypeError(f"mask must be bool, got dtype {arr.dtype}")
    return arr


def load_image(path):
    """Load an 8-bit raster from PNG or binary PGM/PPM (or any format
    Pillow decodes to plain 8-bit gray/RGB).

    Returns:
        2D uint8 array for grayscale sources, (H, W, 3) uint8 for RGB.

    Raises:
        FileNotFoundError: the path does not exist.
        UnsupportedFormatError: bit depth is not 8, or the image uses a
            palette, alpha, or other unsupported mode.
    """
    try:
        im = Image.open(path)
    except FileNotFoundError:
        raise
    except Exception as exc:
        raise UnsupportedFormatError(f"{path}: cannot decode raster ({exc})") from exc
    with im:
        if im.mode == "L":
            return np.asarray(im, dtype=np.uint8)
        if im.mode == "RGB":
            return np.asarray(im, dtype=np.uint8)
        raise UnsupportedFormatError(
            f"{path}: unsupported mode {im.mode!r}; only 8-bit grayscale (L) and 8-bit RGB are accepted"
        )


def save_image(path, img):
    """Write a gray or color raster. Format follows the file suffix:
    .png (gray or color), .pgm (binary P5, gray only), .ppm (binary P6,
    color only)."""
    arr = np.asarray(img)
    if arr.ndim == 2:
        if arr.dtype != np.uint8:
            arr = np.clip(np.asarray(arr, dtype=np.float64), 0, 255)
            arr = np.floor(arr + 0.5).astype(np.uint8)
        im = Image.fromarray(arr, mode="L")
    elif arr.ndim == 3 and arr.shape[2] == 3:
        im = Image.fromarray(arr.astype(np.uint8), mode="RGB")
    else:
        raise DimensionMismatchError(f"cannot save array of shape {arr.shape}")
    suffix = str(path).lower()
    if suffix.endswith(".pgm") and im.mode != "L":
        raise UnsupportedFormatError("PGM holds grayscale only")
    if suffix.endswith(".ppm") and im.mode != "RGB":
        raise UnsupportedFormatError("PPM holds RGB only")
    im.save(path)


def load_mask(path, threshold=127):
    """Load a binary mask stored as an 8-bit raster; values > threshold
    are foreground."""
    arr = load_image(path)
    if arr.ndim != 2:
        raise UnsupportedFormatError(f"{path}: masks must be single-channel")
    return arr > threshold


def save_mask(path, mask):
    """Write a binary mask as an 8-bit PNG with values {0, 255}."""
    arr = ensure_mask(mask)
    save_image(path, np.where(arr, 255, 0).astype(np.uint8))


def to_gray(img, mode="green-channel"):
    """Reduce an RGB image to grayscale.

    mode "green-channel" copies the G plane byte-for-byte; "luma"
    computes round(0.299 R + 0.587 G + 0.114 B) with round-half-up.
    """
    arr = ensure_color(img)
    mode = _normalize_gray_mode(mode)
    if mode == "green-channel":
        return arr[:, :, 1].copy()
    r, g, b = LUMA_WEIGHTS
    luma = r * arr[:, :, 0].astype(np.float64) + g * arr[:, :, 1] + b * arr[:, :, 2]
    return np.clip(np.floor(luma + 0.5), 0, 255).astype(np.uint8)


def invert(img):
    """Reflect intensities around the gray range: v -> 255 - v."""
    arr = ensure_gray(img)
    if arr.dtype == np.uint8:
        return (255 - arr.astype(np.int16)).astype(np.uint8)
    return 255.0 - np.asarray(arr, dtype=np.float64)


def _axis_nearest(dst_size, src_size):
    # Pixel-center alignment: take the source pixel whose cell contains
    # the destination center.
    scale = src_size / dst_size
    idx = np.floor((np.arange(dst_size) + 0.5) * scale).astype(np.intp)
    return np.clip(idx, 0, src_size - 1)


def _axis_bilinear(dst_size, src_size):
    # Source coordinate = (dst + 0.5) * scale - 0.5, clamped to the valid
    # range so border pixels extend outward.
    scale = src_size / dst_size
    coords = (np.arange(dst_size) + 0.5) * scale - 0.5
    coords = np.clip(coords, 0.0, float(src_size - 1))
    lo = np.floor(coords).astype(np.intp)
    lo = np.clip(lo, 0, max(src_size - 2, 0))
    hi = np.minimum(lo + 1, src_size - 1)
    frac = coords - lo
    return lo, hi, frac


def resize(img, target_w, target_h):
    """Resize a raster to (target_w, target_h).

    Intensity images (gray or color) use bilinear interpolation with
    pixel-center alignment and round-half-up to integers; bool masks use
    nearest-neighbor so the output stays strictly binary. Resizing a mask
    to its own size is the identity.

    Raises:
        ZeroDimensionError: target_w or target_h is not positive.
    """
    if target_w <= 0 or target_h <= 0:
        raise ZeroDimensionError(f"resize target {target_w}x{target_h} must be positive")
    arr = np.asarray(img)
    if arr.ndim not in (2, 3):
        raise DimensionMismatchError(f"cannot resize array of shape {arr.shape}")
    src_h, src_w = arr.shape[:2]
    if src_h == 0 or src_w == 0:
        raise ZeroDimensionError("source image has a zero dimension")

    if arr.dtype == np.bool_:
        iy = _axis_nearest(target_h, src_h)
        ix = _axis_nearest(target_w, src_w)
        return arr[np.ix_(iy, ix)]

    ylo, yhi, fy = _axis_bilinear(target_h, src_h)
    xlo, xhi, fx = _axis_bilinear(target_w, src_w)
    data = arr.astype(np.float64)
    top = data[ylo]
    bot = data[yhi]
    if arr.ndim == 3:
        fy = fy[:, None, None]
        fxw = fx[None, :, None]
    else:
        fy = fy[:, None]
        fxw = fx[None, :]
    vert = top * (1.0 - fy) + bot * fy
    out = vert[:, xlo] * (1.0 - fxw) + vert[:, xhi] * fxw
    return np.clip(np.floor(out + 0.5), 0, 255).astype(np.uint8)
