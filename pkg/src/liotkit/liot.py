"""Directional intensity-order transform: grayscale in, four 8-bit code
planes out.

For every pixel p and each of the four axis directions (left, right,
top, bottom), the transform walks outward 1 to 8 steps and records one
bit per step: bit i-1 is set iff p is strictly brighter than the
neighbor i pixels away in that direction. Out-of-bounds neighbors
contribute bit 0 ("no evidence of being darker than context"), and ties
contribute bit 0 as well. The result is a (4, H, W) uint8 stack in the
fixed plane order left, right, top, bottom.

Because the codes depend only on the pairwise ordering of intensities,
the output is invariant under any strictly increasing remapping of the
gray levels; see the perturb module for the test harness that exercises
this.

Two implementations are provided: a vectorized fast path and a literal
per-pixel/per-side/per-distance loop that serves as the correctness
oracle. They are contractually byte-identical.
"""

import numpy as np

from . import imgcore
from .imgcore import ensure_gray

# Plane order is frozen into the container format: left, right, top,
# bottom. "Top" is decreasing y (origin top-left).
PLANE_ORDER = ("left", "right", "top", "bottom")

# (dx, dy) unit offsets per side, same order as PLANE_ORDER.
SIDE_OFFSETS = ((-1, 0), (1, 0), (0, -1), (0, 1))

# Neighbors are visited at distances 1..MAX_DISTANCE; bit weight for
# distance i is 2**(i-1) (LSB = nearest neighbor).
MAX_DISTANCE = 8


def liot_transform(img):
    """Vectorized fast path. Returns a (4, H, W) uint8 array with planes
    ordered left, right, top, bottom."""
    arr = ensure_gray(img)
    h, w = arr.shape
    planes = np.zeros((4, h, w), dtype=np.uint8)
    left, right, top, bottom = planes
    for i in range(1, MAX_DISTANCE + 1):
        if i < w:
            gt = arr[:, i:] > arr[:, :w - i]
            left[:, i:] |= gt.astype(np.uint8) << (i - 1)
            lt = arr[:, :w - i] > arr[:, i:]
            right[:, :w - i] |= lt.astype(np.uint8) << (i - 1)
        if i < h:
            gt = arr[i:, :] > arr[:h - i, :]
            top[i:, :] |= gt.astype(np.uint8) << (i - 1)
            lt = arr[:h - i, :] > arr[i:, :]
            bottom[:h - i, :] |= lt.astype(np.uint8) << (i - 1)
    return planes


def liot_transform_naive(img):
    """Correctness oracle: the same contract as liot_transform, written
    as the most direct quadruple loop with no optimization."""
    arr = ensure_gray(img)
    h, w = arr.shape
    rows = arr.tolist()
    planes = np.zeros((4, h, w), dtype=np.uint8)
    for y in range(h):
        for x in range(w):
            center = rows[y][x]
            for side, (dx, dy) in enumerate(SIDE_OFFSETS):
                code = 0
                for i in range(1, MAX_DISTANCE + 1):
                    nx = x + dx * i
                    ny = y + dy * i
                    if 0 <= nx < w and 0 <= ny < h and center > rows[ny][nx]:
                        code |= 1 << (i - 1)
                planes[side, y, x] = code
    return planes


def prepare_and_transform(img, gray_mode="green-channel", invert=False):
    """Full input pipeline: gray conversion (for color inputs), optional
    inversion (for bright-on-dark curvilinear structures), then the
    directional transform."""
    arr = np.asarray(img)
    if arr.ndim == 3:
        arr = imgcore.to_gray(arr, gray_mode)
    else:
        arr = ensure_gray(arr)
    if invert:
        arr = imgcore.invert(arr)
    return liot_transform(arr)
