"""Classical 3x3 census transform baseline.

Each pixel gets an 8-bit code from its 3x3 window: the eight neighbors
are visited in raster order (NW, N, NE, W, E, SW, S, SE), and bit k
(LSB = first neighbor) is set iff the center is strictly brighter than
that neighbor. Out-of-bounds neighbors contribute bit 0, matching the
boundary policy of the directional transform, and the comparison
direction (center > neighbor) mirrors it too.

The visit order is frozen for reproducibility; any fixed order is
equivalent up to a bit permutation.
"""

import numpy as np

from .imgcore import ensure_gray

# Raster-order 3x3 neighbor offsets as (dx, dy); bit k corresponds to
# NEIGHBOR_OFFSETS[k].
NEIGHBOR_OFFSETS = (
    (-1, -1), (0, -1), (1, -1),
    (-1, 0), (1, 0),
    (-1, 1), (0, 1), (1, 1),
)


def census_transform(img):
    """Compute the 3x3 census code image. Returns a 2D uint8 array of
    the input's shape."""
    arr = ensure_gray(img)
    h, w = arr.shape
    codes = np.zeros((h, w), dtype=np.uint8)
    for k, (dx, dy) in enumerate(NEIGHBOR_OFFSETS):
        # Center pixels whose neighbor at (dx, dy) is in bounds.
        cy0, cy1 = max(0, -dy), min(h, h - dy)
        cx0, cx1 = max(0, -dx), min(w, w - dx)
        if cy0 >= cy1 or cx0 >= cx1:
            continue
        center = arr[cy0:cy1, cx0:cx1]
        neighbor = arr[cy0 + dy:cy1 + dy, cx0 + dx:cx1 + dx]
        codes[cy0:cy1, cx0:cx1] |= (center > neighbor).astype(np.uint8) << k
    return codes
