"""LIOT1 container: on-disk format for 4-plane code images.

Layout (little-endian, fixed width):

    offset 0   4 bytes   magic "LIOT"
    offset 4   1 byte    version, 0x01
    offset 5   4 bytes   width,  u32le
    offset 9   4 bytes   height, u32le
    offset 13  4*W*H     planes left, right, top, bottom, each W*H raw
                         bytes in row-major order

Total file size is therefore 13 + 4*W*H bytes. The version byte is
reserved for a future neighbor-distance generalization.
"""

import struct

import numpy as np

from .errors import UnsupportedFormatError

MAGIC = b"LIOT"
VERSION = 1
HEADER = struct.Struct("<4sBII")


def write_container(path, planes):
    """Write a (4, H, W) uint8 plane stack to a LIOT1 file."""
    arr = np.ascontiguousarray(planes, dtype=np.uint8)
    if arr.ndim != 3 or arr.shape[0] != 4:
        raise ValueError(f"expected (4, H, W) planes, got shape {arr.shape}")
    _, h, w = arr.shape
    with open(path, "wb") as fh:
        fh.write(HEADER.pack(MAGIC, VERSION, w, h))
        fh.write(arr.tobytes())


def read_container(path):
    """Read a LIOT1 file back into a (4, H, W) uint8 array.

    Raises:
        UnsupportedFormatError: bad magic, version, or truncated payload.
    """
    with open(path, "rb") as fh:
        header = fh.read(HEADER.size)
        if len(header) != HEADER.size:
            raise UnsupportedFormatError(f"{path}: truncated header")
        magic, version, w, h = HEADER.unpack(header)
        if magic != MAGIC:
            raise UnsupportedFormatError(f"{path}: bad magic {magic!r}")
        if version != VERSION:
            raise UnsupportedFormatError(f"{path}: unsupported version {version}")
        payload = fh.read()
    expected = 4 * w * h
    if len(payload) != expected:
        raise UnsupportedFormatError(
            f"{path}: payload is {len(payload)} bytes, expected {expected}"
        )
    return np.frombuffer(payload, dtype=np.uint8).reshape(4, h, w).copy()
