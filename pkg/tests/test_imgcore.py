"""Raster I/O, gray conversion, inversion, and resize behavior."""

import io

import numpy as np
import pytest
from PIL import Image

from liotkit import imgcore
from liotkit.errors import UnsupportedFormatError, ZeroDimensionError


def write_pgm(path, width, height, payload):
    path.write_bytes(b"P5\n%d %d\n255\n" % (width, height) + bytes(payload))


class TestLoadImage:
    def test_pgm_decode_identity(self, tmp_path):
        p = tmp_path / "tiny.pgm"
        write_pgm(p, 2, 2, [0, 255, 128, 64])
        arr = imgcore.load_image(p)
        assert arr.shape == (2, 2)
        assert arr.dtype == np.uint8
        assert arr.tolist() == [[0, 255], [128, 64]]

    def test_rgb_png_decode_identity(self, tmp_path):
        p = tmp_path / "one.png"
        Image.fromarray(np.array([[[10, 20, 30]]], dtype=np.uint8), "RGB").save(p)
        arr = imgcore.load_image(p)
        assert arr.shape == (1, 1, 3)
        assert arr[0, 0].tolist() == [10, 20, 30]

    def test_16bit_png_rejected(self, tmp_path):
        p = tmp_path / "deep.png"
        Image.fromarray(np.array([[1000, 2000]], dtype=np.uint16)).save(p)
        with pytest.raises(UnsupportedFormatError):
            imgcore.load_image(p)

    def test_16bit_pgm_rejected(self, tmp_path):
        p = tmp_path / "deep.pgm"
        p.write_bytes(b"P5\n1 1\n65535\n\x01\x00")
        with pytest.raises(UnsupportedFormatError):
            imgcore.load_image(p)

    def test_palette_png_rejected(self, tmp_path):
        p = tmp_path / "pal.png"
        im = Image.fromarray(np.zeros((2, 2), dtype=np.uint8)).convert("P")
        im.save(p)
        with pytest.raises(UnsupportedFormatError):
            imgcore.load_image(p)

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            imgcore.load_image(tmp_path / "nope.png")

    def test_pgm_write_roundtrip(self, tmp_path):
        g = np.array([[0, 255], [128, 64]], dtype=np.uint8)
        p = tmp_path / "g.pgm"
        imgcore.save_image(p, g)
        assert p.read_bytes()[:2] == b"P5"  # binary variant
        assert np.array_equal(imgcore.load_image(p), g)

    def test_ppm_write_roundtrip(self, tmp_path):
        c = np.array([[[10, 20, 30], [200, 100, 50]]], dtype=np.uint8)
        p = tmp_path / "c.ppm"
        imgcore.save_image(p, c)
        assert p.read_bytes()[:2] == b"P6"
        assert np.array_equal(imgcore.load_image(p), c)

    def test_mask_roundtrip(self, tmp_path):
        rng = np.random.default_rng(3)
        mask = rng.random((9, 7)) > 0.5
        p = tmp_path / "mask.png"
        imgcore.save_mask(p, mask)
        stored = imgcore.load_image(p)
        assert set(np.unique(stored).tolist()) <= {0, 255}
        assert np.array_equal(imgcore.load_mask(p), mask)


class TestToGray:
    def test_green_channel_copies_g_plane(self):
        rng = np.random.default_rng(0)
        img = rng.integers(0, 256, (13, 11, 3), dtype=np.uint8)
        assert np.array_equal(imgcore.to_gray(img, "green-channel"), img[:, :, 1])

    def test_green_example(self):
        img = np.array([[[10, 20, 30]]], dtype=np.uint8)
        assert imgcore.to_gray(img, "green-channel")[0, 0] == 20

    def test_luma_example(self):
        img = np.array([[[10, 20, 30]]], dtype=np.uint8)
        # round(0.299*10 + 0.587*20 + 0.114*30) = round(18.15) = 18
        assert imgcore.to_gray(img, "luma")[0, 0] == 18

    def test_black_pixel_both_modes(self):
        img = np.zeros((1, 1, 3), dtype=np.uint8)
        assert imgcore.to_gray(img, "green-channel")[0, 0] == 0
        assert imgcore.to_gray(img, "luma")[0, 0] == 0

    def test_luma_range_and_rounding(self):
        img = np.full((2, 2, 3), 255, dtype=np.uint8)
        assert imgcore.to_gray(img, "luma").max() == 255


class TestInvert:
    def test_values(self):
        img = np.array([[0, 255, 20]], dtype=np.uint8)
        assert imgcore.invert(img).tolist() == [[255, 0, 235]]

    def test_involution(self):
        rng = np.random.default_rng(1)
        img = rng.integers(0, 256, (20, 30), dtype=np.uint8)
        assert np.array_equal(imgcore.invert(imgcore.invert(img)), img)

    def test_constant(self):
        img = np.full((4, 4), 128, dtype=np.uint8)
        assert np.all(imgcore.invert(img) == 127)


class TestResize:
    def test_stare_target_dims(self):
        img = np.zeros((605, 700), dtype=np.uint8)
        out = imgcore.resize(img, 554, 479)
        assert out.shape == (479, 554)

    def test_chasedb1_target_dims(self):
        img = np.zeros((960, 999, 3), dtype=np.uint8)
        out = imgcore.resize(img, 584, 561)
        assert out.shape == (561, 584, 3)

    def test_mask_same_size_identity(self):
        rng = np.random.default_rng(2)
        mask = rng.random((2, 2)) > 0.5
        assert np.array_equal(imgcore.resize(mask, 2, 2), mask)

    def test_mask_stays_boolean(self):
        rng = np.random.default_rng(4)
        mask = rng.random((37, 23)) > 0.7
        for tw, th in [(10, 10), (23, 37), (80, 61), (1, 1)]:
            out = imgcore.resize(mask, tw, th)
            assert out.dtype == np.bool_
            assert out.shape == (th, tw)

    def test_gray_same_size_identity(self):
        rng = np.random.default_rng(5)
        img = rng.integers(0, 256, (19, 12), dtype=np.uint8)
        assert np.array_equal(imgcore.resize(img, 12, 19), img)

    def test_constant_stays_constant(self):
        img = np.full((10, 14), 77, dtype=np.uint8)
        assert np.all(imgcore.resize(img, 31, 9) == 77)

    def test_zero_dimension_rejected(self):
        img = np.zeros((4, 4), dtype=np.uint8)
        with pytest.raises(ZeroDimensionError):
            imgcore.resize(img, 0, 5)

    def test_bilinear_midpoint(self):
        # Downscaling [0, 100] 2x1 -> 1x1 samples the exact midpoint.
        img = np.array([[0, 100]], dtype=np.uint8)
        assert imgcore.resize(img, 1, 1)[0, 0] == 50
