"""Directional transform: hand examples, oracle equivalence, and the
order-invariance properties."""

import numpy as np
import pytest

from liotkit import imgcore
from liotkit.liot import liot_transform, liot_transform_naive, prepare_and_transform
from liotkit.perturb import apply_lut, random_strict_lut, swap_lut


def random_sizes(rng, count, lo=1, hi=64):
    return [(int(rng.integers(lo, hi + 1)), int(rng.integers(lo, hi + 1))) for _ in range(count)]


class TestHandExamples:
    def test_1x3_planes(self):
        img = np.array([[5, 3, 9]], dtype=np.uint8)
        planes = liot_transform(img)
        assert planes[0].tolist() == [[0, 0, 3]]  # left
        assert planes[1].tolist() == [[1, 0, 0]]  # right
        assert planes[2].tolist() == [[0, 0, 0]]  # top
        assert planes[3].tolist() == [[0, 0, 0]]  # bottom

    def test_1x3_naive_matches(self):
        img = np.array([[5, 3, 9]], dtype=np.uint8)
        assert np.array_equal(liot_transform_naive(img), liot_transform(img))

    def test_1x1_all_neighbors_out_of_bounds(self):
        img = np.array([[7]], dtype=np.uint8)
        assert np.all(liot_transform_naive(img) == 0)

    def test_decreasing_row_saturates_right_plane(self):
        img = np.arange(9, -1, -1, dtype=np.uint8).reshape(1, 10)
        planes = liot_transform_naive(img)
        assert planes[1][0, 0] == 255  # all 8 rightward comparisons true

    def test_constant_images_annihilate(self):
        for shape in [(1, 1), (3, 3), (5, 17), (20, 2)]:
            img = np.full(shape, 42, dtype=np.uint8)
            assert np.all(liot_transform(img) == 0)
            assert np.all(liot_transform_naive(img) == 0)


class TestOracleEquivalence:
    def test_degenerate_sizes(self):
        rng = np.random.default_rng(11)
        for w in range(1, 11):
            for h in range(1, 11):
                img = rng.integers(0, 256, (h, w), dtype=np.uint8)
                assert np.array_equal(liot_transform(img), liot_transform_naive(img)), (w, h)

    def test_random_sizes(self):
        rng = np.random.default_rng(12)
        for w, h in random_sizes(rng, 30):
            img = rng.integers(0, 256, (h, w), dtype=np.uint8)
            assert np.array_equal(liot_transform(img), liot_transform_naive(img)), (w, h)

    def test_low_entropy_images(self):
        # Many ties stress the strict-comparison rule.
        rng = np.random.default_rng(13)
        for _ in range(20):
            img = rng.integers(0, 3, (15, 15), dtype=np.uint8)
            assert np.array_equal(liot_transform(img), liot_transform_naive(img))


class TestProperties:
    def test_monotone_invariance(self):
        rng = np.random.default_rng(21)
        for trial in range(25):
            w, h = random_sizes(rng, 1)[0]
            img = rng.integers(0, 256, (h, w), dtype=np.uint8)
            base = liot_transform(img)
            for k in range(4):
                lut = random_strict_lut(1000 * trial + k)
                assert np.array_equal(liot_transform(apply_lut(img, lut)), base)

    def test_negative_control_swap_lut(self):
        img = np.array([[5, 3, 9]], dtype=np.uint8)
        swapped = apply_lut(img, swap_lut(3, 5))
        assert swapped.tolist() == [[3, 5, 9]]
        assert not np.array_equal(liot_transform(swapped), liot_transform(img))

    def test_mirror_symmetry_horizontal(self):
        rng = np.random.default_rng(22)
        img = rng.integers(0, 256, (18, 25), dtype=np.uint8)
        mirrored = np.fliplr(img)
        left = liot_transform(img)[0]
        right_of_mirror = liot_transform(mirrored)[1]
        assert np.array_equal(left, np.fliplr(right_of_mirror))

    def test_mirror_symmetry_vertical(self):
        rng = np.random.default_rng(23)
        img = rng.integers(0, 256, (21, 14), dtype=np.uint8)
        flipped = np.flipud(img)
        top = liot_transform(img)[2]
        bottom_of_flip = liot_transform(flipped)[3]
        assert np.array_equal(top, np.flipud(bottom_of_flip))

    def test_determinism(self):
        rng = np.random.default_rng(24)
        img = rng.integers(0, 256, (33, 47), dtype=np.uint8)
        assert np.array_equal(liot_transform(img), liot_transform(img))

    def test_output_shape_and_dtype(self):
        img = np.zeros((7, 9), dtype=np.uint8)
        planes = liot_transform(img)
        assert planes.shape == (4, 7, 9)
        assert planes.dtype == np.uint8


class TestPrepareAndTransform:
    def test_color_green_composition(self):
        rng = np.random.default_rng(31)
        img = rng.integers(0, 256, (12, 10, 3), dtype=np.uint8)
        expected = liot_transform(img[:, :, 1])
        assert np.array_equal(prepare_and_transform(img, "green-channel", invert=False), expected)

    def test_gray_invert_composition(self):
        rng = np.random.default_rng(32)
        img = rng.integers(0, 256, (9, 9), dtype=np.uint8)
        expected = liot_transform(imgcore.invert(img))
        assert np.array_equal(prepare_and_transform(img, invert=True), expected)

    def test_1x3_inverted(self):
        # Inverting [5,3,9] gives [250,252,246]; every in-bounds strict
        # comparison flips, so the left plane becomes [0,1,0] (x=1 is now
        # the only pixel brighter than its single in-bounds left neighbor).
        img = np.array([[5, 3, 9]], dtype=np.uint8)
        planes = prepare_and_transform(img, invert=True)
        assert np.array_equal(planes, liot_transform_naive(np.array([[250, 252, 246]], dtype=np.uint8)))
        assert planes[0].tolist() == [[0, 1, 0]]

    def test_bad_gray_mode(self):
        img = np.zeros((2, 2, 3), dtype=np.uint8)
        with pytest.raises(ValueError):
            prepare_and_transform(img, "hue")
