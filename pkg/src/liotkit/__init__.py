"""liotkit: contrast-invariant directional intensity-order encoding for
curvilinear structure segmentation, with a census-transform baseline,
segmentation evaluation metrics, and dataset preprocessing pipelines.

All operations are pure functions over immutable inputs and may be
called concurrently on shared arrays.
"""

__version__ = "0.1.0"

from .census import census_transform
from .container import read_container, write_container
from .datasets import DatasetSpec, SamplePair, builtin_spec, dilate, prepare
from .imgcore import invert, load_image, load_mask, resize, save_image, save_mask, to_gray
from .liot import liot_transform, liot_transform_naive, prepare_and_transform
from .metrics import (
    ConfusionCounts,
    MetricsReport,
    auc,
    best_threshold_by_f1,
    confusion,
    connected_components,
    connectivity,
    scalar_metrics,
)
from .perturb import IntensityLut, apply_lut, gamma_lut, random_strict_lut, swap_lut

__all__ = [
    "__version__",
    "census_transform",
    "read_container",
    "write_container",
    "DatasetSpec",
    "SamplePair",
    "builtin_spec",
    "dilate",
    "prepare",
    "invert",
    "load_image",
    "load_mask",
    "resize",
    "save_image",
    "save_mask",
    "to_gray",
    "liot_transform",
    "liot_transform_naive",
    "prepare_and_transform",
    "ConfusionCounts",
    "MetricsReport",
    "auc",
    "best_threshold_by_f1",
    "confusion",
    "connected_components",
    "connectivity",
    "scalar_metrics",
    "IntensityLut",
    "apply_lut",
    "gamma_lut",
    "random_strict_lut",
    "swap_lut",
]
