"""Dataset preparation pipelines for the four supported directory
layouts (drive, stare, chasedb1, cracktree) plus custom configs.

A dataset is a directory with `images/` and `gt/` subdirectories (and
optionally `fov/`), where ground truth pairs with its image by shared
file stem. Preparation runs, per sample:

    load -> resize (images bilinear, masks nearest) -> gray conversion
    -> optional inversion -> ground-truth binarization (> 127) ->
    centerline dilation when configured

and emits samples in deterministic lexicographic id order, so repeated
runs produce byte-identical outputs. Samples are independent; a worker
pool (capped by the LIOTKIT_THREADS environment variable, 0 = auto)
may prepare them concurrently without changing the emission order.
"""

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import imgcore
from .errors import (
    ConfigError,
    DimensionMismatchError,
    MissingPairError,
    UnknownDatasetError,
)

IMAGE_SUFFIXES = (".png", ".pgm", ".ppm", ".jpg", ".jpeg", ".bmp", ".tif", ".tiff")

# Train/test sample counts per builtin dataset; id assignment (first
# n_train ids in sorted order train, the rest test, with explicit
# "training"/"test" filename tokens taking precedence) is this tool's
# deterministic default.
SPLIT_COUNTS = {
    "drive": (20, 20),
    "stare": (10, 10),
    "chasedb1": (20, 8),
    "cracktree": (160, 46),
}


@dataclass(frozen=True)
class DatasetSpec:
    name: str
    image_dir: str
    gt_dir: str
    fov_dir: str | None = None
    resize_target: tuple | None = None  # (width, height)
    gray_mode: str = "green-channel"
    invert: bool = False
    gt_dilation_radius: int = 0

    def __post_init__(self):
        if self.resize_target is not None:
            w, h = self.resize_target
            if w <= 0 or h <= 0:
                raise ValueError(f"resize target {self.resize_target} must be positive")
        if self.gt_dilation_radius < 0:
            raise ValueError("gt_dilation_radius must be >= 0")


@dataclass(frozen=True)
class SamplePair:
    id: str
    image: np.ndarray  # 2D uint8, post-preprocessing
    gt: np.ndarray  # 2D bool
    fov: np.ndarray | None  # 2D bool or None


def builtin_spec(name, root=None):
    """Frozen preprocessing presets for the supported datasets.

    Directories default to <root>/images, <root>/gt, <root>/fov with
    root defaulting to ./<name>.

    Raises:
        UnknownDatasetError: name is not a builtin dataset.
    """
    root = Path(root if root is not None else name)
    common = {"image_dir": str(root / "images"), "gt_dir": str(root / "gt")}
    if name == "drive":
        return DatasetSpec(name="drive", fov_dir=str(root / "fov"), **common)
    if name == "stare":
        return DatasetSpec(name="stare", resize_target=(554, 479), **common)
    if name == "chasedb1":
        return DatasetSpec(name="chasedb1", resize_target=(584, 561), **common)
    if name == "cracktree":
        return DatasetSpec(
            name="cracktree",
            resize_target=(512, 512),
            gray_mode="luma",
            gt_dilation_radius=4,
            **common,
        )
    raise UnknownDatasetError(f"unknown dataset {name!r}; builtins: drive, stare, chasedb1, cracktree")


def disk_offsets(radius):
    """Offsets (dx, dy) of the Euclidean disk {dx^2 + dy^2 <= radius^2}."""
    r = int(radius)
    out = []
    for dy in range(-r, r + 1):
        for dx in range(-r, r + 1):
            if dx * dx + dy * dy <= r * r:
                out.append((dx, dy))
    return out


def dilate(mask, radius):
    """Morphological dilation with a Euclidean disk structuring element.
    radius 0 is the identity."""
    arr = imgcore.ensure_mask(mask)
    if radius == 0:
        return arr.copy()
    h, w = arr.shape
    out = np.zeros_like(arr)
    for dx, dy in disk_offsets(radius):
        ys0, ys1 = max(0, -dy), min(h, h - dy)
        xs0, xs1 = max(0, -dx), min(w, w - dx)
        if ys0 >= ys1 or xs0 >= xs1:
            continue
        out[ys0 + dy:ys1 + dy, xs0 + dx:xs1 + dx] |= arr[ys0:ys1, xs0:xs1]
    return out


def _find_by_stem(directory, stem):
    for suffix in IMAGE_SUFFIXES:
        candidate = directory / f"{stem}{suffix}"
        if candidate.exists():
            return candidate
    return None


def _list_samples(spec):
    image_dir = Path(spec.image_dir)
    gt_dir = Path(spec.gt_dir)
    if not image_dir.is_dir():
        raise FileNotFoundError(f"image directory {image_dir} does not exist")
    if not gt_dir.is_dir():
        raise FileNotFoundError(f"gt directory {gt_dir} does not exist")
    fov_dir = Path(spec.fov_dir) if spec.fov_dir else None
    if fov_dir is not None and not fov_dir.is_dir():
        raise FileNotFoundError(f"fov directory {fov_dir} does not exist")

    images = sorted(
        p for p in image_dir.iterdir()
        if p.is_file() and p.suffix.lower() in IMAGE_SUFFIXES
    )
    entries = []
    for img_path in images:
        stem = img_path.stem
        gt_path = _find_by_stem(gt_dir, stem)
        if gt_path is None:
            raise MissingPairError(f"image {img_path.name} has no ground truth in {gt_dir}")
        fov_path = None
        if fov_dir is not None:
            fov_path = _find_by_stem(fov_dir, stem)
            if fov_path is None:
                raise MissingPairError(f"image {img_path.name} has no FOV mask in {fov_dir}")
        entries.append((stem, img_path, gt_path, fov_path))
    entries.sort(key=lambda e: e[0])
    return entries


def _prepare_one(spec, entry):
    stem, img_path, gt_path, fov_path = entry
    img = imgcore.load_image(img_path)
    gt = imgcore.load_mask(gt_path)
    fov = imgcore.load_mask(fov_path) if fov_path is not None else None

    if spec.resize_target is not None:
        w, h = spec.resize_target
        img = imgcore.resize(img, w, h)
        gt = imgcore.resize(gt, w, h)
        if fov is not None:
            fov = imgcore.resize(fov, w, h)

    if img.ndim == 3:
        img = imgcore.to_gray(img, spec.gray_mode)
    if spec.invert:
        img = imgcore.invert(img)
    if spec.gt_dilation_radius:
        gt = dilate(gt, spec.gt_dilation_radius)

    if gt.shape != img.shape:
        raise DimensionMismatchError(
            f"{stem}: gt shape {gt.shape} != image shape {img.shape}"
        )
    if fov is not None and fov.shape != img.shape:
        raise DimensionMismatchError(
            f"{stem}: fov shape {fov.shape} != image shape {img.shape}"
        )
    return SamplePair(id=stem, image=img, gt=gt, fov=fov)


def worker_count():
    """Worker cap from LIOTKIT_THREADS (0 or unset = one per CPU)."""
    raw = os.environ.get("LIOTKIT_THREADS", "0")
    try:
        requested = int(raw)
    except ValueError:
        requested = 0
    cpus = os.cpu_count() or 1
    if requested <= 0:
        return cpus
    return min(requested, cpus)


def prepare(spec):
    """Yield preprocessed SamplePairs in lexicographic id order."""
    entries = _list_samples(spec)
    workers = worker_count()
    if workers <= 1 or len(entries) <= 1:
        for entry in entries:
            yield _prepare_one(spec, entry)
        return
    with ThreadPoolExecutor(max_workers=workers) as pool:
        # Executor.map preserves input order, keeping emission
        # deterministic regardless of completion order.
        yield from pool.map(lambda e: _prepare_one(spec, e), entries)


def default_split(name, ids):
    """Assign ids to (train, test) lists.

    Filename tokens "training"/"test" win when every id carries one;
    otherwise the first n_train sorted ids are train per SPLIT_COUNTS.
    Returns None when no rule applies (unknown dataset or count
    mismatch without tokens).
    """
    ids = sorted(ids)
    train = [i for i in ids if "training" in i.lower()]
    test = [i for i in ids if "test" in i.lower()]
    if train and test and len(train) + len(test) == len(ids):
        return train, test
    counts = SPLIT_COUNTS.get(name)
    if counts and len(ids) == sum(counts):
        return ids[:counts[0]], ids[counts[0]:]
    return None


def write_prepared(spec, out_dir):
    """Materialize prepared samples under out_dir as PNGs plus
    manifest.txt (and train.txt/test.txt when a default split applies).
    Re-running produces byte-identical outputs."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    ids = []
    for pair in prepare(spec):
        ids.append(pair.id)
        imgcore.save_image(out / f"{pair.id}_img.png", pair.image)
        imgcore.save_mask(out / f"{pair.id}_gt.png", pair.gt)
        if pair.fov is not None:
            imgcore.save_mask(out / f"{pair.id}_fov.png", pair.fov)
    (out / "manifest.txt").write_text("".join(f"{i}\n" for i in ids), encoding="ascii")
    split = default_split(spec.name, ids)
    if split is not None:
        train, test = split
        (out / "train.txt").write_text("".join(f"{i}\n" for i in train), encoding="ascii")
        (out / "test.txt").write_text("".join(f"{i}\n" for i in test), encoding="ascii")
    return ids


_CONFIG_KEYS = {
    "preset", "name", "image_dir", "gt_dir", "fov_dir", "resize_w",
    "resize_h", "gray_mode", "invert", "gt_dilation_radius",
}


def load_config(path):
    """Parse a flat key=value dataset config into a DatasetSpec.

    A `preset` key seeds the DatasetSpec from a builtin; all other
    keys override individual fields.
    """
    values = {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except FileNotFoundError:
        raise
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        if key not in _CONFIG_KEYS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        values[key] = value.strip()

    base = None
    if "preset" in values:
        base = builtin_spec(values.pop("preset"))
    fields = {
        "name": values.get("name", base.name if base else "custom"),
        "image_dir": values.get("image_dir", base.image_dir if base else None),
        "gt_dir": values.get("gt_dir", base.gt_dir if base else None),
        "fov_dir": values.get("fov_dir", base.fov_dir if base else None),
        "gray_mode": values.get("gray_mode", base.gray_mode if base else "green-channel"),
    }
    if fields["image_dir"] is None or fields["gt_dir"] is None:
        raise ConfigError(f"{path}: image_dir and gt_dir are required")
    try:
        if "resize_w" in values or "resize_h" in values:
            fields["resize_target"] = (int(values["resize_w"]), int(values["resize_h"]))
        elif base is not None:
            fields["resize_target"] = base.resize_target
        if "invert" in values:
            fields["invert"] = values["invert"].lower() in ("1", "true", "yes")
        elif base is not None:
            fields["invert"] = base.invert
        if "gt_dilation_radius" in values:
            fields["gt_dilation_radius"] = int(values["gt_dilation_radius"])
        elif base is not None:
            fields["gt_dilation_radius"] = base.gt_dilation_radius
        return DatasetSpec(**fields)
    except (KeyError, ValueError) as exc:
        raise ConfigError(f"{path}: {exc}") from exc
