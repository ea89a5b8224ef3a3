"""Command-line surface: transform images, check contrast invariance,
compute metrics, prepare datasets, and benchmark throughput.

Exit codes are frozen for scripting:

    0  success
    1  I/O problem (missing file, unreadable path, unpaired sample)
    2  format or dimension problem (bad raster, mismatched sizes,
       malformed config)
    3  invariance check failed
    4  degenerate metrics (single-class region, empty ground truth)

Stable results go to stdout; diagnostics and timing lines go to stderr.
"""

import argparse
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__, census, container, datasets, imgcore, liot, metrics, perturb
from .errors import (
    ConfigError,
    DegenerateLabelsError,
    DimensionMismatchError,
    EmptyEvaluationRegionError,
    EmptyGroundTruthError,
    MissingPairError,
    UnknownDatasetError,
    UnsupportedFormatError,
    ZeroDimensionError,
)

EXIT_OK = 0
EXIT_IO = 1
EXIT_FORMAT = 2
EXIT_INVARIANCE = 3
EXIT_DEGENERATE = 4

_IO_ERRORS = (FileNotFoundError, MissingPairError, IsADirectoryError, PermissionError)
_FORMAT_ERRORS = (
    UnsupportedFormatError,
    DimensionMismatchError,
    ZeroDimensionError,
    ConfigError,
    UnknownDatasetError,
    ValueError,
)
_DEGENERATE_ERRORS = (
    DegenerateLabelsError,
    EmptyGroundTruthError,
    EmptyEvaluationRegionError,
)


def _load_prepared_gray(path, gray_mode, invert):
    img = imgcore.load_image(path)
    if img.ndim == 3:
        img = imgcore.to_gray(img, gray_mode)
    if invert:
        img = imgcore.invert(img)
    return img


def cmd_transform(args):
    gray = _load_prepared_gray(args.input, args.gray, args.invert)
    if args.method == "census":
        codes = census.census_transform(gray)
        imgcore.save_image(args.output, codes)
        if args.dump_planes:
            print("census output has a single plane; --dump-planes ignored", file=sys.stderr)
        return EXIT_OK
    transform = liot.liot_transform if args.method == "liot" else liot.liot_transform_naive
    planes = transform(gray)
    container.write_container(args.output, planes)
    if args.dump_planes:
        dump = Path(args.dump_planes)
        dump.mkdir(parents=True, exist_ok=True)
        for short, plane in zip("lrtb", planes):
            imgcore.save_image(dump / f"{short}.png", plane)
    return EXIT_OK


def _invariance_trial(gray, lut, label):
    """Run one LUT trial against both order transforms.

    Returns (status, detail): "PASS"/"FAIL", or "SKIP" when the table
    is not injective on the gray levels actually present (invariance is
    then not guaranteed and the trial proves nothing).
    """
    if not lut.is_strict and not lut.is_injective_on(gray):
        return "SKIP", f"{label}: table merges levels present in the image"
    remapped = perturb.apply_lut(gray, lut)
    ok = np.array_equal(liot.liot_transform(remapped), liot.liot_transform(gray)) and \
        np.array_equal(census.census_transform(remapped), census.census_transform(gray))
    return ("PASS" if ok else "FAIL"), label


def _first_differing_adjacent_pair(gray):
    arr = np.asarray(gray)
    h, w = arr.shape
    if w > 1:
        diff = arr[:, :-1] != arr[:, 1:]
        if diff.any():
            y, x = np.argwhere(diff)[0]
            return int(arr[y, x]), int(arr[y, x + 1])
    if h > 1:
        diff = arr[:-1, :] != arr[1:, :]
        if diff.any():
            y, x = np.argwhere(diff)[0]
            return int(arr[y, x]), int(arr[y + 1, x])
    return None


def cmd_invariance(args):
    gray = _load_prepared_gray(args.input, "green-channel", False)
    trials = []
    for k in range(args.trials):
        lut = perturb.random_strict_lut(args.seed + k)
        trials.append((lut, f"strict lut seed={args.seed + k}"))
    for gamma in (0.5, 1.0, 2.0):
        trials.append((perturb.gamma_lut(gamma), f"gamma={gamma}"))
    if args.inject_swap:
        pair = _first_differing_adjacent_pair(gray)
        if pair is None:
            print("inject-swap: image is constant, nothing to swap", file=sys.stderr)
        else:
            trials.append((perturb.swap_lut(*pair), f"swap lut {pair[0]}<->{pair[1]}"))

    failures = 0
    passed = 0
    skipped = 0
    for lut, label in trials:
        status, detail = _invariance_trial(gray, lut, label)
        print(f"{status} {detail}")
        if status == "FAIL":
            failures += 1
        elif status == "PASS":
            passed += 1
        else:
            skipped += 1
    print(
        f"summary: {passed} passed, {failures} failed, {skipped} skipped, "
        f"{len(trials)} trials ({args.trials} strict)"
    )
    return EXIT_INVARIANCE if failures else EXIT_OK


def cmd_metrics(args):
    gt = imgcore.load_mask(args.gt)
    fov = imgcore.load_mask(args.fov) if args.fov else None
    if args.prob:
        raw = imgcore.load_image(args.pred)
        if raw.ndim != 2:
            raise UnsupportedFormatError(f"{args.pred}: probability maps must be single-channel")
        scores = raw.astype(np.float64) / 255.0
        _, report = metrics.best_threshold_by_f1(scores, gt, fov, adjacency=args.connectivity)
    else:
        pred = imgcore.load_mask(args.pred)
        report = metrics.binary_report(pred, gt, fov, adjacency=args.connectivity)
    print(report.to_json() if args.json else report.to_text())
    return EXIT_OK


def cmd_dataset(args):
    if (args.spec_name is None) == (args.config is None):
        raise ConfigError("give exactly one of a builtin spec name or --config FILE")
    if args.config is not None:
        spec = datasets.load_config(args.config)
    else:
        spec = datasets.builtin_spec(args.spec_name)
    ids = datasets.write_prepared(spec, args.out)
    print(f"prepared {len(ids)} samples into {args.out}")
    return EXIT_OK


def _parse_size(text):
    try:
        w, h = text.lower().split("x")
        w, h = int(w), int(h)
    except ValueError:
        raise ValueError(f"--size expects WxH, got {text!r}")
    if w <= 0 or h <= 0:
        raise ZeroDimensionError(f"--size {text}: dimensions must be positive")
    return w, h


BENCH_SEED = 0


def cmd_bench(args):
    w, h = _parse_size(args.size)
    if args.iters <= 0:
        raise ValueError("--iters must be positive")
    rng = np.random.default_rng(BENCH_SEED)
    img = rng.integers(0, 256, size=(h, w), dtype=np.uint8)
    print(f"bench size={w}x{h} iters={args.iters} seed={BENCH_SEED}", flush=True)

    pixels = w * h

    def report(name, per_image):
        rate = pixels / max(per_image, 1e-12)
        print(f"{name}: per_image_s={per_image:.6f} pixels_per_s={rate:.1f}", file=sys.stderr)

    liot.liot_transform(img)  # warm-up
    start = time.perf_counter()
    for _ in range(args.iters):
        liot.liot_transform(img)
    fast = (time.perf_counter() - start) / args.iters
    report("liot_fast", fast)

    start = time.perf_counter()
    liot.liot_transform_naive(img)
    naive = time.perf_counter() - start
    report("liot_naive", naive)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="liotkit",
        description="Directional intensity-order transform toolkit for curvilinear structure segmentation",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("transform", help="encode an image and write a LIOT1 container (or census PNG)")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--gray", choices=["green", "luma"], default="green",
                   help="gray conversion for color inputs")
    p.add_argument("--invert", action="store_true",
                   help="invert intensities (bright-on-dark structures)")
    p.add_argument("--method", choices=["liot", "naive", "census"], default="liot")
    p.add_argument("--dump-planes", metavar="DIR",
                   help="also write l.png, r.png, t.png, b.png")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("invariance", help="check contrast invariance under random strict LUTs")
    p.add_argument("input")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--inject-swap", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_invariance)

    p = sub.add_parser("metrics", help="evaluate a segmentation against ground truth")
    p.add_argument("pred")
    p.add_argument("gt")
    p.add_argument("--fov", metavar="PATH", help="restrict evaluation to this mask")
    p.add_argument("--prob", action="store_true",
                   help="treat pred as an 8-bit probability map and sweep thresholds")
    p.add_argument("--connectivity", type=int, choices=[4, 8], default=8)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("dataset", help="run a dataset preprocessing pipeline")
    p.add_argument("spec_name", nargs="?",
                   help="builtin preset: drive, stare, chasedb1, cracktree")
    p.add_argument("--config", metavar="FILE", help="key=value dataset config")
    p.add_argument("--out", required=True, metavar="DIR")
    p.set_defaults(func=cmd_dataset)

    p = sub.add_parser("bench", help="time the fast path against the naive oracle")
    p.add_argument("--size", default="565x584", metavar="WxH")
    p.add_argument("--iters", type=int, default=3)
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _IO_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except _DEGENERATE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except _FORMAT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
