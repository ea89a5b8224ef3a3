"""Segmentation evaluation: confusion counts inside a field-of-view
mask, Se/Sp/Acc/F1, exact rank-based AUC, component-count connectivity,
and F1-optimal threshold selection.

Degenerate 0/0 denominators report the metric as 0 plus an explicit
flag instead of NaN, so reports stay machine-comparable. AUC is the
exact Mann-Whitney statistic with average ranks for ties, equivalent to
the trapezoidal ROC area over all distinct thresholds.
"""

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DegenerateLabelsError,
    DimensionMismatchError,
    EmptyEvaluationRegionError,
    EmptyGroundTruthError,
)
from .imgcore import ensure_mask

REPORT_FIELDS = (
    "threshold", "tp", "fp", "fn", "tn",
    "se", "sp", "acc", "auc", "f1", "connectivity", "degenerate_flags",
)


@dataclass(frozen=True)
class ConfusionCounts:
    tp: int
    fp: int
    fn: int
    tn: int

    @property
    def total(self):
        return self.tp + self.fp + self.fn + self.tn


@dataclass(frozen=True)
class ScalarMetrics:
    se: float
    sp: float
    acc: float
    f1: float
    degenerate_flags: tuple = ()


@dataclass(frozen=True)
class MetricsReport:
    """Full per-image evaluation record at one binarization threshold."""

    counts: ConfusionCounts
    se: float
    sp: float
    acc: float
    f1: float
    connectivity: float
    threshold: float | None = None
    auc: float | None = None
    degenerate_flags: tuple = ()

    def to_dict(self):
        return {
            "threshold": self.threshold,
            "tp": self.counts.tp,
            "fp": self.counts.fp,
            "fn": self.counts.fn,
            "tn": self.counts.tn,
            "se": self.se,
            "sp": self.sp,
            "acc": self.acc,
            "auc": self.auc,
            "f1": self.f1,
            "connectivity": self.connectivity,
            "degenerate_flags": list(self.degenerate_flags),
        }

    def to_json(self):
        """Single-line JSON record with the frozen field names."""
        return json.dumps(self.to_dict())

    def to_text(self):
        """Human-readable table."""
        d = self.to_dict()
        lines = []
        for key in REPORT_FIELDS:
            value = d[key]
            if isinstance(value, float):
                lines.append(f"{key:16s} {value:.6f}")
            elif key == "degenerate_flags":
                lines.append(f"{key:16s} {','.join(value) if value else '-'}")
            else:
                lines.append(f"{key:16s} {value if value is not None else '-'}")
        return "\n".join(lines)


def _check_dims(name_a, a, name_b, b):
    if a.shape != b.shape:
        raise DimensionMismatchError(
            f"{name_a} shape {a.shape} != {name_b} shape {b.shape}"
        )


def _region(fov, like):
    if fov is None:
        return np.ones(like.shape, dtype=bool)
    fov = ensure_mask(fov)
    _check_dims("fov", fov, "raster", like)
    return fov


def ensure_probability_map(pred):
    """Validate a 2D score map with values in [0, 1]."""
    arr = np.asarray(pred, dtype=np.float64)
    if arr.ndim != 2:
        raise DimensionMismatchError(f"expected 2D probability map, got shape {arr.shape}")
    if arr.size and (arr.min() < 0.0 or arr.max() > 1.0):
        raise ValueError("probability map values must lie in [0, 1]")
    return arr


def confusion(pred, gt, fov=None):
    """Count tp/fp/fn/tn over the pixels where fov is true (everywhere
    when fov is absent)."""
    pred = ensure_mask(pred)
    gt = ensure_mask(gt)
    _check_dims("pred", pred, "gt", gt)
    region = _region(fov, gt)
    p = pred[region]
    g = gt[region]
    tp = int(np.count_nonzero(p & g))
    fp = int(np.count_nonzero(p & ~g))
    fn = int(np.count_nonzero(~p & g))
    tn = int(np.count_nonzero(~p & ~g))
    return ConfusionCounts(tp=tp, fp=fp, fn=fn, tn=tn)


def scalar_metrics(counts):
    """Se, Sp, Acc, F1 from confusion counts.

    A 0/0 denominator yields 0 for that metric plus a flag naming it.

    Raises:
        EmptyEvaluationRegionError: no pixels were evaluated at all.
    """
    if counts.total == 0:
        raise EmptyEvaluationRegionError("no pixels in the evaluation region")
    flags = []

    def ratio(num, den, name):
        if den == 0:
            flags.append(name)
            return 0.0
        return num / den

    se = ratio(counts.tp, counts.tp + counts.fn, "se")
    sp = ratio(counts.tn, counts.tn + counts.fp, "sp")
    acc = (counts.tp + counts.tn) / counts.total
    f1 = ratio(2 * counts.tp, 2 * counts.tp + counts.fp + counts.fn, "f1")
    return ScalarMetrics(se=se, sp=sp, acc=acc, f1=f1, degenerate_flags=tuple(flags))


def _average_ranks(values):
    # 1-based ranks with ties sharing the mean rank of their group.
    n = len(values)
    order = np.argsort(values, kind="stable")
    ordered = values[order]
    group_start = np.empty(n, dtype=bool)
    group_start[0] = True
    group_start[1:] = ordered[1:] != ordered[:-1]
    group_idx = np.cumsum(group_start) - 1
    starts = np.flatnonzero(group_start)
    sizes = np.diff(np.append(starts, n))
    avg_rank = starts + (sizes + 1) / 2.0
    ranks = np.empty(n, dtype=np.float64)
    ranks[order] = avg_rank[group_idx]
    return ranks


def auc(pred, gt, fov=None):
    """Exact ROC area via the rank statistic: the probability a random
    positive pixel scores above a random negative one, ties counting
    half.

    Raises:
        DegenerateLabelsError: the evaluated region is single-class.
    """
    scores = ensure_probability_map(pred)
    gt = ensure_mask(gt)
    _check_dims("pred", scores, "gt", gt)
    region = _region(fov, gt)
    s = scores[region].ravel()
    labels = gt[region].ravel()
    n_pos = int(np.count_nonzero(labels))
    n_neg = len(labels) - n_pos
    if n_pos == 0 or n_neg == 0:
        raise DegenerateLabelsError(
            f"AUC needs both classes in the region (pos={n_pos}, neg={n_neg})"
        )
    ranks = _average_ranks(s)
    pos_rank_sum = float(ranks[labels].sum())
    u = pos_rank_sum - n_pos * (n_pos + 1) / 2.0
    return u / (n_pos * n_neg)


def connected_components(mask, connectivity=8):
    """Label foreground components 1..N (0 = background) and return
    (labels, N). Adjacency is 4- or 8-connectivity.

    Run-based union-find: foreground runs per row are merged with
    touching runs of the previous row, then roots are compacted in
    row-major order of first appearance.
    """
    arr = ensure_mask(mask)
    if connectivity not in (4, 8):
        raise ValueError(f"connectivity must be 4 or 8, got {connectivity}")
    h, w = arr.shape
    labels = np.zeros((h, w), dtype=np.int32)
    ext = 1 if connectivity == 8 else 0
    parent = []

    def find(x):
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    row_runs = []
    prev = []
    for y in range(h):
        diffs = np.diff(arr[y].astype(np.int8), prepend=np.int8(0), append=np.int8(0))
        starts = np.flatnonzero(diffs == 1)
        ends = np.flatnonzero(diffs == -1)
        cur = []
        j = 0
        for s, e in zip(starts.tolist(), ends.tolist()):
            node = len(parent)
            parent.append(node)
            # Previous-row runs ending at or left of s-ext can never
            # touch this or any later run of the current row.
            while j < len(prev) and prev[j][1] <= s - ext:
                j += 1
            k = j
            while k < len(prev) and prev[k][0] < e + ext:
                ra, rb = find(node), find(prev[k][2])
                if ra != rb:
                    parent[ra] = rb
                k += 1
            cur.append((s, e, node))
        row_runs.append(cur)
        prev = cur

    compact = {}
    for y, runs in enumerate(row_runs):
        for s, e, node in runs:
            root = find(node)
            label = compact.get(root)
            if label is None:
                label = len(compact) + 1
                compact[root] = label
            labels[y, s:e] = label
    return labels, len(compact)


def connectivity(pred, gt, adjacency=8):
    """Structural-continuity score:
    1 - min(1, |#components(gt) - #components(pred)| / #foreground(gt)).

    Raises:
        EmptyGroundTruthError: gt has no foreground pixels.
    """
    pred = ensure_mask(pred)
    gt = ensure_mask(gt)
    _check_dims("pred", pred, "gt", gt)
    gt_pixels = int(np.count_nonzero(gt))
    if gt_pixels == 0:
        raise EmptyGroundTruthError("connectivity needs >= 1 ground-truth foreground pixel")
    _, n_gt = connected_components(gt, adjacency)
    _, n_pred = connected_components(pred, adjacency)
    return 1.0 - min(1.0, abs(n_gt - n_pred) / gt_pixels)


def binary_report(pred, gt, fov=None, adjacency=8, threshold=None, auc_value=None):
    """Assemble a MetricsReport for an already-binarized prediction."""
    counts = confusion(pred, gt, fov)
    scalars = scalar_metrics(counts)
    flags = list(scalars.degenerate_flags)
    if np.count_nonzero(gt):
        conn = connectivity(pred, gt, adjacency)
    else:
        conn = 0.0
        flags.append("connectivity")
    return MetricsReport(
        counts=counts,
        se=scalars.se,
        sp=scalars.sp,
        acc=scalars.acc,
        f1=scalars.f1,
        connectivity=conn,
        threshold=threshold,
        auc=auc_value,
        degenerate_flags=tuple(flags),
    )


def best_threshold_by_f1(pred, gt, fov=None, adjacency=8):
    """Pick the binarization threshold maximizing F1 inside the region.

    Candidates are the midpoints between consecutive distinct scores
    present in the region (a single distinct score degenerates to that
    score itself, flagged). Ties break toward the lower threshold.
    Binarization is score >= threshold. Returns (threshold, report)
    where the report also carries AUC and connectivity at the winning
    threshold.
    """
    scores = ensure_probability_map(pred)
    gt = ensure_mask(gt)
    _check_dims("pred", scores, "gt", gt)
    region = _region(fov, gt)
    s = scores[region].ravel()
    labels = gt[region].ravel()
    n_pos = int(np.count_nonzero(labels))
    n_neg = len(labels) - n_pos
    if n_pos == 0 or n_neg == 0:
        raise DegenerateLabelsError(
            f"threshold sweep needs both classes in the region (pos={n_pos}, neg={n_neg})"
        )

    distinct = np.unique(s)
    sweep_flags = []
    if len(distinct) == 1:
        candidates = np.array([distinct[0]])
        sweep_flags.append("single_candidate")
    else:
        candidates = (distinct[:-1] + distinct[1:]) / 2.0

    # Per distinct value: positives/negatives at that score; suffix sums
    # give tp/fp for each ">= midpoint" cut without re-scanning pixels.
    value_idx = np.searchsorted(distinct, s)
    group_pos = np.bincount(value_idx[labels], minlength=len(distinct))
    group_all = np.bincount(value_idx, minlength=len(distinct))
    suffix_pos = np.cumsum(group_pos[::-1])[::-1]
    suffix_all = np.cumsum(group_all[::-1])[::-1]

    best_f1 = -1.0
    best_thr = None
    for j, thr in enumerate(candidates.tolist()):
        if len(distinct) == 1:
            tp = int(suffix_pos[0])
            pred_pos = int(suffix_all[0])
        else:
            tp = int(suffix_pos[j + 1])
            pred_pos = int(suffix_all[j + 1])
        fp = pred_pos - tp
        fn = n_pos - tp
        denom = 2 * tp + fp + fn
        f1 = (2 * tp / denom) if denom else 0.0
        if f1 > best_f1:
            best_f1 = f1
            best_thr = thr

    pred_mask = scores >= best_thr
    auc_value = auc(scores, gt, fov)
    report = binary_report(
        pred_mask, gt, fov, adjacency, threshold=float(best_thr), auc_value=auc_value
    )
    if sweep_flags:
        report = MetricsReport(
            counts=report.counts,
            se=report.se,
            sp=report.sp,
            acc=report.acc,
            f1=report.f1,
            connectivity=report.connectivity,
            threshold=report.threshold,
            auc=report.auc,
            degenerate_flags=report.degenerate_flags + tuple(sweep_flags),
        )
    return float(best_thr), report
