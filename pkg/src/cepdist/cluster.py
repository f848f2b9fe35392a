"""Pairwise distance matrices over signal collections, and clustering on them.

Collections are either bare output signals or (input, output) pairs; pairs
unlock the transfer-function metrics that cancel whatever was realized on
the input side. Pair failures do not abort the whole matrix: the offending
cell becomes NaN and the failure is recorded, and items with failed cells
are excluded (label -1) when clustering.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .config import LINKAGES, RunConfig
from .errors import CepdistError, MixedPhaseUnsupported, ValidationError
from .lti import Signal
from .metrics import cosine_similarity, euclidean_distance, weighted_cepstral_distance
from .phase import INDETERMINATE, MINIMUM_PHASE, classify_from_io
from .spectral import power_cepstrum_of_signal, transfer_cepstrum_from_io
from .subspace import projected_bases, subspace_distance_from_bases

METRICS = ("cepstral", "subspace", "euclidean", "cosine")
METRIC_ALIASES = {"cosine-derived": "cosine"}


@dataclass(frozen=True)
class DistanceMatrix:
    """Symmetric pairwise distances with NaN marking failed pairs."""

    values: np.ndarray
    ids: tuple[str, ...]
    metric: str
    failures: tuple[tuple[str, str, str], ...] = ()

    def __post_init__(self) -> None:
        arr = np.asarray(self.values, dtype=float)
        n = len(self.ids)
        if arr.shape != (n, n):
            raise ValidationError(f"matrix shape {arr.shape} does not match {n} ids")
        if not np.allclose(arr, arr.T, rtol=0.0, atol=1e-10, equal_nan=True):
            raise ValidationError("distance matrix must be symmetric")
        object.__setattr__(self, "values", arr)
        object.__setattr__(self, "ids", tuple(self.ids))
        object.__setattr__(self, "failures", tuple(self.failures))

    @property
    def size(self) -> int:
        return len(self.ids)


@dataclass(frozen=True)
class ClusterResult:
    """Labels per item (-1 marks excluded items) and the merge heights."""

    labels: tuple[int, ...]
    merge_heights: tuple[float, ...]
    linkage: str


def _split_items(items: Sequence) -> tuple[list, bool]:
    if len(items) < 2:
        raise ValidationError("need at least two items for a distance matrix")
    pairs = [isinstance(item, tuple) for item in items]
    if any(pairs) and not all(pairs):
        raise ValidationError("items must be all signals or all (input, output) pairs")
    paired = all(pairs)
    checked = []
    for idx, item in enumerate(items):
        if paired:
            if len(item) != 2 or not all(isinstance(s, Signal) for s in item):
                raise ValidationError(f"item {idx} is not an (input, output) pair of signals")
        elif not isinstance(item, Signal):
            raise ValidationError(f"item {idx} is not a signal")
        checked.append(item)
    return checked, paired


def distance_matrix(
    items: Sequence,
    metric: str,
    config: RunConfig,
    ids: Sequence[str] | None = None,
) -> DistanceMatrix:
    """All pairwise distances under one metric.

    ``cepstral`` compares weighted power cepstra (transfer cepstra when
    pairs are given), ``subspace`` needs pairs and compares projected
    Hankel ranges, ``euclidean`` and ``cosine`` compare output samples
    pointwise.
    """
    metric = METRIC_ALIASES.get(metric, metric)
    if metric not in METRICS:
        raise ValidationError(f"metric must be one of {METRICS}, got {metric!r}")
    items, paired = _split_items(items)
    n = len(items)
    if ids is None:
        ids = tuple(f"item{idx:03d}" for idx in range(n))
    else:
        ids = tuple(str(s) for s in ids)
        if len(ids) != n:
            raise ValidationError(f"got {len(ids)} ids for {n} items")
        if len(set(ids)) != n:
            raise ValidationError("ids must be unique")
    if metric == "subspace" and not paired:
        raise ValidationError("the subspace metric needs (input, output) pairs")

    failures: list[tuple[str, str, str]] = []
    features: list = [None] * n
    broken: dict[int, str] = {}
    for idx, item in enumerate(items):
        try:
            if metric == "cepstral":
                if paired:
                    features[idx] = transfer_cepstrum_from_io(item[0], item[1], config)
                else:
                    features[idx] = power_cepstrum_of_signal(item, config)
            elif metric == "subspace":
                # The data-driven subspace route is only valid behind stable
                # minimum phase generators; gate each record on its verdict.
                verdict = classify_from_io(item[0], item[1], config)
                if verdict.kind not in (MINIMUM_PHASE, INDETERMINATE):
                    raise MixedPhaseUnsupported(
                        f"record classified as {verdict.kind}; the subspace metric "
                        "needs minimum phase records"
                    )
                features[idx] = projected_bases(item[0], item[1], config.hankel_rows)
            else:
                features[idx] = item[1] if paired else item
        except CepdistError as exc:
            broken[idx] = str(exc)

    values = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            if i in broken or j in broken:
                values[i, j] = values[j, i] = np.nan
                failures.append((ids[i], ids[j], broken.get(i) or broken.get(j)))
                continue
            try:
                values[i, j] = values[j, i] = _pair_distance(
                    metric, features[i], features[j]
                )
            except CepdistError as exc:
                values[i, j] = values[j, i] = np.nan
                failures.append((ids[i], ids[j], str(exc)))
    return DistanceMatrix(values, ids, metric, tuple(failures))


def _pair_distance(metric: str, feat_i, feat_j) -> float:
    if metric == "cepstral":
        return weighted_cepstral_distance(feat_i, feat_j).value
    if metric == "euclidean":
        return euclidean_distance(feat_i, feat_j)
    if metric == "cosine":
        return 1.0 - cosine_similarity(feat_i, feat_j)
    return subspace_distance_from_bases(feat_i, feat_j)


def agglomerative_cluster(
    matrix: DistanceMatrix, k: int, linkage: str = "average"
) -> ClusterResult:
    """Bottom-up clustering of a distance matrix into k groups.

    Items with any NaN distances are excluded up front and labeled -1.
    Labels are numbered by first appearance. Merge heights are returned for
    diagnostics; with single, complete, or average linkage they are
    non-decreasing.
    """
    if linkage not in LINKAGES:
        raise ValidationError(f"linkage must be one of {LINKAGES}, got {linkage!r}")
    n = matrix.size
    # Peel off the worst NaN offenders until the remaining block is clean,
    # so one failed record does not poison every row it touches.
    nan_mask = np.isnan(matrix.values) & ~np.eye(n, dtype=bool)
    usable = list(range(n))
    while usable:
        counts = nan_mask[np.ix_(usable, usable)].sum(axis=1)
        worst = int(np.argmax(counts))
        if counts[worst] == 0:
            break
        usable.pop(worst)
    m = len(usable)
    if not (1 <= k <= m):
        raise ValidationError(f"k must lie in [1, {m}] (usable items), got {k}")

    dist = matrix.values[np.ix_(usable, usable)].astype(float)
    clusters: list[list[int]] = [[i] for i in range(m)]
    heights: list[float] = []
    while len(clusters) > k:
        best = (np.inf, -1, -1)
        for a in range(len(clusters)):
            for b in range(a + 1, len(clusters)):
                d = _linkage_distance(dist, clusters[a], clusters[b], linkage)
                if d < best[0]:
                    best = (d, a, b)
        d, a, b = best
        heights.append(float(d))
        clusters[a] = clusters[a] + clusters[b]
        clusters.pop(b)

    labels = [-1] * n
    order = sorted(range(len(clusters)), key=lambda c: min(clusters[c]))
    for rank, c in enumerate(order):
        for local in clusters[c]:
            labels[usable[local]] = rank
    return ClusterResult(tuple(labels), tuple(heights), linkage)


def _linkage_distance(dist: np.ndarray, members_a: list, members_b: list, linkage: str) -> float:
    block = dist[np.ix_(members_a, members_b)]
    if linkage == "single":
        return float(np.min(block))
    if linkage == "complete":
        return float(np.max(block))
    return float(np.mean(block))
