"""Distance matrices over signal collections and agglomerative clustering."""

import numpy as np
import pytest

from cepdist import (
    DistanceMatrix,
    RunConfig,
    Signal,
    ValidationError,
    ZeroPoleGain,
    agglomerative_cluster,
    distance_matrix,
    make_example_signals,
)
from conftest import white_record

# Single Welch window per record keeps the estimates deterministic and cheap.
CLUSTER_CONFIG = RunConfig(
    method="welch", window_len=2048, overlap=0.0, fft_length=4096, K=64
)
DEMO_CONFIG = RunConfig(method="welch", window_len=64, fft_length=512, K=128, seed=44)

POLE_HALF = ZeroPoleGain.from_roots([0.5], [], 1.0)
POLE_NINETY_FIVE = ZeroPoleGain.from_roots([0.95], [], 1.0)
MIXED_SYSTEM = ZeroPoleGain.from_roots([0.9], [2.5], 1.0)


def random_signals(count, length=64, seed=0):
    rng = np.random.default_rng(seed)
    return [Signal(rng.standard_normal(length)) for _ in range(count)]


def partition(result, ids):
    groups = {}
    for label, name in zip(result.labels, ids):
        groups.setdefault(label, set()).add(name)
    return frozenset(frozenset(group) for label, group in groups.items() if label >= 0)


def test_identical_signals_give_a_zero_matrix():
    signal = random_signals(1)[0]
    matrix = distance_matrix([signal, signal, signal], "euclidean", CLUSTER_CONFIG)
    assert np.array_equal(matrix.values, np.zeros((3, 3)))
    assert matrix.failures == ()


def test_matrix_diagonal_and_symmetry():
    matrix = distance_matrix(random_signals(4, length=256, seed=3), "cepstral", DEMO_CONFIG)
    assert np.array_equal(np.diag(matrix.values), np.zeros(4))
    assert np.array_equal(matrix.values, matrix.values.T)
    assert matrix.ids == ("item000", "item001", "item002", "item003")


def test_demo_signals_cluster_by_dynamics_not_by_shape():
    sine, cosine, noise = make_example_signals(0.995, 44)
    matrix = distance_matrix(
        [sine, cosine, noise], "cepstral", DEMO_CONFIG, ids=["sin", "cos", "noise"]
    )
    assert matrix.values[0, 1] < 5.0
    assert matrix.values[0, 2] > 50.0
    assert matrix.values[1, 2] > 50.0
    labels = agglomerative_cluster(matrix, k=2).labels
    assert labels[0] == labels[1] != labels[2]


def test_cosine_metric_is_one_minus_similarity():
    a = Signal(np.array([1.0, 0.0, 0.0]))
    b = Signal(np.array([0.0, 1.0, 0.0]))
    matrix = distance_matrix([a, a, b], "cosine-derived", CLUSTER_CONFIG)
    assert matrix.metric == "cosine"
    assert matrix.values[0, 1] == pytest.approx(0.0, abs=1e-15)
    assert matrix.values[0, 2] == pytest.approx(1.0, abs=1e-15)


def test_singleton_and_single_cluster_limits():
    matrix = distance_matrix(random_signals(4, seed=1), "euclidean", CLUSTER_CONFIG)
    singletons = agglomerative_cluster(matrix, k=4)
    assert sorted(singletons.labels) == [0, 1, 2, 3]
    assert singletons.merge_heights == ()
    lumped = agglomerative_cluster(matrix, k=1)
    assert set(lumped.labels) == {0}
    assert len(lumped.merge_heights) == 3


def test_invalid_k_is_rejected():
    matrix = distance_matrix(random_signals(3, seed=2), "euclidean", CLUSTER_CONFIG)
    with pytest.raises(ValidationError):
        agglomerative_cluster(matrix, k=0)
    with pytest.raises(ValidationError):
        agglomerative_cluster(matrix, k=4)
    with pytest.raises(ValidationError):
        agglomerative_cluster(matrix, k=2, linkage="ward")


def test_partition_is_permutation_invariant():
    signals = random_signals(5, seed=9)
    ids = ["a", "b", "c", "d", "e"]
    base = distance_matrix(signals, "euclidean", CLUSTER_CONFIG, ids=ids)
    base_partition = partition(agglomerative_cluster(base, k=2), ids)
    order = [3, 0, 4, 2, 1]
    shuffled = distance_matrix(
        [signals[i] for i in order],
        "euclidean",
        CLUSTER_CONFIG,
        ids=[ids[i] for i in order],
    )
    shuffled_partition = partition(
        agglomerative_cluster(shuffled, k=2), [ids[i] for i in order]
    )
    assert base_partition == shuffled_partition


@pytest.mark.parametrize("linkage", ["single", "complete", "average"])
def test_merge_heights_are_nondecreasing(linkage):
    matrix = distance_matrix(random_signals(6, seed=4), "euclidean", CLUSTER_CONFIG)
    heights = agglomerative_cluster(matrix, k=1, linkage=linkage).merge_heights
    assert all(a <= b + 1e-12 for a, b in zip(heights, heights[1:]))


def test_mixed_phase_record_is_quarantined_not_fatal():
    items = [
        white_record(POLE_HALF, 2048, 0),
        white_record(POLE_NINETY_FIVE, 2048, 1),
        white_record(MIXED_SYSTEM, 2048, 2),
    ]
    matrix = distance_matrix(items, "subspace", CLUSTER_CONFIG, ids=["a", "b", "bad"])
    assert np.isnan(matrix.values[0, 2]) and np.isnan(matrix.values[1, 2])
    assert np.isfinite(matrix.values[0, 1])
    assert len(matrix.failures) == 2
    assert all("bad" in failure[:2] for failure in matrix.failures)
    assert all("Mixed" in failure[2] for failure in matrix.failures)
    result = agglomerative_cluster(matrix, k=2)
    assert result.labels == (0, 1, -1)


def test_pairwise_nan_excludes_only_one_endpoint():
    values = np.array(
        [[0.0, np.nan, 1.0], [np.nan, 0.0, 2.0], [1.0, 2.0, 0.0]]
    )
    matrix = DistanceMatrix(values, ("p", "q", "r"), "euclidean", (("p", "q", "boom"),))
    labels = agglomerative_cluster(matrix, k=2).labels
    assert sorted(labels) == [-1, 0, 1]


def test_two_generator_collection_is_recovered():
    records, truth = [], []
    for trial in range(8):
        generator = POLE_HALF if trial < 4 else POLE_NINETY_FIVE
        records.append(white_record(generator, 2048, 1000 + trial))
        truth.append(0 if trial < 4 else 1)
    matrix = distance_matrix(records, "subspace", CLUSTER_CONFIG)
    assert matrix.failures == ()
    labels = agglomerative_cluster(matrix, k=2).labels
    assert list(labels) == truth


def test_subspace_metric_requires_pairs():
    with pytest.raises(ValidationError):
        distance_matrix(random_signals(2), "subspace", CLUSTER_CONFIG)


def test_item_validation():
    signals = random_signals(2, seed=5)
    pair = white_record(POLE_HALF, 256, 0)
    with pytest.raises(ValidationError):
        distance_matrix([signals[0]], "euclidean", CLUSTER_CONFIG)
    with pytest.raises(ValidationError):
        distance_matrix([signals[0], pair], "euclidean", CLUSTER_CONFIG)
    with pytest.raises(ValidationError):
        distance_matrix(signals, "euclidean", CLUSTER_CONFIG, ids=["x", "x"])
    with pytest.raises(ValidationError):
        distance_matrix(signals, "euclidean", CLUSTER_CONFIG, ids=["x"])
    with pytest.raises(ValidationError):
        distance_matrix(signals, "mahalanobis", CLUSTER_CONFIG)


def test_matrix_shape_and_symmetry_validation():
    with pytest.raises(ValidationError):
        DistanceMatrix(np.zeros((2, 3)), ("a", "b"), "euclidean")
    with pytest.raises(ValidationError):
        DistanceMatrix(np.array([[0.0, 1.0], [2.0, 0.0]]), ("a", "b"), "euclidean")
