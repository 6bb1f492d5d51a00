import itertools

import numpy as np
import pytest

from pcmtree import (
    EdgeNotInMatrix,
    IncompleteMatrix,
    NonConvergence,
    PCMatrix,
    SpanningTree,
    enumerate_spanning_trees,
    evm_weights,
    from_weights,
    gmm_weights,
    gmt_weights,
    induce_graph,
    is_consistent,
    parse_matrix,
    tree_weights,
)
from pcmtree.graph import is_spanning_tree
from pcmtree.weights import tree_log_weights

from helpers import random_reciprocal

NEV = [0.20906, 0.24701, 0.06495, 0.47897]
NGM = [0.20704, 0.26033, 0.07439, 0.45824]


def brute_force_gmt(m):
    """Geometric mean over trees found by brute force, weights by traversal."""
    pairs = m.known_pairs()
    logs = []
    for combo in itertools.combinations(pairs, m.n - 1):
        if is_spanning_tree(m.n, combo):
            logs.append(np.log(tree_weights(SpanningTree(tuple(combo)), m)))
    w = np.exp(np.mean(logs, axis=0))
    return w / w.sum()


def test_evm_ex1(reference):
    res = evm_weights(reference)
    assert res.lambda_max == pytest.approx(4.677, abs=1e-3)
    np.testing.assert_allclose(res.vector, NEV, atol=5e-5)


def test_evm_against_numpy_eig(rng):
    for _ in range(50):
        m = random_reciprocal(rng, int(rng.integers(3, 8)))
        vals, vecs = np.linalg.eig(m.values)
        k = np.argmax(vals.real)
        ref = np.abs(vecs[:, k].real)
        res = evm_weights(m)
        assert res.lambda_max == pytest.approx(vals[k].real, rel=1e-10)
        np.testing.assert_allclose(res.vector, ref / ref.sum(), atol=1e-9)
        resid = m.values @ res.vector - res.lambda_max * res.vector
        assert np.abs(resid).max() / res.vector.max() < 1e-9


def test_evm_two_by_two():
    res = evm_weights(parse_matrix("1 7\n1/7 1"))
    assert res.lambda_max == pytest.approx(2.0, abs=1e-12)
    np.testing.assert_allclose(res.vector, [7 / 8, 1 / 8])


def test_evm_consistent_is_exact():
    v = np.array([3.0, 1.0, 0.5, 2.0])
    res = evm_weights(from_weights(v))
    assert res.lambda_max == pytest.approx(4.0, abs=1e-12)
    np.testing.assert_allclose(res.vector, v / v.sum(), atol=1e-12)


def test_evm_nonconvergence(reference):
    with pytest.raises(NonConvergence):
        evm_weights(reference, max_iter=3)


def test_incomplete_rejected(incomplete):
    with pytest.raises(IncompleteMatrix):
        evm_weights(incomplete)
    with pytest.raises(IncompleteMatrix):
        gmm_weights(incomplete)


def test_gmm_reference_values(reference, almost):
    np.testing.assert_allclose(gmm_weights(reference), NGM, atol=5e-5)
    np.testing.assert_allclose(gmm_weights(almost), [0.48319, 0.15688, 0.08822, 0.27172], atol=5e-5)


def test_gmm_consistent():
    v = np.array([0.1, 5.0, 2.0])
    np.testing.assert_allclose(gmm_weights(from_weights(v)), v / v.sum(), rtol=1e-12)


def test_tree_weights_ex2(incomplete):
    w = tree_weights(SpanningTree(((0, 1), (1, 2), (1, 3))), incomplete)
    # w2 = 1, w1 = 2, w3 = 1/5, w4 = 1, total 21/5
    np.testing.assert_allclose(w, [10 / 21, 5 / 21, 1 / 21, 5 / 21], rtol=1e-14)


def test_tree_weights_two_alternatives():
    w = tree_weights(SpanningTree(((0, 1),)), parse_matrix("1 3\n1/3 1"))
    np.testing.assert_allclose(w, [0.75, 0.25])


def test_tree_weights_missing_edge(incomplete):
    with pytest.raises(EdgeNotInMatrix):
        tree_weights(SpanningTree(((0, 2), (0, 1), (1, 3))), incomplete)


def test_tree_weights_honour_edge_ratios(rng):
    for _ in range(20):
        m = random_reciprocal(rng, int(rng.integers(2, 7)))
        for tree in enumerate_spanning_trees(induce_graph(m)):
            w = tree_weights(tree, m)
            assert w.min() > 0 and abs(w.sum() - 1) < 1e-12
            for i, j in tree.edges:
                assert w[i] / w[j] == pytest.approx(m.values[i, j], rel=1e-12)


def test_tree_weights_consistent_matrix():
    v = np.array([2.0, 1.0, 4.0, 0.5])
    m = from_weights(v)
    for tree in enumerate_spanning_trees(induce_graph(m)):
        np.testing.assert_allclose(tree_weights(tree, m), v / v.sum(), rtol=1e-12)


def test_rooting_cancels_after_normalization(rng):
    m = random_reciprocal(rng, 5)
    perm = [3, 0, 4, 1, 2]
    pm = m.permuted(perm)
    for tree in enumerate_spanning_trees(induce_graph(m)):
        inv = {old: new for new, old in enumerate(perm)}
        moved = SpanningTree(tuple(sorted(tuple(sorted((inv[i], inv[j]))) for i, j in tree.edges)))
        np.testing.assert_allclose(tree_weights(moved, pm)[inv[0]], tree_weights(tree, m)[0], rtol=1e-12)


def test_vectorized_route_matches_traversal(rng, incomplete):
    for m in [incomplete] + [random_reciprocal(rng, n) for n in (2, 3, 5, 6)]:
        trees = list(enumerate_spanning_trees(induce_graph(m)))
        logs = np.concatenate(list(tree_log_weights(m)))
        assert logs.shape == (len(trees), m.n)
        for row, tree in zip(logs, trees):
            np.testing.assert_allclose(np.exp(row), tree_weights(tree, m), rtol=1e-12)


def test_gmt_ex2(incomplete):
    np.testing.assert_allclose(gmt_weights(incomplete), [0.2002, 0.2292, 0.0458, 0.5247], atol=5e-4)
    np.testing.assert_allclose(gmt_weights(incomplete), brute_force_gmt(incomplete), rtol=1e-12)


def test_gmt_equals_gmm_on_complete(rng, reference):
    np.testing.assert_allclose(gmt_weights(reference), NGM, atol=5e-5)
    for _ in range(40):
        m = random_reciprocal(rng, int(rng.integers(2, 7)))
        assert np.abs(gmt_weights(m) - gmm_weights(m)).max() <= 1e-9


def test_gmt_incomplete_against_brute_force(rng):
    for _ in range(20):
        n = int(rng.integers(3, 7))
        a = random_reciprocal(rng, n).values.copy()
        for i, j in itertools.combinations(range(n), 2):
            if j != i + 1 and rng.random() < 0.4:  # keep the path so the graph stays connected
                a[i, j] = a[j, i] = np.nan
        m = PCMatrix(a)
        np.testing.assert_allclose(gmt_weights(m), brute_force_gmt(m), rtol=1e-10)


def test_lambda_equals_n_iff_consistent(rng):
    for _ in range(30):
        n = int(rng.integers(3, 7))
        consistent = from_weights(np.exp(rng.uniform(-2, 2, n)))
        assert is_consistent(consistent)
        assert abs(evm_weights(consistent).lambda_max - n) <= 1e-7
        np.testing.assert_allclose(evm_weights(consistent).vector, gmm_weights(consistent), atol=1e-9)
        noisy = random_reciprocal(rng, n, spread=1.0)
        assert not is_consistent(noisy)
        assert evm_weights(noisy).lambda_max - n > 1e-7
