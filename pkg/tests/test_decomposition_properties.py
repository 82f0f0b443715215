#!/usr/bin/env python3
"""
分解恒等式的随机化性质测试
大规模随机数据集上的AUC分解恒等式、权重和、可加指标恒等式，以及基于 hypothesis 的对称性质
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from analysis.core_metrics import auc, brier_score, log_loss
from analysis.decomposition import decompose_additive, decompose_auc
from models import AdditiveMetric, ClusteredDataset, TiePolicy
from oracles import random_clustered_dataset, random_scores

TOLERANCE = 1e-12


@pytest.mark.property
@pytest.mark.slow
class TestDecompositionIdentity:
    """全局AUC = Σ w_ij · AUC_ij"""

    @pytest.mark.parametrize('tie_prob', [0.0, 0.3, 0.9])
    def test_identity_random_datasets(self, tie_prob):
        rng = np.random.default_rng(1000 + int(tie_prob * 10))
        for _ in range(340):
            dataset = random_clustered_dataset(rng, max_n=500, max_k=12, tie_prob=tie_prob)
            for policy in TiePolicy:
                result = decompose_auc(dataset, policy)
                total = 0.0
                for i in range(result.k):
                    for j in range(result.k):
                        value = result.auc_matrix[i][j]
                        if value is None:
                            assert result.weights[i, j] == 0.0
                        else:
                            total += result.weights[i, j] * value
                assert abs(result.global_auc - total) < TOLERANCE
                assert abs(result.residual) < TOLERANCE
                assert abs(result.weights.sum() - 1.0) < TOLERANCE

                positive = dataset.labels == 1
                assert result.global_auc == auc(dataset.scores, positive.astype(int), policy)

    def test_additive_identities_random_datasets(self):
        rng = np.random.default_rng(2024)
        for _ in range(300):
            dataset = random_clustered_dataset(rng, max_n=500, max_k=12)
            brier = decompose_additive(dataset, AdditiveMetric.BRIER)
            logloss = decompose_additive(dataset, AdditiveMetric.LOG_LOSS)
            assert abs(brier.weighted_total() - brier_score(dataset.probabilities, dataset.labels)) < TOLERANCE
            assert abs(logloss.weighted_total() - log_loss(dataset.probabilities, dataset.labels)) < TOLERANCE
            assert abs(sum(entry.weight for entry in brier.per_cluster) - 1.0) < TOLERANCE


scores_strategy = st.lists(st.floats(min_value=-1e6, max_value=1e6, allow_nan=False), min_size=2, max_size=60)


@pytest.mark.property
class TestAucSymmetries:
    """AUC的对称性质"""

    @given(scores=scores_strategy, data=st.data())
    @settings(max_examples=150, deadline=None)
    def test_label_flip_complements(self, scores, data):
        labels = data.draw(st.lists(st.integers(0, 1), min_size=len(scores), max_size=len(scores)))
        value = auc(scores, labels, TiePolicy.HALF_CREDIT)
        flipped = auc(scores, [1 - y for y in labels], TiePolicy.HALF_CREDIT)
        if value is None:
            assert flipped is None
        else:
            assert abs(value + flipped - 1.0) < TOLERANCE

    @given(scores=scores_strategy, data=st.data())
    @settings(max_examples=150, deadline=None)
    def test_monotone_transform_invariant(self, scores, data):
        labels = data.draw(st.lists(st.integers(0, 1), min_size=len(scores), max_size=len(scores)))
        value = auc(scores, labels)
        transformed = auc([3.0 * s + 7.0 for s in scores], labels)
        # 仿射变换可能因舍入产生新的同分，只比较无同分的情况
        if value is not None and len(set(scores)) == len(scores) and \
                len(set(3.0 * s + 7.0 for s in scores)) == len(scores):
            assert abs(value - transformed) < TOLERANCE

    @given(data=st.data())
    @settings(max_examples=100, deadline=None)
    def test_cluster_relabeling_preserves_global(self, data):
        n = data.draw(st.integers(2, 40))
        scores = data.draw(st.lists(st.sampled_from([0.0, 0.25, 0.5, 0.75, 1.0]), min_size=n, max_size=n))
        labels = data.draw(st.lists(st.integers(0, 1), min_size=n, max_size=n))
        clusters = data.draw(st.lists(st.sampled_from(['a', 'b', 'c']), min_size=n, max_size=n))
        if 0 not in labels or 1 not in labels:
            return
        dataset = ClusteredDataset.from_arrays(scores, labels, clusters)
        for policy in TiePolicy:
            result = decompose_auc(dataset, policy)
            assert abs(result.global_auc - auc(scores, labels, policy)) < TOLERANCE
            assert abs(result.intra_total + result.inter_total - result.global_auc) < TOLERANCE


tied_scores_strategy = st.lists(
    st.one_of(st.sampled_from([-1.0, 0.0, 0.25, 0.5, 1.0]),
              st.floats(min_value=-1e6, max_value=1e6, allow_nan=False)),
    min_size=2, max_size=60)


@pytest.mark.property
class TestTiePolicyProperties:
    """同分规则相关的性质，数据中含大量同分"""

    @given(scores=tied_scores_strategy, data=st.data())
    @settings(max_examples=200, deadline=None)
    def test_score_negation_complements(self, scores, data):
        labels = data.draw(st.lists(st.integers(0, 1), min_size=len(scores), max_size=len(scores)))
        value = auc(scores, labels, TiePolicy.HALF_CREDIT)
        negated = auc([-s for s in scores], labels, TiePolicy.HALF_CREDIT)
        if value is None:
            assert negated is None
        else:
            assert abs(value + negated - 1.0) < TOLERANCE

    @given(scores=tied_scores_strategy, data=st.data())
    @settings(max_examples=200, deadline=None)
    def test_strict_never_exceeds_half_credit(self, scores, data):
        labels = data.draw(st.lists(st.integers(0, 1), min_size=len(scores), max_size=len(scores)))
        strict = auc(scores, labels, TiePolicy.STRICT)
        half = auc(scores, labels, TiePolicy.HALF_CREDIT)
        if half is None:
            assert strict is None
        else:
            assert strict <= half + TOLERANCE

    def test_negation_and_ordering_seeded(self):
        rng = np.random.default_rng(77)
        for _ in range(300):
            n = int(rng.integers(2, 200))
            scores = random_scores(rng, n, tie_prob=0.7)
            labels = rng.integers(0, 2, size=n)
            labels[0], labels[1] = 1, 0
            half = auc(scores, labels, TiePolicy.HALF_CREDIT)
            assert abs(half + auc(-scores, labels, TiePolicy.HALF_CREDIT) - 1.0) < TOLERANCE
            assert auc(scores, labels, TiePolicy.STRICT) <= half + TOLERANCE


@pytest.mark.property
class TestClusterOrderInvariance:
    """簇顺序改变时矩阵按同一置换重排，总量不变"""

    @staticmethod
    def _reversed(dataset: ClusteredDataset) -> ClusteredDataset:
        clusters = [dataset.cluster_ids[c] for c in dataset.cluster_index]
        return ClusteredDataset.from_arrays(dataset.scores[::-1], dataset.labels[::-1], clusters[::-1])

    @pytest.mark.parametrize('policy', list(TiePolicy))
    def test_matrices_permute_consistently(self, policy):
        rng = np.random.default_rng(4242)
        reordered_cases = 0
        for _ in range(120):
            original = random_clustered_dataset(rng, max_n=200, max_k=6, tie_prob=0.4)
            reordered = self._reversed(original)
            permutation = [original.cluster_ids.index(cluster_id) for cluster_id in reordered.cluster_ids]
            if permutation != list(range(original.k)):
                reordered_cases += 1

            first = decompose_auc(original, policy)
            second = decompose_auc(reordered, policy)
            for a, i in enumerate(permutation):
                for b, j in enumerate(permutation):
                    assert second.weights[a, b] == first.weights[i, j]
                    left, right = second.auc_matrix[a][b], first.auc_matrix[i][j]
                    if right is None:
                        assert left is None
                    else:
                        assert abs(left - right) < TOLERANCE
            assert abs(second.intra_total - first.intra_total) < TOLERANCE
            assert abs(second.inter_total - first.inter_total) < TOLERANCE
            assert abs(second.global_auc - first.global_auc) < TOLERANCE
        assert reordered_cases > 0
