#!/usr/bin/env python3
"""
数据集模型测试
ScoredSample 校验、逐条记录与列式数据集之间的转换
"""

import math

import pytest

from models import ClusteredDataset, ScoredSample
from utils.exceptions import EmptyInputError, LabelOutOfDomainError, NonFiniteScoreError


class TestScoredSample:
    """单条记录校验"""

    def test_valid_sample(self):
        sample = ScoredSample(score=-3.5, label=1, cluster='A', features={'x': 1.0})
        assert sample.features['x'] == 1.0

    @pytest.mark.parametrize('score', [math.nan, math.inf, -math.inf])
    def test_non_finite_score_rejected(self, score):
        with pytest.raises(NonFiniteScoreError):
            ScoredSample(score=score, label=0, cluster='A')

    @pytest.mark.parametrize('label', [2, -1])
    def test_label_out_of_domain(self, label):
        with pytest.raises(LabelOutOfDomainError):
            ScoredSample(score=0.5, label=label, cluster='A')


class TestSampleConversion:
    """from_samples 与 samples() 互为逆操作"""

    def _samples(self):
        return [
            ScoredSample(0.9, 1, 'B', {'x': 1.0, 'y': 2.0}),
            ScoredSample(0.2, 0, 'A', {'x': 3.0}),
            ScoredSample(0.7, 0, 'B', {'y': 4.0}),
            ScoredSample(0.4, 1, 'A', {'x': 5.0, 'y': 6.0}),
        ]

    def test_from_samples(self):
        dataset = ClusteredDataset.from_samples(self._samples())
        assert dataset.cluster_ids == ['B', 'A']
        assert dataset.pos_counts == [1, 1]
        assert dataset.neg_counts == [1, 1]
        assert dataset.feature_names == ['x', 'y']
        assert math.isnan(dataset.features['x'][2])
        assert math.isnan(dataset.features['y'][1])
        assert dataset.has_probabilities

    def test_samples_round_trip(self):
        original = self._samples()
        restored = list(ClusteredDataset.from_samples(original).samples())
        assert [(s.score, s.label, s.cluster) for s in restored] == \
               [(s.score, s.label, s.cluster) for s in original]
        assert restored[0].features == {'x': 1.0, 'y': 2.0}
        assert math.isnan(restored[1].features['y'])

    def test_empty_samples(self):
        with pytest.raises(EmptyInputError):
            ClusteredDataset.from_samples([])
