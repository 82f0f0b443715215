#!/usr/bin/env python3
"""
漂移诊断测试
分箱、PSI、Jensen-Shannon 散度与关注簇漂移报告
"""

import math

import numpy as np
import pytest

from analysis.drift_diagnostics import bin_feature, drift_report, js_divergence, psi
from models import BinnedHistogram, BinStrategy, ClusteredDataset
from utils.exceptions import (
    EdgeMismatchError,
    EmptyComplementError,
    EmptyInputError,
    NoFeaturesError,
    TooFewBinsError,
    UnknownClusterError,
)

LN2 = math.log(2.0)


def _histogram(probs):
    probs = np.asarray(probs, dtype=float)
    edges = np.concatenate([[-np.inf], np.arange(1, probs.size, dtype=float), [np.inf]])
    return BinnedHistogram(edges=edges, counts=np.zeros(probs.size, dtype=np.int64), smoothed_probs=probs)


class TestBinFeature:
    """分箱测试"""

    def test_median_split_goes_high(self):
        values = [1, 2, 3, 4, 5]
        hist_a, hist_b = bin_feature(values, values, num_bins=2)
        assert hist_a.counts.tolist() == [2, 3]
        assert hist_a.same_edges(hist_b)
        assert hist_a.edges[0] == -np.inf and hist_a.edges[-1] == np.inf

    def test_constant_feature(self):
        hist_a, hist_b = bin_feature([7.0] * 4, [7.0] * 3)
        assert hist_a.is_constant and hist_b.is_constant
        assert hist_a.num_bins == 1
        assert psi(hist_a, hist_b) == 0.0
        assert js_divergence(hist_a, hist_b) == 0.0

    def test_disjoint_supports(self):
        rng = np.random.default_rng(0)
        a = rng.random(200)
        b = 10 + rng.random(200)
        hist_a, hist_b = bin_feature(a, b, num_bins=10)
        low = hist_a.num_bins // 2
        assert hist_a.counts[low:].sum() == 0
        assert hist_b.counts[:low].sum() == 0
        assert abs(js_divergence(hist_a, hist_b) - LN2) < 1e-3

    def test_heavy_ties_collapse_edges(self):
        values = [0.0] * 95 + [1.0, 2.0, 3.0, 4.0, 5.0]
        hist_a, hist_b = bin_feature(values, values, num_bins=10)
        assert hist_a.num_bins < 10
        assert np.all(np.diff(hist_a.edges) > 0)
        assert hist_a.counts.sum() == 100

    def test_uniform_strategy(self):
        hist_a, _ = bin_feature([0.0, 1.0, 2.0, 3.0], [4.0], num_bins=4, strategy=BinStrategy.UNIFORM)
        assert hist_a.edges[1:-1].tolist() == [1.0, 2.0, 3.0]
        assert hist_a.counts.tolist() == [1, 1, 1, 1]

    def test_smoothed_probabilities_positive(self):
        hist_a, _ = bin_feature([0.0, 0.1], [5.0, 6.0, 7.0], num_bins=4)
        assert np.all(hist_a.smoothed_probs > 0)
        assert abs(hist_a.smoothed_probs.sum() - 1.0) < 1e-12

    def test_errors(self):
        with pytest.raises(EmptyInputError):
            bin_feature([], [1.0])
        with pytest.raises(TooFewBinsError):
            bin_feature([1.0], [2.0], num_bins=1)


class TestDivergences:
    """PSI 与 JS 散度测试"""

    def test_hand_computed_psi(self):
        value = psi(_histogram([0.5, 0.5]), _histogram([0.9, 0.1]))
        expected = (0.5 - 0.9) * math.log(5 / 9) + (0.5 - 0.1) * math.log(5)
        assert abs(value - expected) < 1e-12
        assert abs(value - 0.8789) < 1e-4

    def test_hand_computed_js(self):
        value = js_divergence(_histogram([0.5, 0.5]), _histogram([0.9, 0.1]))
        expected = 0.5 * (0.5 * math.log(5 / 7) + 0.5 * math.log(5 / 3)) + \
            0.5 * (0.9 * math.log(9 / 7) + 0.1 * math.log(1 / 3))
        assert abs(value - expected) < 1e-12
        assert abs(value - 0.0871) < 1e-4

    def test_edge_mismatch(self):
        with pytest.raises(EdgeMismatchError):
            psi(_histogram([0.5, 0.5]), _histogram([0.2, 0.3, 0.5]))
        with pytest.raises(EdgeMismatchError):
            js_divergence(_histogram([0.5, 0.5]), _histogram([0.2, 0.3, 0.5]))

    def test_smoothing_sensitivity(self):
        a, b = [0.0, 1.0, 2.0, 2.5, 3.0, 3.5], [1.5, 2.0, 4.0, 5.0, 6.0, 6.5]
        first = js_divergence(*bin_feature(a, b, 4, smoothing_eps=1e-6))
        second = js_divergence(*bin_feature(a, b, 4, smoothing_eps=5e-7))
        assert abs(first - second) < 1e-4


@pytest.mark.property
@pytest.mark.slow
class TestDivergenceProperties:
    """随机直方图上的范围、对称性和同分布为零"""

    def test_random_histogram_pairs(self):
        rng = np.random.default_rng(42)
        for _ in range(600):
            size_a = int(rng.integers(1, 200))
            size_b = int(rng.integers(1, 200))
            a = rng.normal(rng.normal(), rng.uniform(0.1, 3.0), size=size_a)
            b = rng.normal(rng.normal(), rng.uniform(0.1, 3.0), size=size_b)
            num_bins = int(rng.integers(2, 20))
            hist_a, hist_b = bin_feature(a, b, num_bins)

            js_ab, js_ba = js_divergence(hist_a, hist_b), js_divergence(hist_b, hist_a)
            psi_ab, psi_ba = psi(hist_a, hist_b), psi(hist_b, hist_a)
            assert 0.0 <= js_ab <= LN2
            assert psi_ab >= 0.0
            assert abs(js_ab - js_ba) < 1e-12
            assert abs(psi_ab - psi_ba) < 1e-12

            same_a, same_b = bin_feature(a, a, num_bins)
            assert abs(js_divergence(same_a, same_b)) < 1e-12
            assert abs(psi(same_a, same_b)) < 1e-12


def _drift_dataset(shift: float = 0.0, focus_rate: float = 0.3, rest_rate: float = 0.02):
    rng = np.random.default_rng(17)
    n_focus, n_rest = 400, 1600
    clusters = ['F'] * n_focus + ['R'] * n_rest
    labels = np.concatenate([
        (np.arange(n_focus) < round(focus_rate * n_focus)).astype(int),
        (np.arange(n_rest) < round(rest_rate * n_rest)).astype(int),
    ])
    features = {
        'stable': rng.normal(size=n_focus + n_rest),
        'shifted': np.concatenate([rng.normal(shift, 1.0, n_focus), rng.normal(0.0, 1.0, n_rest)]),
        'noise': rng.uniform(size=n_focus + n_rest),
    }
    scores = rng.random(n_focus + n_rest)
    return ClusteredDataset.from_arrays(scores, labels, clusters, features=features)


class TestDriftReport:
    """关注簇漂移报告测试"""

    def test_shifted_feature_ranks_first(self):
        report = drift_report(_drift_dataset(shift=10.0), 'F')
        assert report.sorted_by_psi()[0].feature == 'shifted'
        assert report.to_dict()['features'][0]['feature'] == 'shifted'

    def test_label_rate_difference(self):
        report = drift_report(_drift_dataset(), 'F')
        assert report.label_rate_focus == pytest.approx(0.30, abs=1e-12)
        assert report.label_rate_rest == pytest.approx(0.02, abs=1e-12)
        assert report.label_rate_difference == pytest.approx(0.28, abs=1e-12)

    def test_duplicate_data_has_no_drift(self):
        rng = np.random.default_rng(1)
        half = rng.normal(size=100)
        labels = np.tile([0, 1], 50)
        dataset = ClusteredDataset.from_arrays(np.tile(rng.random(100), 2), np.tile(labels, 2),
                                               ['a'] * 100 + ['b'] * 100,
                                               features={'x': np.tile(half, 2)})
        report = drift_report(dataset, 'a')
        assert report.per_feature[0].psi < 1e-12
        assert report.per_feature[0].js_divergence < 1e-12
        assert report.label_rate_difference == 0.0

    def test_missing_values_excluded_per_feature(self):
        dataset = ClusteredDataset.from_arrays(
            [0.1, 0.2, 0.3, 0.4], [0, 1, 0, 1], ['a', 'a', 'b', 'b'],
            features={'x': [1.0, np.nan, 2.0, 3.0], 'empty': [np.nan, np.nan, 1.0, 2.0]})
        report = drift_report(dataset, 'a', num_bins=2)
        assert [item.feature for item in report.per_feature] == ['x']
        assert report.per_feature[0].n_focus == 1
        assert report.skipped_features == ['empty']

    def test_deterministic(self):
        dataset = _drift_dataset(shift=1.0)
        assert drift_report(dataset, 'F').to_dict() == drift_report(dataset, 'F', max_workers=3).to_dict()

    def test_errors(self, toy_dataset):
        with pytest.raises(UnknownClusterError):
            drift_report(_drift_dataset(), 'missing')
        with pytest.raises(NoFeaturesError):
            drift_report(toy_dataset, 'C1')
        single = ClusteredDataset.from_arrays([0.1, 0.9], [0, 1], features={'x': [1.0, 2.0]})
        with pytest.raises(EmptyComplementError):
            drift_report(single, 'all')
