#!/usr/bin/env python3
"""
合成欺诈数据测试
全局AUC较高但弱簇的簇内AUC接近随机，且弱簇的偏移特征在漂移诊断中排名靠前
"""

import pytest

from analysis.decomposition import decompose_auc, worst_cluster
from analysis.drift_diagnostics import drift_report
from models import ClusteredDataset
from utils.exceptions import ConfigurationError
from utils.synthetic import FEATURE_COLUMNS, WEAK_CLUSTER_ID, generate_synthetic_fraud


@pytest.fixture(scope='module')
def synthetic_dataset():
    frame = generate_synthetic_fraud(n=5000, k=4, seed=0)
    return ClusteredDataset.from_arrays(frame['score'], frame['label'], frame['cluster'],
                                        features={name: frame[name] for name in FEATURE_COLUMNS})


class TestSyntheticFraud:
    """合成数据性质"""

    def test_columns_and_determinism(self):
        first = generate_synthetic_fraud(n=200, k=3, seed=5)
        second = generate_synthetic_fraud(n=200, k=3, seed=5)
        assert list(first.columns) == ['score', 'label', 'cluster'] + FEATURE_COLUMNS
        assert first.equals(second)
        assert first['cluster'].nunique() == 3

    def test_high_global_auc_with_weak_cluster(self, synthetic_dataset):
        result = decompose_auc(synthetic_dataset)
        assert result.global_auc > 0.85
        diagonal = dict(zip(result.cluster_ids, result.diagonal()))
        assert diagonal[WEAK_CLUSTER_ID] < 0.6
        assert worst_cluster(result) == WEAK_CLUSTER_ID

    def test_weak_cluster_drift(self, synthetic_dataset):
        report = drift_report(synthetic_dataset, WEAK_CLUSTER_ID)
        ranked = [item.feature for item in report.sorted_by_psi()]
        assert ranked[0] in ('merchant_risk', 'utilization', 'card_present')
        psi_by_feature = {item.feature: item.psi for item in report.per_feature}
        assert psi_by_feature['amount'] < 0.1
        assert psi_by_feature['hour'] < 0.1
        assert report.label_rate_difference > 0.15

    @pytest.mark.parametrize('kwargs', [{'k': 1}, {'n': 5, 'k': 4}, {'fraud_rate': 1.5}])
    def test_invalid_parameters(self, kwargs):
        with pytest.raises(ConfigurationError):
            generate_synthetic_fraud(**kwargs)
