"""
数据模型
评分数据集、分解结果、漂移报告、聚类模型与诊断报告
"""

from .dataset import ClusteredDataset, IngestSummary, ScoredSample, TiePolicy, DEFAULT_CLUSTER_ID
from .decomposition import (
    AdditiveDecomposition,
    AdditiveMetric,
    AucDecomposition,
    ClusterMetric,
    NonAdditivityResult,
    WorstClusterCriterion,
)
from .drift import BinnedHistogram, BinStrategy, DriftReport, FeatureDrift
from .clustering import KMeansModel
from .report import DiagnosticsReport, IngestSpec

__all__ = [
    'ClusteredDataset', 'IngestSummary', 'ScoredSample', 'TiePolicy', 'DEFAULT_CLUSTER_ID',
    'AdditiveDecomposition', 'AdditiveMetric', 'AucDecomposition', 'ClusterMetric',
    'NonAdditivityResult', 'WorstClusterCriterion',
    'BinnedHistogram', 'BinStrategy', 'DriftReport', 'FeatureDrift',
    'KMeansModel',
    'DiagnosticsReport', 'IngestSpec',
]
