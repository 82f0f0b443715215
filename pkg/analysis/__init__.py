"""
分析模块
核心指标、AUC分解、漂移诊断、k-means 聚类与联合解读
"""

from .core_metrics import auc, brier_score, log_loss
from .decomposition import (
    auc_matrix,
    decompose_additive,
    decompose_auc,
    demonstrate_non_additivity,
    non_additivity_from,
    weight_matrix,
    worst_cluster,
)
from .drift_diagnostics import bin_feature, drift_report, js_divergence, psi
from .clustering import kmeans_assign, kmeans_fit
from .interpretation import cluster_summary, generalization_gap, joint_interpretation

__all__ = [
    'auc', 'brier_score', 'log_loss',
    'auc_matrix', 'decompose_additive', 'decompose_auc', 'demonstrate_non_additivity', 'non_additivity_from',
    'weight_matrix', 'worst_cluster',
    'bin_feature', 'drift_report', 'js_divergence', 'psi',
    'kmeans_assign', 'kmeans_fit',
    'cluster_summary', 'generalization_gap', 'joint_interpretation',
]
