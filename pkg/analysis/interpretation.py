"""
诊断解读
簇概况、AUC 与校准指标的联合解读以及训练/测试泛化差距
"""

from typing import Any, Dict, List, Optional

import numpy as np

from models.dataset import ClusteredDataset, TiePolicy
from models.decomposition import AdditiveDecomposition, AdditiveMetric, AucDecomposition
from utils.log_helper import get_logger

from .core_metrics import DEFAULT_CLAMP_EPS, auc_from_split, brier_score, log_loss

logger = get_logger(__name__)

RANKS_WELL_POORLY_CALIBRATED = 'ranks_well_poorly_calibrated'
CALIBRATED_WEAK_DISCRIMINATION = 'calibrated_weak_discrimination'
LOCALIZED_FAILURE = 'localized_failure'
CONSISTENT = 'consistent'
UNDEFINED_AUC = 'undefined_auc'


def cluster_summary(dataset: ClusteredDataset) -> List[Dict[str, Any]]:
    """每个簇的样本数、正负样本数、标签率和平均分数 (按数据集顺序)"""
    rows = []
    for k, cluster_id in enumerate(dataset.cluster_ids):
        idx = dataset.members(k)
        rows.append({
            'cluster': cluster_id,
            'n': int(idx.size),
            'positives': dataset.pos_counts[k],
            'negatives': dataset.neg_counts[k],
            'label_rate': dataset.pos_counts[k] / float(idx.size),
            'mean_score': float(np.mean(dataset.scores[idx])),
        })
    return rows


def _classify(auc_kk: Optional[float], global_auc: float,
              brier_k: Optional[float], global_brier: Optional[float]) -> str:
    if auc_kk is None:
        return UNDEFINED_AUC
    if brier_k is None or global_brier is None:
        return CONSISTENT if auc_kk >= global_auc else CALIBRATED_WEAK_DISCRIMINATION
    if auc_kk >= global_auc and brier_k > global_brier:
        return RANKS_WELL_POORLY_CALIBRATED
    if auc_kk < global_auc and brier_k <= global_brier:
        return CALIBRATED_WEAK_DISCRIMINATION
    if auc_kk < global_auc and brier_k > global_brier:
        return LOCALIZED_FAILURE
    return CONSISTENT


def joint_interpretation(auc_decomp: AucDecomposition,
                         brier_decomp: Optional[AdditiveDecomposition] = None,
                         log_loss_decomp: Optional[AdditiveDecomposition] = None) -> List[Dict[str, Any]]:
    """按簇给出判别能力与校准的联合解读

    - 簇内AUC不低于全局且Brier高于全局: 排序好但校准差
    - 簇内AUC低于全局且Brier不高于全局: 校准尚可但判别弱
    - 两者都差: 局部失效
    - 簇内AUC无定义: undefined_auc

    没有概率列时只依据AUC判断。
    """
    brier_values = dict(zip(brier_decomp.cluster_ids, brier_decomp.values())) if brier_decomp else {}
    log_loss_values = dict(zip(log_loss_decomp.cluster_ids, log_loss_decomp.values())) if log_loss_decomp else {}
    global_brier = brier_decomp.global_value if brier_decomp else None

    rows = []
    for cluster_id, auc_kk in zip(auc_decomp.cluster_ids, auc_decomp.diagonal()):
        brier_k = brier_values.get(cluster_id)
        rows.append({
            'cluster': cluster_id,
            'auc': auc_kk,
            'brier': brier_k,
            'log_loss': log_loss_values.get(cluster_id),
            'flag': _classify(auc_kk, auc_decomp.global_auc, brier_k, global_brier),
        })
    return rows


def _pooled_metrics(dataset: ClusteredDataset, tie_policy: TiePolicy, clamp_eps: float) -> Dict[str, Any]:
    positive = dataset.labels == 1
    metrics = {
        'auc': auc_from_split(dataset.scores[positive], dataset.scores[~positive], tie_policy),
        AdditiveMetric.BRIER.value: None,
        AdditiveMetric.LOG_LOSS.value: None,
    }
    if dataset.has_probabilities:
        metrics[AdditiveMetric.BRIER.value] = brier_score(dataset.probabilities, dataset.labels)
        metrics[AdditiveMetric.LOG_LOSS.value] = log_loss(dataset.probabilities, dataset.labels, clamp_eps)
    return metrics


def generalization_gap(train_dataset: ClusteredDataset, test_dataset: ClusteredDataset,
                       tie_policy: TiePolicy = TiePolicy.HALF_CREDIT,
                       clamp_eps: float = DEFAULT_CLAMP_EPS) -> Dict[str, Any]:
    """训练集与测试集上的全局指标及差距 (train - test)

    任一侧指标无定义时对应差距为 None。
    """
    tie_policy = TiePolicy.parse(tie_policy)
    train = _pooled_metrics(train_dataset, tie_policy, clamp_eps)
    test = _pooled_metrics(test_dataset, tie_policy, clamp_eps)
    gap = {
        name: (train[name] - test[name] if train[name] is not None and test[name] is not None else None)
        for name in train
    }
    logger.info(f"泛化差距: AUC {gap['auc']}")
    return {'train': train, 'test': test, 'gap': gap}
