"""
分解结果模型
AUC分解 (权重矩阵 + 条件AUC矩阵) 与可加指标 (Brier / log loss) 的按簇分解
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional

import numpy as np

from .dataset import TiePolicy, optional_float

# None 表示无定义的AUC单元 (P_i 或 N_j 为空)
AucCell = Optional[float]


class AdditiveMetric(Enum):
    """可按簇加权分解的指标"""
    BRIER = "brier"
    LOG_LOSS = "log_loss"

    @classmethod
    def parse(cls, value) -> 'AdditiveMetric':
        if isinstance(value, cls):
            return value
        aliases = {'logloss': cls.LOG_LOSS, 'log-loss': cls.LOG_LOSS}
        key = str(value).lower()
        if key in aliases:
            return aliases[key]
        return cls(key)


class WorstClusterCriterion(Enum):
    """最差簇的判定准则"""
    MIN_DIAGONAL_AUC = "min_diagonal_auc"
    MAX_METRIC = "max_metric"


@dataclass
class AucDecomposition:
    """全局AUC的簇级分解

    weights[i][j] = |P_i|·|N_j| / (|P|·|N|)，auc_matrix[i][j] 为正样本来自簇i、
    负样本来自簇j时的条件AUC；行 = 正样本所在簇，列 = 负样本所在簇。
    """
    cluster_ids: List[str]
    weights: np.ndarray
    auc_matrix: List[List[AucCell]]
    global_auc: float
    intra_total: float
    inter_total: float
    residual: float
    tie_policy: TiePolicy
    pos_counts: List[int]
    neg_counts: List[int]

    @property
    def k(self) -> int:
        return len(self.cluster_ids)

    def diagonal(self) -> List[AucCell]:
        """簇内AUC (AUC_kk)"""
        return [self.auc_matrix[i][i] for i in range(self.k)]

    def weighted_total(self) -> float:
        return self.intra_total + self.inter_total

    def to_dict(self) -> Dict:
        return {
            'cluster_ids': list(self.cluster_ids),
            'weights': [[float(w) for w in row] for row in self.weights],
            'matrix': [[optional_float(v) for v in row] for row in self.auc_matrix],
            'global': float(self.global_auc),
            'intra_total': float(self.intra_total),
            'inter_total': float(self.inter_total),
            'residual': float(self.residual),
            'tie_policy': self.tie_policy.value,
            'pos_counts': list(self.pos_counts),
            'neg_counts': list(self.neg_counts),
        }


@dataclass
class NonAdditivityResult:
    """簇内AUC的朴素加权平均与全局AUC的差距"""
    naive_weighted_avg: float
    global_auc: float
    gap: float
    weight_sum: float

    def to_dict(self) -> Dict:
        return {
            'naive_weighted_avg': float(self.naive_weighted_avg),
            'global_auc': float(self.global_auc),
            'gap': float(self.gap),
            'weight_sum': float(self.weight_sum),
        }


@dataclass
class ClusterMetric:
    """单个簇的可加指标值"""
    cluster_id: str
    n: int
    weight: float
    value: float
    clamped: int = 0

    def to_dict(self) -> Dict:
        return {
            'cluster': self.cluster_id,
            'n': self.n,
            'weight': float(self.weight),
            'value': float(self.value),
            'clamped': self.clamped,
        }


@dataclass
class AdditiveDecomposition:
    """可加指标的按簇分解: global_value = Σ_k (n_k/n)·value_k"""
    metric: AdditiveMetric
    per_cluster: List[ClusterMetric]
    global_value: float
    clamp_eps: Optional[float] = None
    clamped_total: int = field(default=0)

    @property
    def metric_name(self) -> str:
        return self.metric.value

    @property
    def cluster_ids(self) -> List[str]:
        return [entry.cluster_id for entry in self.per_cluster]

    def values(self) -> List[float]:
        return [entry.value for entry in self.per_cluster]

    def weighted_total(self) -> float:
        return float(sum(entry.weight * entry.value for entry in self.per_cluster))

    def to_dict(self) -> Dict:
        data = {
            'metric': self.metric_name,
            'global': float(self.global_value),
            'weighted_total': self.weighted_total(),
            'per_cluster': [entry.to_dict() for entry in self.per_cluster],
        }
        if self.metric is AdditiveMetric.LOG_LOSS:
            data['clamp_eps'] = self.clamp_eps
            data['clamped_total'] = self.clamped_total
        return data
