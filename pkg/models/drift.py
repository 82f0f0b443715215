"""
漂移诊断模型
分箱直方图与关注簇对补集的漂移报告
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Sequence

import numpy as np

from utils.exceptions import EdgeMismatchError

DEFAULT_SMOOTHING_EPS = 1e-6


class BinStrategy(Enum):
    """分箱策略"""
    QUANTILE = "quantile"
    UNIFORM = "uniform"


@dataclass
class BinnedHistogram:
    """共享边界的分箱直方图

    edges 严格递增且首尾为 -inf/+inf；smoothed_probs 为加 ε 平滑后再归一化的概率。
    """
    edges: np.ndarray
    counts: np.ndarray
    smoothed_probs: np.ndarray
    is_constant: bool = False

    def __post_init__(self):
        if self.edges.size != self.counts.size + 1:
            raise EdgeMismatchError(f"边界数 {self.edges.size} 与计数 {self.counts.size} 不匹配")
        if np.any(np.diff(self.edges) <= 0):
            raise EdgeMismatchError("边界必须严格递增")

    @classmethod
    def from_counts(cls, edges: Sequence[float], counts: Sequence[int],
                    smoothing_eps: float = DEFAULT_SMOOTHING_EPS, is_constant: bool = False) -> 'BinnedHistogram':
        """由边界和计数构造，并计算平滑概率"""
        count_array = np.asarray(counts, dtype=np.int64)
        return cls(edges=np.asarray(edges, dtype=float),
                   counts=count_array,
                   smoothed_probs=smooth_counts(count_array, smoothing_eps),
                   is_constant=is_constant)

    @property
    def num_bins(self) -> int:
        return int(self.counts.size)

    def same_edges(self, other: 'BinnedHistogram') -> bool:
        return self.edges.shape == other.edges.shape and bool(np.array_equal(self.edges, other.edges))


def smooth_counts(counts: np.ndarray, smoothing_eps: float) -> np.ndarray:
    """每个箱加 ε 概率质量后重新归一化"""
    total = counts.sum()
    probs = counts / total if total > 0 else np.full(counts.size, 1.0 / counts.size)
    smoothed = probs + smoothing_eps
    return smoothed / smoothed.sum()


@dataclass
class FeatureDrift:
    """单个特征的漂移统计"""
    feature: str
    psi: float
    js_divergence: float
    num_bins: int
    n_focus: int
    n_rest: int
    constant: bool = False

    def to_dict(self) -> Dict:
        return {
            'feature': self.feature,
            'psi': float(self.psi),
            'js_divergence': float(self.js_divergence),
            'num_bins': self.num_bins,
            'n_focus': self.n_focus,
            'n_rest': self.n_rest,
            'constant': self.constant,
        }


@dataclass
class DriftReport:
    """关注簇相对补集的特征漂移与标签率差异"""
    focus_cluster: str
    per_feature: List[FeatureDrift]
    label_rate_focus: float
    label_rate_rest: float
    label_rate_difference: float
    n_focus: int = 0
    n_rest: int = 0
    skipped_features: List[str] = field(default_factory=list)

    def sorted_by_psi(self) -> List[FeatureDrift]:
        """按PSI降序排列，PSI相同时保持特征原顺序"""
        return sorted(self.per_feature, key=lambda item: -item.psi)

    def to_dict(self) -> Dict:
        return {
            'focus_cluster': self.focus_cluster,
            'n_focus': self.n_focus,
            'n_rest': self.n_rest,
            'label_rate_focus': float(self.label_rate_focus),
            'label_rate_rest': float(self.label_rate_rest),
            'label_rate_difference': float(self.label_rate_difference),
            'js_upper_bound': math.log(2.0),
            'features': [item.to_dict() for item in self.sorted_by_psi()],
            'skipped_features': list(self.skipped_features),
        }
