"""
评分数据模型
单条预测记录 ScoredSample 与按簇划分的列式数据集 ClusteredDataset
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from utils.exceptions import (
    EmptyInputError,
    LabelOutOfDomainError,
    LengthMismatchError,
    NonFiniteScoreError,
    UnknownClusterError,
)

DEFAULT_CLUSTER_ID = 'all'


class TiePolicy(Enum):
    """同分正负样本对的计分规则"""
    HALF_CREDIT = "half"   # 同分记 1/2
    STRICT = "strict"      # 同分记 0

    @classmethod
    def parse(cls, value) -> 'TiePolicy':
        """从字符串或枚举解析"""
        if isinstance(value, cls):
            return value
        for policy in cls:
            if policy.value == str(value).lower():
                return policy
        raise ValueError(f"未知的同分规则: {value!r}")


@dataclass(frozen=True)
class ScoredSample:
    """单条预测记录"""
    score: float
    label: int
    cluster: str
    features: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self):
        if not math.isfinite(self.score):
            raise NonFiniteScoreError(value=self.score)
        if self.label not in (0, 1):
            raise LabelOutOfDomainError(value=self.label)


@dataclass
class IngestSummary:
    """数据来源记录：路径、内容摘要和行数核对"""
    path: str
    digest: str
    rows_total: int
    rows_accepted: int
    rejected: List[Tuple[int, str]] = field(default_factory=list)

    def to_dict(self) -> Dict:
        return {
            'path': self.path,
            'rows_total': self.rows_total,
            'rows_accepted': self.rows_accepted,
            'rows_rejected': len(self.rejected),
            'rejected': [{'row': row, 'reason': reason} for row, reason in self.rejected],
        }


def as_float_array(values: Iterable[float]) -> np.ndarray:
    """转换为一维float数组"""
    if not isinstance(values, np.ndarray):
        values = list(values)
    return np.asarray(values, dtype=float).reshape(-1)


def validate_scores(scores: Iterable[float]) -> np.ndarray:
    """把分数转换为float数组并校验有限性"""
    array = as_float_array(scores)
    finite = np.isfinite(array)
    if not finite.all():
        index = int(np.flatnonzero(~finite)[0])
        raise NonFiniteScoreError(row=index + 1, value=float(array[index]))
    return array


def validate_labels(labels: Iterable) -> np.ndarray:
    """把标签转换为int8数组并校验取值在 {0, 1}

    字符串标签不在此处解析 (由 reporting.ingest 负责)，直接视为越界。
    """
    raw = np.asarray(labels if isinstance(labels, np.ndarray) else list(labels)).reshape(-1)
    if raw.dtype.kind == 'b':
        return raw.astype(np.int8)
    if raw.dtype.kind in 'iuf':
        outside = ~np.isin(raw, (0, 1))
    else:
        outside = np.array([isinstance(v, str) or v not in (0, 1) for v in raw.tolist()], dtype=bool)
    if outside.any():
        index = int(np.flatnonzero(outside)[0])
        raise LabelOutOfDomainError(row=index + 1, value=raw.tolist()[index])
    return raw.astype(np.int8)


def check_lengths(**arrays: Sequence) -> int:
    """校验各序列等长，返回长度"""
    lengths = {name: len(values) for name, values in arrays.items()}
    if len(set(lengths.values())) > 1:
        raise LengthMismatchError(lengths)
    return next(iter(lengths.values())) if lengths else 0


class ClusteredDataset:
    """按簇划分的列式评分数据集

    簇的顺序为首次出现的顺序 (C_1 ... C_K)，该顺序决定矩阵行列和并列时的选择。
    每个簇非空；各簇正/负样本数之和等于全局正/负样本数。
    """

    def __init__(self,
                 scores: np.ndarray,
                 labels: np.ndarray,
                 cluster_index: np.ndarray,
                 cluster_ids: List[str],
                 probabilities: Optional[np.ndarray] = None,
                 features: Optional[Dict[str, np.ndarray]] = None,
                 source: Optional[IngestSummary] = None):
        self.scores = scores
        self.labels = labels
        self.cluster_index = cluster_index
        self.cluster_ids = list(cluster_ids)
        self.probabilities = probabilities
        self.features = dict(features or {})
        self.source = source

        self._members = [np.flatnonzero(cluster_index == k) for k in range(len(self.cluster_ids))]
        self.pos_counts = [int(labels[idx].sum()) for idx in self._members]
        self.neg_counts = [int(idx.size) - pos for idx, pos in zip(self._members, self.pos_counts)]

    # ------------------------------------------------------------ 构造

    @classmethod
    def from_arrays(cls,
                    scores: Iterable[float],
                    labels: Iterable,
                    clusters: Optional[Iterable] = None,
                    probabilities: Optional[Iterable[float]] = None,
                    features: Optional[Mapping[str, Iterable[float]]] = None,
                    source: Optional[IngestSummary] = None) -> 'ClusteredDataset':
        """从列数组构造并校验数据集

        Args:
            scores: 分类器分数(任意有限实数)
            labels: 二元标签
            clusters: 簇标识，None时全部归入簇 "all"
            probabilities: 概率列，None且分数均在[0, 1]内时以分数作为概率
            features: 特征名 -> 数值列 (缺失值用NaN表示)
            source: 数据来源记录

        Returns:
            ClusteredDataset: 校验后的数据集
        """
        score_array = validate_scores(scores)
        label_array = validate_labels(labels)
        n = check_lengths(scores=score_array, labels=label_array)
        if n == 0:
            raise EmptyInputError("数据集")

        if clusters is None:
            cluster_keys = [DEFAULT_CLUSTER_ID] * n
        else:
            cluster_keys = [str(c) for c in clusters]
            check_lengths(scores=score_array, clusters=cluster_keys)

        cluster_ids: List[str] = []
        positions: Dict[str, int] = {}
        cluster_index = np.empty(n, dtype=np.int64)
        for i, key in enumerate(cluster_keys):
            if key not in positions:
                positions[key] = len(cluster_ids)
                cluster_ids.append(key)
            cluster_index[i] = positions[key]

        if probabilities is not None:
            prob_array = as_float_array(probabilities)
            check_lengths(scores=score_array, probabilities=prob_array)
        elif np.all((score_array >= 0.0) & (score_array <= 1.0)):
            prob_array = score_array
        else:
            prob_array = None

        feature_arrays: Dict[str, np.ndarray] = {}
        for name, values in (features or {}).items():
            column = as_float_array(values)
            check_lengths(scores=score_array, feature=column)
            feature_arrays[str(name)] = column

        return cls(score_array, label_array, cluster_index, cluster_ids,
                   probabilities=prob_array, features=feature_arrays, source=source)

    @classmethod
    def from_samples(cls, samples: Iterable[ScoredSample]) -> 'ClusteredDataset':
        """从 ScoredSample 序列构造，特征取所有样本特征名的并集"""
        samples = list(samples)
        if not samples:
            raise EmptyInputError("数据集")
        names: List[str] = []
        for sample in samples:
            for name in sample.features:
                if name not in names:
                    names.append(name)
        features = {name: [float(s.features.get(name, math.nan)) for s in samples] for name in names}
        return cls.from_arrays([s.score for s in samples],
                               [s.label for s in samples],
                               [s.cluster for s in samples],
                               features=features)

    # ------------------------------------------------------------ 访问

    def __len__(self) -> int:
        return int(self.scores.size)

    @property
    def n(self) -> int:
        return len(self)

    @property
    def k(self) -> int:
        return len(self.cluster_ids)

    @property
    def total_pos(self) -> int:
        return sum(self.pos_counts)

    @property
    def total_neg(self) -> int:
        return sum(self.neg_counts)

    @property
    def feature_names(self) -> List[str]:
        return list(self.features.keys())

    @property
    def has_probabilities(self) -> bool:
        return self.probabilities is not None

    def position_of(self, cluster_id) -> int:
        """返回簇在数据集顺序中的位置"""
        key = str(cluster_id)
        try:
            return self.cluster_ids.index(key)
        except ValueError:
            raise UnknownClusterError(cluster_id)

    def members(self, k: int) -> np.ndarray:
        """第k个簇的样本下标"""
        return self._members[k]

    def positive_scores(self, k: int) -> np.ndarray:
        idx = self._members[k]
        return self.scores[idx[self.labels[idx] == 1]]

    def negative_scores(self, k: int) -> np.ndarray:
        idx = self._members[k]
        return self.scores[idx[self.labels[idx] == 0]]

    def samples(self) -> Iterator[ScoredSample]:
        """逐条产生 ScoredSample"""
        names = self.feature_names
        for i in range(self.n):
            yield ScoredSample(
                score=float(self.scores[i]),
                label=int(self.labels[i]),
                cluster=self.cluster_ids[self.cluster_index[i]],
                features={name: float(self.features[name][i]) for name in names},
            )

    def merged(self, cluster_id: str = DEFAULT_CLUSTER_ID) -> 'ClusteredDataset':
        """合并所有簇为一个簇的副本"""
        return ClusteredDataset(self.scores, self.labels, np.zeros(self.n, dtype=np.int64), [cluster_id],
                                probabilities=self.probabilities, features=self.features, source=self.source)


def optional_float(value) -> Optional[float]:
    """序列化辅助：None(无定义)保持None，其余转换为Python float"""
    return None if value is None else float(value)
