"""
测试用参照实现
逐对枚举的AUC与随机分簇数据集生成
"""

from typing import Optional, Tuple

import numpy as np

from models import ClusteredDataset, TiePolicy


def brute_force_auc(pos: np.ndarray, neg: np.ndarray, tie_policy: TiePolicy = TiePolicy.HALF_CREDIT) -> Optional[float]:
    """O(|P|·|N|) 逐对比较"""
    if pos.size == 0 or neg.size == 0:
        return None
    greater = np.count_nonzero(pos[:, None] > neg[None, :])
    ties = np.count_nonzero(pos[:, None] == neg[None, :])
    credit = greater + (0.5 * ties if tie_policy is TiePolicy.HALF_CREDIT else 0.0)
    return credit / (pos.size * neg.size)


def random_scores(rng: np.random.Generator, n: int, tie_prob: float) -> np.ndarray:
    """随机分数，约 tie_prob 比例的分数取自少量离散值以制造同分"""
    scores = rng.normal(size=n)
    tied = rng.random(n) < tie_prob
    scores[tied] = rng.integers(0, 4, size=int(tied.sum())) / 4.0
    return scores


def random_clustered_dataset(rng: np.random.Generator, max_n: int = 500, max_k: int = 12,
                             tie_prob: float = 0.0) -> ClusteredDataset:
    """随机分簇数据集，保证全局同时有正负样本

    簇大小悬殊，常出现单样本簇和只含一个类别的簇。
    """
    n = int(rng.integers(2, max_n + 1))
    k = int(rng.integers(1, min(max_k, n) + 1))
    clusters = rng.integers(0, k, size=n)
    clusters[:k] = np.arange(k)
    # 每个簇的正样本率不同，部分簇只含一个类别
    rates = rng.choice([0.0, 1.0, 0.1, 0.5, 0.9], size=k)
    labels = (rng.random(n) < rates[clusters]).astype(int)
    labels[0], labels[1] = 1, 0
    scores = random_scores(rng, n, tie_prob)
    probs = rng.random(n)
    probs[rng.random(n) < 0.05] = rng.integers(0, 2, size=1)[0]
    return ClusteredDataset.from_arrays(scores, labels, [f"C{c}" for c in clusters], probabilities=probs)


def split_by_label(scores, labels) -> Tuple[np.ndarray, np.ndarray]:
    scores = np.asarray(scores, dtype=float)
    labels = np.asarray(labels)
    return scores[labels == 1], scores[labels == 0]
