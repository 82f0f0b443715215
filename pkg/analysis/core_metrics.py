"""
核心指标
AUC (秩和法，可选同分规则)、Brier分数和对数损失

所有函数均为纯函数，不修改输入，可在多线程中并发调用。
"""

from typing import Iterable, Optional, Tuple

import numpy as np
from scipy.stats import rankdata

from models.dataset import TiePolicy, as_float_array, check_lengths, validate_labels, validate_scores
from utils.exceptions import EmptyInputError, InvalidEpsilonError, ProbabilityOutOfRangeError
from utils.log_helper import get_logger

logger = get_logger(__name__)

DEFAULT_CLAMP_EPS = 1e-15


def pair_statistic(pos_scores: np.ndarray, neg_scores: np.ndarray,
                   tie_policy: TiePolicy = TiePolicy.HALF_CREDIT) -> float:
    """正负样本对的计分总和 (Mann-Whitney U)

    HALF_CREDIT 时同分对记 1/2，STRICT 时记 0。秩和均为整数或半整数，结果在float中精确。

    Args:
        pos_scores: 正样本分数
        neg_scores: 负样本分数
        tie_policy: 同分规则

    Returns:
        float: 计分总和，范围 [0, |P|·|N|]
    """
    n_pos = pos_scores.size
    if n_pos == 0 or neg_scores.size == 0:
        return 0.0

    pooled = np.concatenate([pos_scores, neg_scores])
    if tie_policy is TiePolicy.HALF_CREDIT:
        pooled_ranks = rankdata(pooled, method='average')[:n_pos]
        return float(pooled_ranks.sum() - n_pos * (n_pos + 1) / 2.0)

    # 严格比较: 每个正样本前面严格更小的元素数减去其中的正样本数
    pooled_ranks = rankdata(pooled, method='min')[:n_pos]
    own_ranks = rankdata(pos_scores, method='min')
    return float(np.sum(pooled_ranks - own_ranks))


def auc_from_split(pos_scores: np.ndarray, neg_scores: np.ndarray,
                   tie_policy: TiePolicy = TiePolicy.HALF_CREDIT) -> Optional[float]:
    """已按类别拆分的分数上的AUC，任一类别为空时返回None (无定义)"""
    if pos_scores.size == 0 or neg_scores.size == 0:
        return None
    statistic = pair_statistic(pos_scores, neg_scores, tie_policy)
    return statistic / (float(pos_scores.size) * float(neg_scores.size))


def auc(scores: Iterable[float], labels: Iterable,
        tie_policy: TiePolicy = TiePolicy.HALF_CREDIT) -> Optional[float]:
    """计算AUC

    Args:
        scores: 分类器分数，任意有限实数
        labels: 二元标签 (1 = 正样本)
        tie_policy: 同分规则，默认 HALF_CREDIT

    Returns:
        Optional[float]: [0, 1] 内的AUC；没有正样本或没有负样本时返回None
    """
    score_array = validate_scores(scores)
    label_array = validate_labels(labels)
    n = check_lengths(scores=score_array, labels=label_array)
    if n == 0:
        raise EmptyInputError("分数序列")

    tie_policy = TiePolicy.parse(tie_policy)
    positive = label_array == 1
    return auc_from_split(score_array[positive], score_array[~positive], tie_policy)


def validate_probabilities(probs: Iterable[float]) -> np.ndarray:
    """校验概率位于 [0, 1]"""
    array = as_float_array(probs)
    outside = ~((array >= 0.0) & (array <= 1.0))
    if outside.any():
        index = int(np.flatnonzero(outside)[0])
        raise ProbabilityOutOfRangeError(float(array[index]), index)
    return array


def _prepare_probabilistic(probs: Iterable[float], labels: Iterable) -> Tuple[np.ndarray, np.ndarray]:
    prob_array = validate_probabilities(probs)
    label_array = validate_labels(labels)
    n = check_lengths(probs=prob_array, labels=label_array)
    if n == 0:
        raise EmptyInputError("概率序列")
    return prob_array, label_array


def brier_score(probs: Iterable[float], labels: Iterable) -> float:
    """Brier分数: (1/n) Σ (p_i - y_i)²

    Args:
        probs: [0, 1] 内的预测概率
        labels: 二元标签

    Returns:
        float: [0, 1] 内的Brier分数
    """
    prob_array, label_array = _prepare_probabilistic(probs, labels)
    return float(np.mean((prob_array - label_array) ** 2))


def clamp_probabilities(probs: np.ndarray, clamp_eps: float = DEFAULT_CLAMP_EPS) -> Tuple[np.ndarray, int]:
    """把概率截断到 [eps, 1 - eps]

    Returns:
        Tuple[np.ndarray, int]: (截断后的概率, 被截断的个数)
    """
    if not (0.0 < clamp_eps < 0.5):
        raise InvalidEpsilonError(clamp_eps)
    clipped = np.clip(probs, clamp_eps, 1.0 - clamp_eps)
    return clipped, int(np.count_nonzero(clipped != probs))


def log_loss_with_clamping(probs: Iterable[float], labels: Iterable,
                           clamp_eps: float = DEFAULT_CLAMP_EPS) -> Tuple[float, int]:
    """对数损失及被截断的概率个数"""
    prob_array, label_array = _prepare_probabilistic(probs, labels)
    clipped, clamped = clamp_probabilities(prob_array, clamp_eps)
    if clamped:
        logger.debug(f"对数损失计算中截断了 {clamped} 个概率到 [{clamp_eps}, 1 - {clamp_eps}]")
    losses = np.where(label_array == 1, np.log(clipped), np.log1p(-clipped))
    return float(-np.mean(losses)), clamped


def log_loss(probs: Iterable[float], labels: Iterable, clamp_eps: float = DEFAULT_CLAMP_EPS) -> float:
    """对数损失: -(1/n) Σ [y ln p + (1-y) ln(1-p)]，自然对数

    Args:
        probs: [0, 1] 内的预测概率，计算前截断到 [clamp_eps, 1 - clamp_eps]
        labels: 二元标签
        clamp_eps: 截断参数，须位于 (0, 0.5)

    Returns:
        float: 非负的对数损失
    """
    value, _ = log_loss_with_clamping(probs, labels, clamp_eps)
    return value
