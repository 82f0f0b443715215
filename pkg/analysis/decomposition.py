"""
AUC簇级分解与可加指标分解

全局AUC = Σ_i Σ_j w_ij · AUC_ij，其中 w_ij = |P_i|·|N_j| / (|P|·|N|)，
AUC_ij 为正样本取自簇i、负样本取自簇j时的条件AUC。
对角线之和为簇内 (intra) 部分，非对角线之和为簇间 (inter) 部分。
Brier分数与对数损失按 n_k/n 加权即可还原全局值。
"""

from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Tuple, Union

import numpy as np

from models.dataset import ClusteredDataset, TiePolicy
from models.decomposition import (
    AdditiveDecomposition,
    AdditiveMetric,
    AucCell,
    AucDecomposition,
    ClusterMetric,
    NonAdditivityResult,
    WorstClusterCriterion,
)
from utils.exceptions import (
    ConfigurationError,
    DecompositionResidualError,
    MissingProbabilitiesError,
    NoDefinedValueError,
    NoNegativesError,
    NoPositivesError,
)
from utils.log_helper import get_logger

from .core_metrics import (
    DEFAULT_CLAMP_EPS,
    auc_from_split,
    brier_score,
    log_loss_with_clamping,
    validate_probabilities,
)

logger = get_logger(__name__)

RESIDUAL_TOLERANCE = 1e-12


def _require_both_classes(dataset: ClusteredDataset):
    if dataset.total_pos == 0:
        raise NoPositivesError()
    if dataset.total_neg == 0:
        raise NoNegativesError()


def weight_matrix(dataset: ClusteredDataset) -> np.ndarray:
    """权重矩阵 w_ij = |P_i|·|N_j| / (|P|·|N|)

    Args:
        dataset: 簇数据集

    Returns:
        np.ndarray: K×K 非负矩阵，元素和为1
    """
    _require_both_classes(dataset)
    pos = np.asarray(dataset.pos_counts, dtype=float)
    neg = np.asarray(dataset.neg_counts, dtype=float)
    return np.outer(pos, neg) / (float(dataset.total_pos) * float(dataset.total_neg))


def auc_matrix(dataset: ClusteredDataset, tie_policy: TiePolicy = TiePolicy.HALF_CREDIT,
               max_workers: int = 1) -> List[List[AucCell]]:
    """条件AUC矩阵，P_i 或 N_j 为空的单元为 None

    每个单元独立计算，max_workers > 1 时并发计算各单元。

    Args:
        dataset: 簇数据集
        tie_policy: 同分规则
        max_workers: 并发线程数

    Returns:
        List[List[Optional[float]]]: K×K 矩阵，行 = 正样本簇，列 = 负样本簇
    """
    _require_both_classes(dataset)
    tie_policy = TiePolicy.parse(tie_policy)
    k = dataset.k
    positives = [dataset.positive_scores(i) for i in range(k)]
    negatives = [dataset.negative_scores(j) for j in range(k)]
    cells = [(i, j) for i in range(k) for j in range(k)]

    def compute(cell: Tuple[int, int]) -> AucCell:
        i, j = cell
        return auc_from_split(positives[i], negatives[j], tie_policy)

    if max_workers > 1 and len(cells) > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as executor:
            values = list(executor.map(compute, cells))
    else:
        values = [compute(cell) for cell in cells]

    matrix = [values[i * k:(i + 1) * k] for i in range(k)]
    undefined = sum(value is None for value in values)
    if undefined:
        logger.debug(f"AUC矩阵中有 {undefined} 个无定义单元 (簇内缺少正样本或负样本)")
    return matrix


def decompose_auc(dataset: ClusteredDataset, tie_policy: TiePolicy = TiePolicy.HALF_CREDIT,
                  max_workers: int = 1) -> AucDecomposition:
    """全局AUC的簇内/簇间分解

    全局AUC在合并数据上独立计算，残差 = 全局 - 簇内 - 簇间，超出容差时抛出异常。

    Args:
        dataset: 簇数据集
        tie_policy: 同分规则
        max_workers: 矩阵单元的并发线程数

    Returns:
        AucDecomposition: 分解结果
    """
    _require_both_classes(dataset)
    tie_policy = TiePolicy.parse(tie_policy)

    weights = weight_matrix(dataset)
    matrix = auc_matrix(dataset, tie_policy, max_workers)
    positive = dataset.labels == 1
    global_auc = auc_from_split(dataset.scores[positive], dataset.scores[~positive], tie_policy)

    intra_total = 0.0
    inter_total = 0.0
    for i in range(dataset.k):
        for j in range(dataset.k):
            value = matrix[i][j]
            if value is None:
                continue
            if i == j:
                intra_total += weights[i, j] * value
            else:
                inter_total += weights[i, j] * value

    residual = global_auc - intra_total - inter_total
    if abs(residual) >= RESIDUAL_TOLERANCE:
        logger.error(f"AUC分解残差超出容差: {residual!r}")
        raise DecompositionResidualError(residual, RESIDUAL_TOLERANCE)

    logger.info(f"AUC分解完成: 全局 {global_auc:.6f} = 簇内 {intra_total:.6f} + 簇间 {inter_total:.6f}")
    return AucDecomposition(
        cluster_ids=list(dataset.cluster_ids),
        weights=weights,
        auc_matrix=matrix,
        global_auc=float(global_auc),
        intra_total=float(intra_total),
        inter_total=float(inter_total),
        residual=float(residual),
        tie_policy=tie_policy,
        pos_counts=list(dataset.pos_counts),
        neg_counts=list(dataset.neg_counts),
    )


def demonstrate_non_additivity(dataset: ClusteredDataset,
                               tie_policy: TiePolicy = TiePolicy.HALF_CREDIT) -> NonAdditivityResult:
    """簇内AUC按 w_k = |P_k|·|N_k| / (|P|·|N|) 的朴素加权平均与全局AUC的差距

    w_k 一般不满足和为1，这里按原样报告 (weight_sum)。

    Returns:
        NonAdditivityResult: (朴素加权平均, 全局AUC, 差距)
    """
    return non_additivity_from(decompose_auc(dataset, tie_policy))


def non_additivity_from(decomposition: AucDecomposition) -> NonAdditivityResult:
    """由已有的AUC分解计算朴素加权平均，避免重复计算矩阵"""
    diagonal = decomposition.diagonal()
    if all(value is None for value in diagonal):
        raise NoDefinedValueError(WorstClusterCriterion.MIN_DIAGONAL_AUC.value)

    naive = 0.0
    weight_sum = 0.0
    for i, value in enumerate(diagonal):
        if value is None:
            continue
        naive += decomposition.weights[i, i] * value
        weight_sum += decomposition.weights[i, i]

    gap = decomposition.global_auc - naive
    return NonAdditivityResult(naive_weighted_avg=float(naive), global_auc=decomposition.global_auc,
                               gap=float(gap), weight_sum=float(weight_sum))


def _cluster_metric(metric: AdditiveMetric, probs: np.ndarray, labels: np.ndarray,
                    clamp_eps: float) -> Tuple[float, int]:
    if metric is AdditiveMetric.BRIER:
        return brier_score(probs, labels), 0
    return log_loss_with_clamping(probs, labels, clamp_eps)


def decompose_additive(dataset: ClusteredDataset, metric: AdditiveMetric,
                       clamp_eps: float = DEFAULT_CLAMP_EPS) -> AdditiveDecomposition:
    """Brier分数或对数损失的按簇分解

    Args:
        dataset: 簇数据集，须带有 [0, 1] 内的概率
        metric: 指标
        clamp_eps: 对数损失的截断参数

    Returns:
        AdditiveDecomposition: 每簇指标值、权重 n_k/n 以及合并数据上的全局值
    """
    metric = AdditiveMetric.parse(metric)
    if dataset.probabilities is None:
        raise MissingProbabilitiesError(metric.value)
    probs = validate_probabilities(dataset.probabilities)

    n = float(dataset.n)
    per_cluster: List[ClusterMetric] = []
    for k, cluster_id in enumerate(dataset.cluster_ids):
        idx = dataset.members(k)
        value, clamped = _cluster_metric(metric, probs[idx], dataset.labels[idx], clamp_eps)
        per_cluster.append(ClusterMetric(cluster_id=cluster_id, n=int(idx.size), weight=idx.size / n,
                                         value=value, clamped=clamped))

    global_value, clamped_total = _cluster_metric(metric, probs, dataset.labels, clamp_eps)
    if clamped_total:
        logger.info(f"{metric.value}: 共有 {clamped_total} 个概率被截断")

    return AdditiveDecomposition(
        metric=metric,
        per_cluster=per_cluster,
        global_value=global_value,
        clamp_eps=clamp_eps if metric is AdditiveMetric.LOG_LOSS else None,
        clamped_total=clamped_total,
    )


def worst_cluster(decomp: Union[AucDecomposition, AdditiveDecomposition],
                  criterion: Optional[WorstClusterCriterion] = None) -> str:
    """按准则找出最差簇，并列时取数据集顺序中的第一个

    Args:
        decomp: AUC分解 (配合 MIN_DIAGONAL_AUC) 或可加分解 (配合 MAX_METRIC)
        criterion: 准则，None时按分解类型推断

    Returns:
        str: 最差簇标识
    """
    if criterion is None:
        criterion = (WorstClusterCriterion.MIN_DIAGONAL_AUC if isinstance(decomp, AucDecomposition)
                     else WorstClusterCriterion.MAX_METRIC)

    if criterion is WorstClusterCriterion.MIN_DIAGONAL_AUC:
        if not isinstance(decomp, AucDecomposition):
            raise ConfigurationError('criterion', criterion.value)
        candidates = list(zip(decomp.cluster_ids, decomp.diagonal()))
        better = lambda value, best: value < best
    else:
        if not isinstance(decomp, AdditiveDecomposition):
            raise ConfigurationError('criterion', criterion.value)
        candidates = [(entry.cluster_id, entry.value) for entry in decomp.per_cluster]
        better = lambda value, best: value > best

    chosen = None
    chosen_value = None
    for cluster_id, value in candidates:
        if value is None:
            continue
        if chosen is None or better(value, chosen_value):
            chosen, chosen_value = cluster_id, value

    if chosen is None:
        raise NoDefinedValueError(criterion.value)
    return chosen
