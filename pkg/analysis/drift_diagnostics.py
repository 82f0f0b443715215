"""
漂移诊断
关注簇与其余数据的特征分布对比 (PSI / Jensen-Shannon 散度) 及标签率差异
"""

import math
from concurrent.futures import ThreadPoolExecutor
from typing import Iterable, List, Optional, Tuple

import numpy as np

from models.dataset import ClusteredDataset, as_float_array
from models.drift import DEFAULT_SMOOTHING_EPS, BinnedHistogram, BinStrategy, DriftReport, FeatureDrift
from utils.exceptions import (
    EdgeMismatchError,
    EmptyComplementError,
    EmptyInputError,
    NoFeaturesError,
    TooFewBinsError,
)
from utils.log_helper import get_logger

logger = get_logger(__name__)

DEFAULT_NUM_BINS = 10
JS_UPPER_BOUND = math.log(2.0)


def _interior_edges(pooled: np.ndarray, num_bins: int, strategy: BinStrategy) -> np.ndarray:
    low, high = float(pooled.min()), float(pooled.max())
    if strategy is BinStrategy.UNIFORM:
        interior = np.linspace(low, high, num_bins + 1)[1:-1]
    else:
        interior = np.quantile(pooled, np.linspace(0.0, 1.0, num_bins + 1)[1:-1])

    # 重复边界合并；等于最小值的边界会产生空的最低箱，一并去掉
    collapsed = np.unique(interior)
    collapsed = collapsed[collapsed > low]
    if collapsed.size < interior.size:
        logger.debug(f"分箱边界合并: 请求 {num_bins} 箱，实际 {collapsed.size + 1} 箱")
    if collapsed.size == 0:
        # 大量同分导致所有分位点都落在最小值上
        collapsed = np.array([pooled[pooled > low].min()])
    return collapsed


def bin_feature(values_a: Iterable[float], values_b: Iterable[float],
                num_bins: int = DEFAULT_NUM_BINS,
                strategy: BinStrategy = BinStrategy.QUANTILE,
                smoothing_eps: float = DEFAULT_SMOOTHING_EPS) -> Tuple[BinnedHistogram, BinnedHistogram]:
    """在合并数据上确定共享边界，分别统计两组数值的直方图

    最外侧边界为 -inf/+inf；等于内部边界的值落入较高的箱。
    全部取值相同时返回单箱直方图 (is_constant=True)。

    Args:
        values_a: 第一组数值 (关注簇)
        values_b: 第二组数值 (其余数据)
        num_bins: 请求的箱数，至少为2
        strategy: 分位数或等宽分箱
        smoothing_eps: 每箱附加的平滑概率质量

    Returns:
        Tuple[BinnedHistogram, BinnedHistogram]: 共享边界的两个直方图
    """
    a = as_float_array(values_a)
    b = as_float_array(values_b)
    if a.size == 0 or b.size == 0:
        raise EmptyInputError("分箱数值")
    if num_bins < 2:
        raise TooFewBinsError(num_bins)
    strategy = BinStrategy(strategy) if not isinstance(strategy, BinStrategy) else strategy

    pooled = np.concatenate([a, b])
    if pooled.min() == pooled.max():
        edges = np.array([-np.inf, np.inf])
        return (BinnedHistogram.from_counts(edges, [a.size], smoothing_eps, is_constant=True),
                BinnedHistogram.from_counts(edges, [b.size], smoothing_eps, is_constant=True))

    interior = _interior_edges(pooled, num_bins, strategy)
    edges = np.concatenate([[-np.inf], interior, [np.inf]])
    n_bins = interior.size + 1

    def histogram(values: np.ndarray) -> BinnedHistogram:
        index = np.searchsorted(interior, values, side='right')
        counts = np.bincount(index, minlength=n_bins)
        return BinnedHistogram.from_counts(edges, counts, smoothing_eps)

    return histogram(a), histogram(b)


def _check_edges(hist_a: BinnedHistogram, hist_b: BinnedHistogram):
    if not hist_a.same_edges(hist_b):
        raise EdgeMismatchError(f"{hist_a.num_bins} 箱 vs {hist_b.num_bins} 箱")


def psi(hist_a: BinnedHistogram, hist_b: BinnedHistogram) -> float:
    """群体稳定性指数 Σ (p - q)·ln(p / q)，基于平滑概率，对参数对称"""
    _check_edges(hist_a, hist_b)
    p, q = hist_a.smoothed_probs, hist_b.smoothed_probs
    value = float(np.sum((p - q) * (np.log(p) - np.log(q))))
    return max(value, 0.0)


def js_divergence(hist_a: BinnedHistogram, hist_b: BinnedHistogram) -> float:
    """Jensen-Shannon 散度 (自然对数)，取值 [0, ln 2]

    JS(p, q) = ½·KL(p‖m) + ½·KL(q‖m)，m = (p + q) / 2
    """
    _check_edges(hist_a, hist_b)
    p, q = hist_a.smoothed_probs, hist_b.smoothed_probs
    m = 0.5 * (p + q)
    log_m = np.log(m)
    value = 0.5 * float(np.sum(p * (np.log(p) - log_m))) + 0.5 * float(np.sum(q * (np.log(q) - log_m)))
    return min(max(value, 0.0), JS_UPPER_BOUND)


def _feature_drift(name: str, focus_values: np.ndarray, rest_values: np.ndarray, num_bins: int,
                   strategy: BinStrategy, smoothing_eps: float) -> Optional[FeatureDrift]:
    focus_values = focus_values[np.isfinite(focus_values)]
    rest_values = rest_values[np.isfinite(rest_values)]
    if focus_values.size == 0 or rest_values.size == 0:
        logger.warning(f"特征 {name} 在关注簇或其余数据中没有有效取值，跳过")
        return None

    hist_focus, hist_rest = bin_feature(focus_values, rest_values, num_bins, strategy, smoothing_eps)
    return FeatureDrift(
        feature=name,
        psi=psi(hist_focus, hist_rest),
        js_divergence=js_divergence(hist_focus, hist_rest),
        num_bins=hist_focus.num_bins,
        n_focus=int(focus_values.size),
        n_rest=int(rest_values.size),
        constant=hist_focus.is_constant,
    )


def drift_report(dataset: ClusteredDataset, focus, num_bins: int = DEFAULT_NUM_BINS,
                 strategy: BinStrategy = BinStrategy.QUANTILE,
                 smoothing_eps: float = DEFAULT_SMOOTHING_EPS,
                 max_workers: int = 1) -> DriftReport:
    """关注簇相对其余数据的漂移报告

    每个特征单独剔除缺失值 (NaN) 后分箱；在任一侧没有取值的特征记入 skipped_features。

    Args:
        dataset: 带特征列的簇数据集
        focus: 关注簇标识
        num_bins: 请求的箱数
        strategy: 分箱策略
        smoothing_eps: 平滑参数
        max_workers: 特征并发线程数

    Returns:
        DriftReport: 按特征原顺序组装的漂移报告
    """
    position = dataset.position_of(focus)
    focus_id = dataset.cluster_ids[position]
    if not dataset.feature_names:
        raise NoFeaturesError()
    if dataset.k == 1:
        raise EmptyComplementError(focus_id)
    if num_bins < 2:
        raise TooFewBinsError(num_bins)

    in_focus = dataset.cluster_index == position
    names = dataset.feature_names

    def compute(name: str) -> Optional[FeatureDrift]:
        column = dataset.features[name]
        return _feature_drift(name, column[in_focus], column[~in_focus], num_bins, strategy, smoothing_eps)

    if max_workers > 1 and len(names) > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as executor:
            results = list(executor.map(compute, names))
    else:
        results = [compute(name) for name in names]

    per_feature: List[FeatureDrift] = [item for item in results if item is not None]
    skipped = [name for name, item in zip(names, results) if item is None]

    rate_focus = float(dataset.labels[in_focus].mean())
    rate_rest = float(dataset.labels[~in_focus].mean())

    logger.info(f"漂移诊断完成: 关注簇 {focus_id}，{len(per_feature)} 个特征，跳过 {len(skipped)} 个")
    return DriftReport(
        focus_cluster=focus_id,
        per_feature=per_feature,
        label_rate_focus=rate_focus,
        label_rate_rest=rate_rest,
        label_rate_difference=rate_focus - rate_rest,
        n_focus=int(np.count_nonzero(in_focus)),
        n_rest=int(np.count_nonzero(~in_focus)),
        skipped_features=skipped,
    )
