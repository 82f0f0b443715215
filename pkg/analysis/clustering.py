"""
K-means 聚类
为缺少簇列的数据生成簇分配：标准化 → k-means++ 初始化 → Lloyd 迭代
"""

from typing import List, Optional, Sequence

import numpy as np

from models.clustering import KMeansModel
from utils.exceptions import (
    DegenerateFeaturesError,
    DimensionMismatchError,
    NonFiniteFeatureError,
    TooFewSamplesError,
)
from utils.log_helper import get_logger

logger = get_logger(__name__)

DEFAULT_MAX_ITER = 100
DEFAULT_TOL = 1e-6


def _as_matrix(features, feature_names: Optional[Sequence[str]] = None) -> np.ndarray:
    matrix = np.asarray(features, dtype=float)
    if matrix.ndim == 1:
        matrix = matrix.reshape(-1, 1)
    finite = np.isfinite(matrix)
    if not finite.all():
        row, col = (int(v) for v in np.argwhere(~finite)[0])
        column = feature_names[col] if feature_names is not None and col < len(feature_names) else str(col)
        raise NonFiniteFeatureError(row=row + 1, column=column, value=float(matrix[row, col]))
    return matrix


def _squared_distances(points: np.ndarray, centroids: np.ndarray) -> np.ndarray:
    diff = points[:, None, :] - centroids[None, :, :]
    return np.einsum('nkd,nkd->nk', diff, diff)


def _kmeans_plus_plus(points: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    """k-means++ 初始化：按到最近已选质心的平方距离成比例抽样"""
    n = points.shape[0]
    chosen = [int(rng.integers(n))]
    closest = _squared_distances(points, points[chosen]).min(axis=1)
    for _ in range(1, k):
        total = closest.sum()
        if total <= 0.0:
            # 剩余点都与已选质心重合，取第一个未选的点
            remaining = np.setdiff1d(np.arange(n), chosen)
            index = int(remaining[0])
        else:
            index = int(rng.choice(n, p=closest / total))
        chosen.append(index)
        closest = np.minimum(closest, _squared_distances(points, points[[index]])[:, 0])
    return points[chosen].copy()


def _assign(points: np.ndarray, centroids: np.ndarray):
    distances = _squared_distances(points, centroids)
    labels = np.argmin(distances, axis=1)
    return labels, distances[np.arange(points.shape[0]), labels]


def kmeans_fit(features, k: int, max_iter: int = DEFAULT_MAX_ITER, seed: int = 0,
               tol: float = DEFAULT_TOL, feature_names: Optional[List[str]] = None) -> KMeansModel:
    """拟合 k-means 模型

    Args:
        features: N×D 特征矩阵 (有限实数)
        k: 簇数，1 ≤ k ≤ N
        max_iter: 最大迭代次数
        seed: 随机种子，相同输入与种子得到相同模型
        tol: 质心移动量的收敛阈值
        feature_names: 特征名，缺省为列序号

    Returns:
        KMeansModel: 拟合结果 (质心位于标准化空间)
    """
    matrix = _as_matrix(features, feature_names)
    n, d = matrix.shape
    names = list(feature_names) if feature_names is not None else [str(i) for i in range(d)]
    if k < 1 or n < k:
        raise TooFewSamplesError(n, k)
    if max_iter < 1:
        raise ValueError(f"max_iter 必须至少为1: {max_iter}")

    means = matrix.mean(axis=0)
    stds = matrix.std(axis=0)
    kept = [j for j in range(d) if stds[j] > 0.0]
    dropped = [names[j] for j in range(d) if stds[j] <= 0.0]
    if not kept:
        raise DegenerateFeaturesError(names)
    if dropped:
        logger.warning(f"常数特征不参与聚类: {', '.join(dropped)}")

    points = (matrix[:, kept] - means[kept]) / stds[kept]
    rng = np.random.default_rng(seed)
    centroids = _kmeans_plus_plus(points, k, rng)

    labels, nearest = _assign(points, centroids)
    history = [float(nearest.sum())]
    iterations = 0
    for iterations in range(1, max_iter + 1):
        updated = centroids.copy()
        for c in range(k):
            members = labels == c
            if members.any():
                updated[c] = points[members].mean(axis=0)
            else:
                # 空簇重新放置到离其所属质心最远的点
                far = int(np.argmax(nearest))
                logger.info(f"k-means 第{iterations}次迭代: 簇 {c} 为空，重新放置到样本 {far}")
                updated[c] = points[far]
                nearest[far] = 0.0

        shift = float(np.sqrt(((updated - centroids) ** 2).sum(axis=1)).max())
        centroids = updated
        labels, nearest = _assign(points, centroids)
        history.append(float(nearest.sum()))
        if shift <= tol:
            break

    logger.info(f"k-means 完成: k={k}, 迭代 {iterations} 次, inertia={history[-1]:.6f}")
    return KMeansModel(
        centroids=centroids,
        feature_names=[names[j] for j in kept],
        means=means[kept],
        stds=stds[kept],
        iterations_run=iterations,
        inertia=history[-1],
        seed=seed,
        kept_columns=kept,
        input_dim=d,
        inertia_history=history,
        assignments=labels.copy(),
    )


def kmeans_assign(model: KMeansModel, features) -> np.ndarray:
    """按标准化空间中的欧氏距离把每行分配给最近的质心，距离相等时取下标较小者"""
    matrix = _as_matrix(features)
    if matrix.shape[1] != model.expected_input_dim:
        raise DimensionMismatchError(model.expected_input_dim, matrix.shape[1])
    if model.kept_columns is not None:
        matrix = matrix[:, model.kept_columns]
    points = (matrix - model.means) / model.stds
    labels, _ = _assign(points, model.centroids)
    return labels
