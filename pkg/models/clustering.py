"""
K-means 模型
质心保存在标准化空间中，标准化参数随模型一起保存以便对新数据分配簇
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np


@dataclass
class KMeansModel:
    """已拟合的 k-means 模型 (不可变使用)

    kept_columns 为参与聚类的原始列下标 (常数列已剔除)，None 表示全部列。
    """
    centroids: np.ndarray
    feature_names: List[str]
    means: np.ndarray
    stds: np.ndarray
    iterations_run: int = 0
    inertia: float = 0.0
    seed: Optional[int] = None
    kept_columns: Optional[List[int]] = None
    input_dim: Optional[int] = None
    inertia_history: List[float] = field(default_factory=list)
    assignments: Optional[np.ndarray] = None

    @property
    def k(self) -> int:
        return int(self.centroids.shape[0])

    @property
    def dim(self) -> int:
        return int(self.centroids.shape[1])

    @property
    def expected_input_dim(self) -> int:
        return self.input_dim if self.input_dim is not None else self.dim

    def to_dict(self) -> Dict:
        return {
            'k': self.k,
            'feature_names': list(self.feature_names),
            'centroids': [[float(v) for v in row] for row in self.centroids],
            'standardization': [
                {'feature': name, 'mean': float(mean), 'std': float(std)}
                for name, mean, std in zip(self.feature_names, self.means, self.stds)
            ],
            'iterations_run': self.iterations_run,
            'inertia': float(self.inertia),
            'seed': self.seed,
        }
