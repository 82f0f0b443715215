"""
合成欺诈数据生成
不平衡、分簇、带特征的评分数据：全局AUC较高，但有一个簇的簇内排序很弱且特征分布偏移
"""

import numpy as np
import pandas as pd
from scipy.special import expit

from utils.exceptions import ConfigurationError

WEAK_CLUSTER_ID = 'C1'
WEAK_CLUSTER_FRAUD_RATE = 0.25

FEATURE_COLUMNS = ['amount', 'hour', 'merchant_risk', 'utilization', 'card_present']


def generate_synthetic_fraud(n: int = 5000, k: int = 4, fraud_rate: float = 0.03,
                             seed: int = 0) -> pd.DataFrame:
    """生成合成欺诈数据

    簇 C1 为弱簇：欺诈率较高、分数几乎不区分正负样本，且 merchant_risk / utilization /
    card_present 三个特征相对其余簇偏移；其余簇分数区分度很高。

    Args:
        n: 样本数
        k: 簇数 (至少2)
        fraud_rate: 非弱簇的欺诈率
        seed: 随机种子

    Returns:
        pd.DataFrame: 列 score, label, cluster 以及特征列
    """
    if k < 2:
        raise ConfigurationError('k', k)
    if n < 2 * k:
        raise ConfigurationError('n', n)
    if not (0.0 < fraud_rate < 1.0):
        raise ConfigurationError('fraud_rate', fraud_rate)

    rng = np.random.default_rng(seed)
    cluster_index = rng.integers(0, k, size=n)
    # 保证每个簇至少有一个样本
    cluster_index[:k] = np.arange(k)
    weak = cluster_index == 0

    rates = np.where(weak, WEAK_CLUSTER_FRAUD_RATE, fraud_rate)
    labels = (rng.random(n) < rates).astype(int)

    noise = rng.normal(0.0, 1.0, size=n)
    logits = np.where(weak, 0.5 + 0.1 * labels + noise, -3.0 + 4.5 * labels + noise)
    scores = expit(logits)

    normal_count = int(np.count_nonzero(~weak))
    weak_count = int(np.count_nonzero(weak))

    merchant_risk = np.empty(n)
    merchant_risk[weak] = rng.normal(0.15, 0.05, size=weak_count)
    merchant_risk[~weak] = rng.normal(0.02, 0.01, size=normal_count)

    utilization = np.empty(n)
    utilization[weak] = rng.beta(5.0, 2.0, size=weak_count)
    utilization[~weak] = rng.beta(2.0, 5.0, size=normal_count)

    card_present = np.where(weak, rng.random(n) < 0.2, rng.random(n) < 0.7).astype(int)

    frame = pd.DataFrame({
        'score': scores,
        'label': labels,
        'cluster': [f"C{i + 1}" for i in cluster_index],
        'amount': np.round(rng.lognormal(3.0, 1.0, size=n), 2),
        'hour': rng.integers(0, 24, size=n),
        'merchant_risk': np.clip(merchant_risk, 0.0, 1.0),
        'utilization': utilization,
        'card_present': card_present,
    })
    # 打乱行顺序，簇的首次出现顺序仍由种子确定
    return frame.sample(frac=1.0, random_state=seed).reset_index(drop=True)
