"""
诊断报告组装
把AUC分解、可加指标分解、最差簇、联合解读和可选的泛化差距汇总为 DiagnosticsReport
"""

from typing import Any, Dict, Optional

from analysis.decomposition import decompose_additive, decompose_auc, non_additivity_from, worst_cluster
from analysis.interpretation import cluster_summary, generalization_gap, joint_interpretation
from config import TOOL_VERSION
from models.dataset import ClusteredDataset, TiePolicy
from models.decomposition import AdditiveMetric, WorstClusterCriterion
from models.report import DiagnosticsReport, IngestSpec
from utils.exceptions import NoDefinedValueError
from utils.log_helper import get_logger

logger = get_logger(__name__)


def dataset_summary(dataset: ClusteredDataset) -> Dict[str, Any]:
    summary = {
        'n': dataset.n,
        'positives': dataset.total_pos,
        'negatives': dataset.total_neg,
        'k': dataset.k,
        'clusters': cluster_summary(dataset),
        'features': dataset.feature_names,
        'has_probabilities': dataset.has_probabilities,
    }
    if dataset.source is not None:
        summary['ingest'] = dataset.source.to_dict()
    return summary


def _worst_or_none(decomp, criterion: WorstClusterCriterion) -> Optional[str]:
    if decomp is None:
        return None
    try:
        return worst_cluster(decomp, criterion)
    except NoDefinedValueError:
        return None


def build_diagnostics_report(dataset: ClusteredDataset, config, ingest_spec: Optional[IngestSpec] = None,
                             reference: Optional[ClusteredDataset] = None) -> DiagnosticsReport:
    """运行全部分解并组装报告

    Args:
        dataset: 待诊断数据集
        config: DiagnosticsConfig 实例
        ingest_spec: 读取规格，写入 config 区块
        reference: 参考数据集 (如训练集)，提供时计算泛化差距 (reference - dataset)

    Returns:
        DiagnosticsReport: 诊断报告
    """
    tie_policy = TiePolicy.parse(config.tie_policy)
    notes = []

    auc_decomp = decompose_auc(dataset, tie_policy, config.max_workers)
    try:
        non_additivity = non_additivity_from(auc_decomp)
    except NoDefinedValueError:
        non_additivity = None
        notes.append('没有簇同时含有正负样本，朴素加权平均无定义')

    brier = log_loss = None
    if dataset.has_probabilities:
        brier = decompose_additive(dataset, AdditiveMetric.BRIER)
        log_loss = decompose_additive(dataset, AdditiveMetric.LOG_LOSS, config.clamp_eps)
    else:
        notes.append('分数不在[0, 1]内且未指定概率列，Brier分数与对数损失未计算')

    worst_clusters = {
        'min_diagonal_auc': _worst_or_none(auc_decomp, WorstClusterCriterion.MIN_DIAGONAL_AUC),
        'max_brier': _worst_or_none(brier, WorstClusterCriterion.MAX_METRIC),
        'max_log_loss': _worst_or_none(log_loss, WorstClusterCriterion.MAX_METRIC),
    }

    gap = None
    if reference is not None:
        gap = generalization_gap(reference, dataset, tie_policy, config.clamp_eps)

    config_echo = config.to_dict()
    if ingest_spec is not None:
        config_echo['ingest'] = ingest_spec.to_dict()

    return DiagnosticsReport(
        dataset_summary=dataset_summary(dataset),
        auc_decomposition=auc_decomp,
        non_additivity=non_additivity,
        brier=brier,
        log_loss=log_loss,
        worst_clusters=worst_clusters,
        interpretation=joint_interpretation(auc_decomp, brier, log_loss),
        config=config_echo,
        input_digest=dataset.source.digest if dataset.source is not None else '',
        version=TOOL_VERSION,
        generalization_gap=gap,
        notes=notes,
    )
