"""
报告模型
数据读取规格 IngestSpec 与汇总诊断结果的 DiagnosticsReport
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from .decomposition import AdditiveDecomposition, AucDecomposition, NonAdditivityResult
from .drift import DriftReport


@dataclass
class IngestSpec:
    """CSV读取规格"""
    path: str
    score_column: str
    label_column: str
    delimiter: str = ','
    cluster_column: Optional[str] = None
    probability_column: Optional[str] = None
    feature_columns: Optional[List[str]] = None
    header_required: bool = True  # 只支持带表头的文件

    def to_dict(self) -> Dict[str, Any]:
        return {
            'delimiter': self.delimiter,
            'score_column': self.score_column,
            'label_column': self.label_column,
            'cluster_column': self.cluster_column,
            'probability_column': self.probability_column,
            'feature_columns': list(self.feature_columns) if self.feature_columns is not None else None,
        }


@dataclass
class DiagnosticsReport:
    """一次诊断运行的全部输出"""
    dataset_summary: Dict[str, Any]
    auc_decomposition: AucDecomposition
    non_additivity: Optional[NonAdditivityResult]
    brier: Optional[AdditiveDecomposition]
    log_loss: Optional[AdditiveDecomposition]
    worst_clusters: Dict[str, Optional[str]]
    interpretation: List[Dict[str, Any]]
    config: Dict[str, Any]
    input_digest: str
    version: str
    drift: Optional[DriftReport] = None
    generalization_gap: Optional[Dict[str, Any]] = None
    notes: List[str] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        """按 report.json 的顶层键顺序输出"""
        data: Dict[str, Any] = {
            'dataset': self.dataset_summary,
            'auc_decomposition': self.auc_decomposition.to_dict(),
            'non_additivity': self.non_additivity.to_dict() if self.non_additivity else None,
            'brier': self.brier.to_dict() if self.brier else None,
            'log_loss': self.log_loss.to_dict() if self.log_loss else None,
            'worst_clusters': dict(self.worst_clusters),
            'interpretation': list(self.interpretation),
        }
        if self.drift is not None:
            data['drift'] = self.drift.to_dict()
        if self.generalization_gap is not None:
            data['generalization_gap'] = self.generalization_gap
        data['config'] = dict(self.config)
        data['input_digest'] = self.input_digest
        data['version'] = self.version
        if self.notes:
            data['notes'] = list(self.notes)
        return data
