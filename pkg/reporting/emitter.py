"""
报告输出
JSON 报告、CSV 矩阵、xlsx 工作簿与 SVG 图表的写出

JSON 与 CSV 中的实数使用最短往返表示 (repr)，无定义的AUC写为 null / 空单元格；
相同输入与配置得到逐字节相同的文件 (xlsx 含时间戳元数据，不在此保证之内)。
"""

import json
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import openpyxl
import pandas as pd
from openpyxl.styles import Alignment, Font, PatternFill

from models.clustering import KMeansModel
from models.drift import DriftReport
from models.report import DiagnosticsReport
from utils.exceptions import ReportWriteError
from utils.log_helper import get_logger

from .svg_charts import render_cluster_bars, render_feature_bars, render_heatmap

logger = get_logger(__name__)

REPORT_FORMATS = ('json', 'csv_matrices', 'xlsx', 'svg')


def format_cell(value: Optional[float]) -> str:
    """CSV 单元格: None 为空串，其余为 repr"""
    return '' if value is None else repr(float(value))


def to_json(data: Dict[str, Any]) -> str:
    return json.dumps(data, ensure_ascii=False, indent=2, allow_nan=False) + '\n'


def write_text(path: Path, text: str) -> Path:
    try:
        with open(path, 'w', encoding='utf-8', newline='\n') as handle:
            handle.write(text)
    except OSError as e:
        raise ReportWriteError(str(path), str(e), e)
    logger.debug(f"写出 {path}")
    return path


def write_json(path: Path, data: Dict[str, Any]) -> Path:
    return write_text(path, to_json(data))


def matrix_csv(labels: Sequence[str], rows: Sequence[Sequence[Optional[float]]]) -> str:
    """首行首列为簇标识的矩阵CSV"""
    frame = pd.DataFrame([[format_cell(v) for v in row] for row in rows],
                         index=pd.Index(list(labels), name='cluster'), columns=list(labels), dtype=str)
    return frame.to_csv(lineterminator='\n')


def _emit_json(report: DiagnosticsReport, output_dir: Path) -> List[Path]:
    return [write_json(output_dir / 'report.json', report.to_dict())]


def _emit_csv_matrices(report: DiagnosticsReport, output_dir: Path) -> List[Path]:
    decomp = report.auc_decomposition
    return [
        write_text(output_dir / 'weights.csv', matrix_csv(decomp.cluster_ids, decomp.weights.tolist())),
        write_text(output_dir / 'auc_matrix.csv', matrix_csv(decomp.cluster_ids, decomp.auc_matrix)),
    ]


def _emit_svg(report: DiagnosticsReport, output_dir: Path) -> List[Path]:
    decomp = report.auc_decomposition
    brier = report.brier
    if brier is not None:
        brier_values = list(zip(brier.cluster_ids, brier.values()))
        brier_reference = brier.global_value
    else:
        brier_values = [(cluster_id, None) for cluster_id in decomp.cluster_ids]
        brier_reference = None
    return [
        write_text(output_dir / 'heatmap.svg',
                   render_heatmap(decomp.auc_matrix, decomp.weights, decomp.cluster_ids)),
        write_text(output_dir / 'cluster_auc.svg',
                   render_cluster_bars(list(zip(decomp.cluster_ids, decomp.diagonal())), 'AUC',
                                       decomp.global_auc)),
        write_text(output_dir / 'cluster_brier.svg',
                   render_cluster_bars(brier_values, 'Brier', brier_reference)),
    ]


def _style_header(ws, count: int):
    header_font = Font(bold=True, color="FFFFFF")
    header_fill = PatternFill(start_color="366092", end_color="366092", fill_type="solid")
    header_alignment = Alignment(horizontal="center", vertical="center")
    for col in range(1, count + 1):
        cell = ws.cell(row=1, column=col)
        cell.font = header_font
        cell.fill = header_fill
        cell.alignment = header_alignment


def _matrix_sheet(wb, title: str, labels: Sequence[str], rows):
    ws = wb.create_sheet(title)
    ws.cell(row=1, column=1, value='cluster')
    for j, label in enumerate(labels, start=2):
        ws.cell(row=1, column=j, value=label)
    for i, (label, row) in enumerate(zip(labels, rows), start=2):
        ws.cell(row=i, column=1, value=label)
        for j, value in enumerate(row, start=2):
            if value is not None:
                ws.cell(row=i, column=j, value=float(value))
    _style_header(ws, len(labels) + 1)


def _metric_sheet(wb, title: str, decomp):
    ws = wb.create_sheet(title)
    headers = ['cluster', 'n', 'weight', 'value']
    for col, header in enumerate(headers, start=1):
        ws.cell(row=1, column=col, value=header)
    if decomp is not None:
        for row, entry in enumerate(decomp.per_cluster, start=2):
            ws.cell(row=row, column=1, value=entry.cluster_id)
            ws.cell(row=row, column=2, value=entry.n)
            ws.cell(row=row, column=3, value=float(entry.weight))
            ws.cell(row=row, column=4, value=float(entry.value))
    _style_header(ws, len(headers))


def _emit_xlsx(report: DiagnosticsReport, output_dir: Path) -> List[Path]:
    decomp = report.auc_decomposition
    wb = openpyxl.Workbook()
    ws = wb.active
    ws.title = 'summary'
    summary_rows = [
        ('global_auc', decomp.global_auc),
        ('intra_total', decomp.intra_total),
        ('inter_total', decomp.inter_total),
        ('residual', decomp.residual),
        ('global_brier', report.brier.global_value if report.brier else None),
        ('global_log_loss', report.log_loss.global_value if report.log_loss else None),
        ('input_digest', report.input_digest),
        ('version', report.version),
    ]
    ws.cell(row=1, column=1, value='key')
    ws.cell(row=1, column=2, value='value')
    for row, (key, value) in enumerate(summary_rows, start=2):
        ws.cell(row=row, column=1, value=key)
        if value is not None:
            ws.cell(row=row, column=2, value=value)
    _style_header(ws, 2)
    ws.column_dimensions['A'].width = 18
    ws.column_dimensions['B'].width = 24

    _matrix_sheet(wb, 'weights', decomp.cluster_ids, decomp.weights.tolist())
    _matrix_sheet(wb, 'auc_matrix', decomp.cluster_ids, decomp.auc_matrix)
    _metric_sheet(wb, 'brier', report.brier)
    _metric_sheet(wb, 'log_loss', report.log_loss)

    path = output_dir / 'report.xlsx'
    try:
        wb.save(path)
    except OSError as e:
        raise ReportWriteError(str(path), str(e), e)
    return [path]


_EMITTERS = {
    'json': _emit_json,
    'csv_matrices': _emit_csv_matrices,
    'xlsx': _emit_xlsx,
    'svg': _emit_svg,
}


def emit_report(report: DiagnosticsReport, fmt: str, output_dir) -> List[Path]:
    """按格式写出报告文件

    Args:
        report: 诊断报告
        fmt: json / csv_matrices / xlsx / svg
        output_dir: 已存在的输出目录

    Returns:
        List[Path]: 写出的文件
    """
    if fmt not in _EMITTERS:
        raise ValueError(f"未知的报告格式: {fmt} (可选: {', '.join(REPORT_FORMATS)})")
    return _EMITTERS[fmt](report, Path(output_dir))


def emit_drift(drift: DriftReport, output_dir, config: Optional[Dict[str, Any]] = None,
               input_digest: str = '', version: str = '') -> List[Path]:
    """写出 drift.json、psi_bars.svg 与 js_bars.svg"""
    output_dir = Path(output_dir)
    data = drift.to_dict()
    if config is not None:
        data['config'] = dict(config)
    data['input_digest'] = input_digest
    data['version'] = version

    ordered = drift.sorted_by_psi()
    return [
        write_json(output_dir / 'drift.json', data),
        write_text(output_dir / 'psi_bars.svg',
                   render_feature_bars([(item.feature, item.psi) for item in ordered], 'PSI')),
        write_text(output_dir / 'js_bars.svg',
                   render_feature_bars([(item.feature, item.js_divergence) for item in ordered], 'JS',
                                       upper_bound=data['js_upper_bound'])),
    ]


def emit_model(model: KMeansModel, output_dir, extra: Optional[Dict[str, Any]] = None) -> Path:
    """写出 model.json"""
    data = model.to_dict()
    if extra:
        data.update(extra)
    return write_json(Path(output_dir) / 'model.json', data)
