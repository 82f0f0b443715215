"""
报告模块
数据读取、报告组装、文件输出与 SVG 图表
"""

from .ingest import ingest, read_table
from .report_builder import build_diagnostics_report
from .emitter import emit_drift, emit_model, emit_report
from .svg_charts import render_cluster_bars, render_feature_bars, render_heatmap

__all__ = [
    'ingest', 'read_table',
    'build_diagnostics_report',
    'emit_drift', 'emit_model', 'emit_report',
    'render_cluster_bars', 'render_feature_bars', 'render_heatmap',
]
