"""
SVG 图表
簇间AUC热力图与按簇指标柱状图，生成不依赖外部资源的独立 SVG 1.1 文档
"""

import re
from html import escape
from typing import List, Optional, Sequence, Tuple

import numpy as np

SVG_HEADER = '<?xml version="1.0" encoding="UTF-8" standalone="no"?>\n'
SVG_NS = 'xmlns="http://www.w3.org/2000/svg" version="1.1"'

UNDEFINED_FILL = '#d9d9d9'
BELOW_CHANCE_RGB = (202, 0, 32)    # 排序错误方向
ABOVE_CHANCE_RGB = (5, 113, 176)   # 排序正确方向
FONT = 'font-family="sans-serif"'


def _blend(rgb: Tuple[int, int, int], strength: float) -> str:
    """白色到目标色的线性插值"""
    channels = [round(255 + (c - 255) * strength) for c in rgb]
    return '#{:02x}{:02x}{:02x}'.format(*channels)


def diverging_color(value: Optional[float]) -> str:
    """以0.5为中点的发散色阶，0.5为白色；无定义为灰色"""
    if value is None:
        return UNDEFINED_FILL
    offset = (min(max(float(value), 0.0), 1.0) - 0.5) / 0.5
    if offset < 0:
        return _blend(BELOW_CHANCE_RGB, -offset)
    return _blend(ABOVE_CHANCE_RGB, offset)


def natural_key(label: str) -> List:
    """自然排序键: "C2" 排在 "C10" 之前"""
    return [int(part) if part.isdigit() else part.lower() for part in re.split(r'(\d+)', str(label))]


def _document(width: int, height: int, body: List[str], defs: str = '') -> str:
    lines = [SVG_HEADER.rstrip('\n'),
             f'<svg {SVG_NS} width="{width}" height="{height}" viewBox="0 0 {width} {height}">']
    if defs:
        lines.append(f'<defs>{defs}</defs>')
    lines.append(f'<rect x="0" y="0" width="{width}" height="{height}" fill="#ffffff"/>')
    lines.extend(body)
    lines.append('</svg>')
    return '\n'.join(lines) + '\n'


HATCH_DEFS = (
    '<pattern id="undefined-hatch" patternUnits="userSpaceOnUse" width="8" height="8">'
    f'<rect width="8" height="8" fill="{UNDEFINED_FILL}"/>'
    '<path d="M0,8 L8,0" stroke="#8c8c8c" stroke-width="1"/>'
    '</pattern>'
)


def render_heatmap(matrix: Sequence[Sequence[Optional[float]]], weights, labels: Sequence[str],
                   cell_size: int = 60) -> str:
    """簇间AUC热力图

    行 = 正样本所在簇，列 = 负样本所在簇。单元标注3位小数的AUC，
    悬停提示 (<title>) 中给出权重；无定义单元以灰色斜线填充且不标注数值。

    Args:
        matrix: K×K 条件AUC矩阵 (None 为无定义)
        weights: K×K 权重矩阵
        labels: K 个簇标识

    Returns:
        str: SVG 文档
    """
    k = len(labels)
    weight_array = np.asarray(weights, dtype=float)
    margin_left, margin_top = 110, 70
    width = margin_left + k * cell_size + 30
    height = margin_top + k * cell_size + 60

    body = [
        f'<text x="{margin_left + k * cell_size / 2:.1f}" y="24" text-anchor="middle" font-size="14" {FONT}>'
        '簇间AUC (列 = 负样本簇)</text>',
        f'<text x="20" y="{margin_top + k * cell_size / 2:.1f}" text-anchor="middle" font-size="14" {FONT} '
        f'transform="rotate(-90 20 {margin_top + k * cell_size / 2:.1f})">行 = 正样本簇</text>',
    ]
    for j, label in enumerate(labels):
        x = margin_left + j * cell_size + cell_size / 2
        body.append(f'<text x="{x:.1f}" y="{margin_top - 8}" text-anchor="middle" font-size="11" {FONT}>'
                    f'{escape(str(label))}</text>')
    for i, label in enumerate(labels):
        y = margin_top + i * cell_size + cell_size / 2 + 4
        body.append(f'<text x="{margin_left - 8}" y="{y:.1f}" text-anchor="end" font-size="11" {FONT}>'
                    f'{escape(str(label))}</text>')

    for i in range(k):
        for j in range(k):
            value = matrix[i][j]
            x = margin_left + j * cell_size
            y = margin_top + i * cell_size
            tooltip = f'{labels[i]} → {labels[j]}: w = {weight_array[i, j]:.6f}'
            if value is None:
                body.append(f'<rect class="cell undefined" x="{x}" y="{y}" width="{cell_size}" height="{cell_size}" '
                            f'fill="url(#undefined-hatch)" stroke="#ffffff">'
                            f'<title>{escape(tooltip)}, AUC 无定义</title></rect>')
                continue
            body.append(f'<rect class="cell" x="{x}" y="{y}" width="{cell_size}" height="{cell_size}" '
                        f'fill="{diverging_color(value)}" stroke="#ffffff">'
                        f'<title>{escape(tooltip)}, AUC = {value:.6f}</title></rect>')
            text_fill = '#ffffff' if abs(value - 0.5) > 0.35 else '#000000'
            body.append(f'<text class="cell-value" x="{x + cell_size / 2:.1f}" y="{y + cell_size / 2 + 4:.1f}" '
                        f'text-anchor="middle" font-size="12" fill="{text_fill}" {FONT}>{value:.3f}</text>')

    # 色阶图例
    legend_y = margin_top + k * cell_size + 20
    legend_width = max(k * cell_size, 120)
    steps = 20
    for s in range(steps):
        value = s / (steps - 1)
        x = margin_left + s * legend_width / steps
        body.append(f'<rect x="{x:.1f}" y="{legend_y}" width="{legend_width / steps + 0.5:.1f}" height="10" '
                    f'fill="{diverging_color(value)}"/>')
    for value, anchor in ((0.0, 'start'), (0.5, 'middle'), (1.0, 'end')):
        x = margin_left + value * legend_width
        body.append(f'<text x="{x:.1f}" y="{legend_y + 24}" text-anchor="{anchor}" font-size="10" {FONT}>'
                    f'{value:.1f}</text>')

    return _document(width, height, body, HATCH_DEFS)


def render_cluster_bars(values: Sequence[Tuple[str, Optional[float]]], metric_name: str,
                        reference: Optional[float] = None, width: int = 640, height: int = 320) -> str:
    """按簇指标柱状图

    簇按标识自然排序；无定义的簇保留空位并画出标记；reference 为全局值参考线。

    Args:
        values: (簇标识, 指标值或None) 序列
        metric_name: 指标名 (用于标题)
        reference: 全局值

    Returns:
        str: SVG 文档
    """
    ordered = sorted(values, key=lambda item: natural_key(item[0]))
    defined = [v for _, v in ordered if v is not None]
    top = max(defined + ([reference] if reference is not None else []) + [1e-12])
    if metric_name.lower() == 'auc':
        top = max(top, 1.0)

    margin_left, margin_right, margin_top, margin_bottom = 60, 20, 40, 50
    plot_w = width - margin_left - margin_right
    plot_h = height - margin_top - margin_bottom
    slot = plot_w / max(len(ordered), 1)
    bar_w = slot * 0.7
    base_y = margin_top + plot_h

    def to_y(value: float) -> float:
        return base_y - plot_h * value / top

    body = [
        f'<text x="{width / 2:.1f}" y="22" text-anchor="middle" font-size="14" {FONT}>'
        f'按簇 {escape(metric_name)}</text>',
        f'<line x1="{margin_left}" y1="{base_y}" x2="{margin_left + plot_w}" y2="{base_y}" stroke="#444444"/>',
        f'<line x1="{margin_left}" y1="{margin_top}" x2="{margin_left}" y2="{base_y}" stroke="#444444"/>',
    ]
    for fraction in (0.0, 0.5, 1.0):
        tick = top * fraction
        body.append(f'<text x="{margin_left - 6}" y="{to_y(tick) + 4:.1f}" text-anchor="end" font-size="10" {FONT}>'
                    f'{tick:.3g}</text>')

    for index, (cluster_id, value) in enumerate(ordered):
        x = margin_left + index * slot + (slot - bar_w) / 2
        center = x + bar_w / 2
        label = escape(str(cluster_id))
        if value is None:
            body.append(f'<g class="undefined-marker"><title>{label}: 无定义</title>'
                        f'<line x1="{center - 6:.1f}" y1="{base_y - 18:.1f}" x2="{center + 6:.1f}" y2="{base_y - 6:.1f}" '
                        f'stroke="#8c8c8c" stroke-width="2"/>'
                        f'<line x1="{center - 6:.1f}" y1="{base_y - 6:.1f}" x2="{center + 6:.1f}" y2="{base_y - 18:.1f}" '
                        f'stroke="#8c8c8c" stroke-width="2"/></g>')
        else:
            y = to_y(value)
            body.append(f'<rect class="bar" x="{x:.1f}" y="{y:.1f}" width="{bar_w:.1f}" height="{base_y - y:.1f}" '
                        f'fill="#4c78a8"><title>{label}: {value:.6f}</title></rect>')
        body.append(f'<text x="{center:.1f}" y="{base_y + 16}" text-anchor="middle" font-size="10" {FONT}>'
                    f'{label}</text>')

    if reference is not None:
        y = to_y(reference)
        body.append(f'<line class="reference" x1="{margin_left}" y1="{y:.1f}" x2="{margin_left + plot_w}" y2="{y:.1f}" '
                    f'stroke="#e45756" stroke-dasharray="6,3"><title>全局 {reference:.6f}</title></line>')

    return _document(width, height, body)


def render_feature_bars(values: Sequence[Tuple[str, float]], metric_name: str,
                        upper_bound: Optional[float] = None, width: int = 640) -> str:
    """特征漂移横向柱状图，按给定顺序自上而下排列 (调用方负责按PSI降序)"""
    row_h = 24
    margin_left, margin_right, margin_top = 160, 70, 40
    height = margin_top + row_h * max(len(values), 1) + 20
    plot_w = width - margin_left - margin_right
    top = max([v for _, v in values] + ([upper_bound] if upper_bound else []) + [1e-12])

    body = [f'<text x="{width / 2:.1f}" y="22" text-anchor="middle" font-size="14" {FONT}>'
            f'特征 {escape(metric_name)}</text>']
    for index, (feature, value) in enumerate(values):
        y = margin_top + index * row_h
        bar = plot_w * value / top
        name = escape(str(feature))
        body.append(f'<text class="feature" x="{margin_left - 8}" y="{y + 15}" text-anchor="end" font-size="11" {FONT}>'
                    f'{name}</text>')
        body.append(f'<rect class="bar" x="{margin_left}" y="{y + 3}" width="{bar:.1f}" height="{row_h - 6}" '
                    f'fill="#f58518"><title>{name}: {value:.6f}</title></rect>')
        body.append(f'<text x="{margin_left + bar + 4:.1f}" y="{y + 15}" font-size="10" {FONT}>{value:.4f}</text>')

    if upper_bound:
        x = margin_left + plot_w * upper_bound / top
        body.append(f'<line class="upper-bound" x1="{x:.1f}" y1="{margin_top}" x2="{x:.1f}" y2="{height - 20}" '
                    f'stroke="#888888" stroke-dasharray="4,3"><title>上界 {upper_bound:.6f}</title></line>')

    return _document(width, height, body)
