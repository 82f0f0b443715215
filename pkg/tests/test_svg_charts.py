#!/usr/bin/env python3
"""
SVG 图表测试
"""

import xml.etree.ElementTree as ET

import numpy as np

from reporting.svg_charts import (
    UNDEFINED_FILL,
    diverging_color,
    natural_key,
    render_cluster_bars,
    render_feature_bars,
    render_heatmap,
)

SVG = '{http://www.w3.org/2000/svg}'


def _parse(document: str) -> ET.Element:
    return ET.fromstring(document.encode('utf-8'))


def _by_class(root: ET.Element, tag: str, css_class: str):
    return [element for element in root.iter(SVG + tag)
            if css_class in element.get('class', '').split()]


class TestColors:
    """色阶与排序辅助"""

    def test_diverging_midpoint_is_white(self):
        assert diverging_color(0.5) == '#ffffff'

    def test_extremes(self):
        assert diverging_color(0.0) == '#ca0020'
        assert diverging_color(1.0) == '#0571b0'
        assert diverging_color(None) == UNDEFINED_FILL

    def test_natural_order(self):
        assert sorted(['C10', 'C2', 'C1'], key=natural_key) == ['C1', 'C2', 'C10']


class TestHeatmap:
    """热力图测试"""

    def test_toy_cells(self):
        weights = np.array([[2 / 9, 4 / 9], [1 / 9, 2 / 9]])
        root = _parse(render_heatmap([[1.0, 1.0], [1.0, 0.5]], weights, ['C1', 'C2']))
        assert root.tag == SVG + 'svg'
        texts = [element.text for element in _by_class(root, 'text', 'cell-value')]
        assert texts == ['1.000', '1.000', '1.000', '0.500']
        cells = _by_class(root, 'rect', 'cell')
        assert len(cells) == 4
        assert 'w = 0.444444' in cells[1].find(SVG + 'title').text

    def test_undefined_cells_hatched(self):
        root = _parse(render_heatmap([[1.0, None], [None, None]], np.zeros((2, 2)), ['A', 'B']))
        undefined = _by_class(root, 'rect', 'undefined')
        assert len(undefined) == 3
        assert all(element.get('fill') == 'url(#undefined-hatch)' for element in undefined)
        assert len(_by_class(root, 'text', 'cell-value')) == 1
        assert root.find(f'{SVG}defs/{SVG}pattern').get('id') == 'undefined-hatch'

    def test_single_cell(self):
        root = _parse(render_heatmap([[0.75]], [[1.0]], ['all']))
        assert [element.text for element in _by_class(root, 'text', 'cell-value')] == ['0.750']

    def test_labels_escaped(self):
        document = render_heatmap([[0.5]], [[1.0]], ['a<b&c'])
        assert 'a&lt;b&amp;c' in document
        _parse(document)


class TestBars:
    """柱状图测试"""

    def test_cluster_bars_with_reference(self):
        root = _parse(render_cluster_bars([('C10', 0.7), ('C2', 0.9), ('C1', None)], 'AUC', 0.8))
        bars = _by_class(root, 'rect', 'bar')
        assert len(bars) == 2
        assert bars[0].find(SVG + 'title').text.startswith('C2')
        assert len(_by_class(root, 'g', 'undefined-marker')) == 1
        assert len(_by_class(root, 'line', 'reference')) == 1

    def test_cluster_bars_all_undefined(self):
        root = _parse(render_cluster_bars([('a', None), ('b', None)], 'Brier'))
        assert _by_class(root, 'rect', 'bar') == []
        assert _by_class(root, 'line', 'reference') == []

    def test_feature_bars_keep_order(self):
        root = _parse(render_feature_bars([('shifted', 2.5), ('stable', 0.01)], 'JS', upper_bound=np.log(2)))
        names = [element.text for element in _by_class(root, 'text', 'feature')]
        assert names == ['shifted', 'stable']
        assert len(_by_class(root, 'line', 'upper-bound')) == 1

    def test_deterministic(self):
        values = [('a', 0.3), ('b', 0.6)]
        assert render_cluster_bars(values, 'AUC', 0.5) == render_cluster_bars(values, 'AUC', 0.5)
