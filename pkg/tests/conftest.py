#!/usr/bin/env python3
"""
pytest 配置文件
为诊断工具测试提供共享的测试配置和夹具
"""

import os
import sys
import tempfile
import shutil
from pathlib import Path
from typing import Dict, Generator, List

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

# 确保测试环境 - 不读取宿主机的 AUCDIAG_* 设置
os.environ['AUCDIAG_ENV'] = 'testing'

from config import TestingConfig
from models import ClusteredDataset

TOY_ROWS = [
    ('C1', 1, 0.9),
    ('C1', 1, 0.8),
    ('C1', 0, 0.4),
    ('C2', 1, 0.6),
    ('C2', 0, 0.7),
    ('C2', 0, 0.3),
]


def write_csv(path: Path, header: List[str], rows: List[List]) -> Path:
    """写出测试用CSV"""
    lines = [','.join(header)] + [','.join(str(value) for value in row) for row in rows]
    path.write_text('\n'.join(lines) + '\n', encoding='utf-8')
    return path


@pytest.fixture
def toy_dataset() -> ClusteredDataset:
    """六样本两簇的示例数据"""
    clusters, labels, scores = zip(*TOY_ROWS)
    return ClusteredDataset.from_arrays(scores, labels, clusters)


@pytest.fixture
def temp_directory() -> Generator[Path, None, None]:
    """临时目录夹具"""
    temp_dir = tempfile.mkdtemp()
    yield Path(temp_dir)
    shutil.rmtree(temp_dir, ignore_errors=True)


@pytest.fixture
def toy_csv(temp_directory) -> Path:
    """示例数据的CSV文件"""
    return write_csv(temp_directory / 'toy.csv', ['cluster', 'label', 'score'],
                     [list(row) for row in TOY_ROWS])


@pytest.fixture
def testing_config() -> TestingConfig:
    """测试配置夹具"""
    return TestingConfig()


@pytest.fixture
def mock_environment_variables():
    """环境变量模拟夹具"""
    original = dict(os.environ)

    def _mock_env(env_vars: Dict[str, str]):
        os.environ.update(env_vars)

    yield _mock_env
    os.environ.clear()
    os.environ.update(original)


def pytest_addoption(parser):
    """添加命令行选项"""
    parser.addoption('--skip-slow', action='store_true', default=False, help='跳过标记为 slow 的测试')


def pytest_configure(config):
    """pytest配置"""
    config.addinivalue_line(
        "markers", "unit: 标记单元测试"
    )
    config.addinivalue_line(
        "markers", "property: 标记随机化性质测试"
    )
    config.addinivalue_line(
        "markers", "integration: 标记集成测试"
    )
    config.addinivalue_line(
        "markers", "slow: 标记缓慢测试"
    )


def pytest_collection_modifyitems(config, items):
    """修改测试项收集"""
    skip_slow = pytest.mark.skip(reason="使用了 --skip-slow")
    for item in items:
        # 为没有标记的测试添加unit标记
        if not any(mark.name in ['unit', 'property', 'integration'] for mark in item.iter_markers()):
            item.add_marker(pytest.mark.unit)

        if config.getoption('--skip-slow') and 'slow' in item.keywords:
            item.add_marker(skip_slow)
