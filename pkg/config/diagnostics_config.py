#!/usr/bin/env python3
"""
诊断工具配置文件
集中管理所有诊断相关的配置项

加载顺序: 类默认值 -> JSON配置文件 -> 环境变量(AUCDIAG_*) -> 命令行参数
"""

import json
import os
from pathlib import Path
from typing import Any, Dict, Optional

from dotenv import load_dotenv

from utils.exceptions import ConfigurationError

TOOL_VERSION = '1.0.0'

VALID_TIE_POLICIES = ('half', 'strict')
VALID_BIN_STRATEGIES = ('quantile', 'uniform')
VALID_LOG_LEVELS = ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL')


class DiagnosticsConfig:
    """诊断配置类"""

    # 指标配置
    DEFAULT_TIE_POLICY = 'half'
    DEFAULT_CLAMP_EPS = 1e-15

    # 漂移诊断配置
    DEFAULT_NUM_BINS = 10
    DEFAULT_BIN_STRATEGY = 'quantile'
    DEFAULT_SMOOTHING_EPS = 1e-6

    # 聚类配置
    DEFAULT_KMEANS_K = 2
    DEFAULT_KMEANS_MAX_ITER = 100
    DEFAULT_KMEANS_TOL = 1e-6
    DEFAULT_SEED = 0

    # 运行配置
    DEFAULT_MAX_WORKERS = 1
    DEFAULT_DELIMITER = ','
    DEFAULT_LOG_LEVEL = 'INFO'
    DEFAULT_LOG_DIR = ''  # 空字符串表示只输出到控制台

    ENV_PREFIX = 'AUCDIAG_'

    def __init__(self, config_file: Optional[str] = None, load_env: bool = True):
        """
        初始化配置

        Args:
            config_file: 可选的JSON配置文件路径
            load_env: 是否读取环境变量(含 .env 文件)
        """
        self._load_defaults()

        if config_file and os.path.exists(config_file):
            self._load_from_file(config_file)

        if load_env:
            load_dotenv(override=False)
            self._load_from_env()

        self._validate_config()

    def _load_defaults(self):
        """加载默认配置"""
        self.tie_policy = self.DEFAULT_TIE_POLICY
        self.clamp_eps = self.DEFAULT_CLAMP_EPS
        self.num_bins = self.DEFAULT_NUM_BINS
        self.bin_strategy = self.DEFAULT_BIN_STRATEGY
        self.smoothing_eps = self.DEFAULT_SMOOTHING_EPS
        self.kmeans_k = self.DEFAULT_KMEANS_K
        self.kmeans_max_iter = self.DEFAULT_KMEANS_MAX_ITER
        self.kmeans_tol = self.DEFAULT_KMEANS_TOL
        self.seed = self.DEFAULT_SEED
        self.max_workers = self.DEFAULT_MAX_WORKERS
        self.delimiter = self.DEFAULT_DELIMITER
        self.log_level = self.DEFAULT_LOG_LEVEL
        self.log_dir = self.DEFAULT_LOG_DIR

    def _load_from_file(self, config_file: str):
        """从配置文件加载配置"""
        try:
            with open(config_file, 'r', encoding='utf-8') as f:
                config_data = json.load(f)
        except (json.JSONDecodeError, IOError) as e:
            raise ConfigurationError('config_file', config_file, e)

        for key, value in config_data.items():
            if hasattr(self, key):
                setattr(self, key, value)

    def _load_from_env(self):
        """从环境变量加载配置"""
        env_mappings = {
            'TIE_POLICY': ('tie_policy', str),
            'CLAMP_EPS': ('clamp_eps', float),
            'NUM_BINS': ('num_bins', int),
            'BIN_STRATEGY': ('bin_strategy', str),
            'SMOOTHING_EPS': ('smoothing_eps', float),
            'KMEANS_K': ('kmeans_k', int),
            'KMEANS_MAX_ITER': ('kmeans_max_iter', int),
            'KMEANS_TOL': ('kmeans_tol', float),
            'SEED': ('seed', int),
            'MAX_WORKERS': ('max_workers', int),
            'DELIMITER': ('delimiter', str),
            'LOG_LEVEL': ('log_level', str),
            'LOG_DIR': ('log_dir', str),
        }

        for suffix, (attr_name, attr_type) in env_mappings.items():
            env_key = self.ENV_PREFIX + suffix
            env_value = os.environ.get(env_key)
            if env_value is not None:
                try:
                    setattr(self, attr_name, attr_type(env_value))
                except ValueError as e:
                    raise ConfigurationError(env_key, env_value, e)

    def apply_overrides(self, **overrides: Any) -> 'DiagnosticsConfig':
        """应用命令行参数覆盖，值为None的参数忽略

        Returns:
            DiagnosticsConfig: 自身，便于链式调用
        """
        for key, value in overrides.items():
            if value is None:
                continue
            if not hasattr(self, key):
                raise ConfigurationError(key, value)
            setattr(self, key, value)
        self._validate_config()
        return self

    def _validate_config(self):
        """验证配置的有效性"""
        if self.tie_policy not in VALID_TIE_POLICIES:
            raise ConfigurationError('tie_policy', self.tie_policy)

        if not (0 < self.clamp_eps < 0.5):
            raise ConfigurationError('clamp_eps', self.clamp_eps)

        if self.num_bins < 2:
            raise ConfigurationError('num_bins', self.num_bins)

        if self.bin_strategy not in VALID_BIN_STRATEGIES:
            raise ConfigurationError('bin_strategy', self.bin_strategy)

        if self.smoothing_eps <= 0:
            raise ConfigurationError('smoothing_eps', self.smoothing_eps)

        if self.kmeans_k < 1:
            raise ConfigurationError('kmeans_k', self.kmeans_k)

        if self.kmeans_max_iter < 1:
            raise ConfigurationError('kmeans_max_iter', self.kmeans_max_iter)

        if self.kmeans_tol <= 0:
            raise ConfigurationError('kmeans_tol', self.kmeans_tol)

        if self.max_workers < 1:
            raise ConfigurationError('max_workers', self.max_workers)

        if not self.delimiter or len(self.delimiter) != 1:
            raise ConfigurationError('delimiter', self.delimiter)

        if str(self.log_level).upper() not in VALID_LOG_LEVELS:
            raise ConfigurationError('log_level', self.log_level)

    def get_log_dir_path(self) -> Optional[Path]:
        """获取日志目录的完整路径，未配置时返回None"""
        if not self.log_dir:
            return None
        return Path(self.log_dir).resolve()

    def to_dict(self) -> Dict[str, Any]:
        """转换为字典格式(写入报告的 config 区块)"""
        return {
            'tie_policy': self.tie_policy,
            'clamp_eps': self.clamp_eps,
            'num_bins': self.num_bins,
            'bin_strategy': self.bin_strategy,
            'smoothing_eps': self.smoothing_eps,
            'kmeans_k': self.kmeans_k,
            'kmeans_max_iter': self.kmeans_max_iter,
            'kmeans_tol': self.kmeans_tol,
            'seed': self.seed,
            'max_workers': self.max_workers,
            'delimiter': self.delimiter,
        }


class TestingConfig(DiagnosticsConfig):
    """测试环境配置 - 不读取环境变量，避免宿主机设置影响结果"""

    DEFAULT_LOG_LEVEL = 'DEBUG'

    def __init__(self, config_file: Optional[str] = None):
        super().__init__(config_file=config_file, load_env=False)


# 根据环境选择配置
config = {
    'development': DiagnosticsConfig,
    'testing': TestingConfig,
    'default': DiagnosticsConfig,
}


def get_config(env_name: Optional[str] = None, config_file: Optional[str] = None) -> DiagnosticsConfig:
    """获取配置实例

    Args:
        env_name: 环境名称，默认从 AUCDIAG_ENV 环境变量获取
        config_file: 可选的JSON配置文件路径

    Returns:
        DiagnosticsConfig: 配置实例
    """
    if env_name is None:
        env_name = os.environ.get('AUCDIAG_ENV', 'default')

    config_class = config.get(env_name, config['default'])
    return config_class(config_file)
