"""
配置模块
提供诊断工具的分层配置加载
"""

from .diagnostics_config import DiagnosticsConfig, TestingConfig, get_config, TOOL_VERSION

__all__ = ['DiagnosticsConfig', 'TestingConfig', 'get_config', 'TOOL_VERSION']
