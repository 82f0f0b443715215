"""
工具模块
提供异常定义、错误码、日志配置和合成数据生成等实用功能
"""

from .exceptions import DiagnosticsException, wrap_exception
from .log_helper import setup_logger, get_logger

__all__ = ['DiagnosticsException', 'wrap_exception', 'setup_logger', 'get_logger']
