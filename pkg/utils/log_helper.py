"""
日志配置工具
统一配置 auc_diagnostics 日志器，库模块通过 logging.getLogger(__name__) 获取子日志器
"""

import logging
from typing import Optional

from utils.exceptions import ReportWriteError

LOGGER_NAME = 'auc_diagnostics'

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - [%(filename)s:%(lineno)d] - %(message)s'


def setup_logger(config=None) -> logging.Logger:
    """设置诊断工具专用日志配置

    Args:
        config: DiagnosticsConfig 实例，None时使用默认配置

    Returns:
        logging.Logger: 已配置的日志器
    """
    if config is None:
        from config import get_config
        config = get_config()

    diag_logger = logging.getLogger(LOGGER_NAME)

    # 避免重复配置
    if diag_logger.handlers:
        return diag_logger

    log_level = getattr(logging, str(config.log_level).upper(), logging.INFO)
    diag_logger.setLevel(log_level)

    formatter = logging.Formatter(LOG_FORMAT)

    # 控制台处理器 - 只显示警告和错误
    console_handler = logging.StreamHandler()
    console_handler.setLevel(logging.WARNING)
    console_handler.setFormatter(formatter)
    diag_logger.addHandler(console_handler)

    # 文件处理器 - 仅在配置了日志目录时启用
    log_dir = config.get_log_dir_path()
    if log_dir is not None:
        try:
            log_dir.mkdir(exist_ok=True, parents=True)
            file_handler = logging.FileHandler(log_dir / 'diagnostics.log', encoding='utf-8')
        except (OSError, PermissionError) as e:
            raise ReportWriteError(str(log_dir), "创建日志文件", e)
        file_handler.setLevel(log_level)
        file_handler.setFormatter(formatter)
        diag_logger.addHandler(file_handler)

    # 防止向上传播到根日志器
    diag_logger.propagate = False

    return diag_logger


def get_logger(name: Optional[str] = None) -> logging.Logger:
    """获取 auc_diagnostics 下的子日志器"""
    if not name:
        return logging.getLogger(LOGGER_NAME)
    return logging.getLogger(f"{LOGGER_NAME}.{name}")
