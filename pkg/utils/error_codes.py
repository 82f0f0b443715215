from enum import Enum
from typing import Dict, Optional, Tuple
import logging

from utils.exceptions import DiagnosticsException


class ErrorCategory(Enum):
    """错误分类"""
    SYSTEM = "SYS"       # 文件系统错误
    DATA = "DAT"         # 数据条件错误
    CONFIG = "CFG"       # 配置/参数错误
    VALIDATION = "VAL"   # 输入验证错误


class ErrorCode:
    """统一错误码定义"""

    # 系统错误 (SYS_001-099)
    SYS_001 = ("SYS_001", "输入文件未找到")
    SYS_002 = ("SYS_002", "报告写入失败")

    # 数据条件错误 (DAT_001-099)
    DAT_001 = ("DAT_001", "没有正样本")
    DAT_002 = ("DAT_002", "没有负样本")
    DAT_003 = ("DAT_003", "缺少概率列")
    DAT_004 = ("DAT_004", "没有定义值")
    DAT_005 = ("DAT_005", "簇不存在")
    DAT_006 = ("DAT_006", "没有特征列")
    DAT_007 = ("DAT_007", "补集为空")
    DAT_008 = ("DAT_008", "样本数不足")
    DAT_009 = ("DAT_009", "特征退化")
    DAT_010 = ("DAT_010", "过滤后为空")
    DAT_011 = ("DAT_011", "分解残差超限")

    # 配置错误 (CFG_001-099)
    CFG_001 = ("CFG_001", "配置错误")

    # 验证错误 (VAL_001-099)
    VAL_001 = ("VAL_001", "分数非有限值")
    VAL_002 = ("VAL_002", "标签越界")
    VAL_003 = ("VAL_003", "长度不一致")
    VAL_004 = ("VAL_004", "输入为空")
    VAL_005 = ("VAL_005", "概率越界")
    VAL_006 = ("VAL_006", "截断参数无效")
    VAL_007 = ("VAL_007", "分箱数不足")
    VAL_008 = ("VAL_008", "分箱边界不一致")
    VAL_009 = ("VAL_009", "特征非有限值")
    VAL_010 = ("VAL_010", "维度不匹配")
    VAL_011 = ("VAL_011", "解析失败")

    @classmethod
    def lookup(cls, code: str) -> Optional[Tuple[str, str]]:
        """按错误码字符串查找 (code, message) 元组"""
        return getattr(cls, code, None)


# 命令行退出码
EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_USAGE = 2


class ErrorHandler:
    """统一错误处理器 - 把异常转换为退出码和日志"""

    _EXIT_CODES: Dict[str, int] = {
        ErrorCategory.SYSTEM.value: EXIT_VALIDATION,
        ErrorCategory.DATA.value: EXIT_VALIDATION,
        ErrorCategory.VALIDATION.value: EXIT_VALIDATION,
        ErrorCategory.CONFIG.value: EXIT_USAGE,
    }

    @staticmethod
    def get_category(error_code: Optional[str]) -> Optional[ErrorCategory]:
        """根据错误码前缀确定错误分类"""
        if not error_code:
            return None
        prefix = error_code.split('_', 1)[0]
        for category in ErrorCategory:
            if category.value == prefix:
                return category
        return None

    @staticmethod
    def get_exit_code(exc: DiagnosticsException) -> int:
        """根据异常的错误码确定命令行退出码

        Args:
            exc: 诊断异常

        Returns:
            int: 退出码 (1 = 验证/数据错误, 2 = 用法/配置错误)
        """
        category = ErrorHandler.get_category(exc.error_code)
        if category is None:
            return EXIT_VALIDATION
        return ErrorHandler._EXIT_CODES[category.value]

    @staticmethod
    def _get_log_level(error_code: Optional[str]) -> int:
        """根据错误码确定日志级别"""
        category = ErrorHandler.get_category(error_code)
        if category is ErrorCategory.SYSTEM:
            return logging.ERROR
        if category in (ErrorCategory.DATA, ErrorCategory.CONFIG):
            return logging.WARNING
        return logging.INFO

    @staticmethod
    def format_message(exc: DiagnosticsException) -> str:
        """生成面向用户的错误消息，包含错误码分类说明"""
        code_entry = ErrorCode.lookup(exc.error_code or '')
        if code_entry is None:
            return f"错误: {exc}"
        return f"错误 [{code_entry[0]} {code_entry[1]}]: {exc.message}"

    @staticmethod
    def handle(exc: DiagnosticsException, logger: Optional[logging.Logger] = None) -> Tuple[int, str]:
        """记录异常并返回 (退出码, 消息)

        Args:
            exc: 诊断异常
            logger: 日志器，默认使用根日志器

        Returns:
            Tuple[int, str]: (退出码, 错误消息)
        """
        message = ErrorHandler.format_message(exc)
        level = ErrorHandler._get_log_level(exc.error_code)
        (logger or logging.getLogger()).log(level, message)
        return ErrorHandler.get_exit_code(exc), message
