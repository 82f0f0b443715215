#!/usr/bin/env python3
"""
诊断工具自定义异常类
定义所有输入校验、数据条件、配置和文件操作相关的具体异常类型
"""

from typing import Any, Dict, Optional


class DiagnosticsException(Exception):
    """诊断操作基础异常类"""

    def __init__(self, message, error_code=None, original_exception=None):
        super().__init__(message)
        self.message = message
        self.error_code = error_code
        self.original_exception = original_exception

    def __str__(self):
        if self.error_code:
            return f"[{self.error_code}] {self.message}"
        return self.message


def _row_suffix(row: Optional[int], column: Optional[str] = None) -> str:
    parts = []
    if row is not None:
        parts.append(f"第{row}行")
    if column is not None:
        parts.append(f"列 '{column}'")
    return f" ({', '.join(parts)})" if parts else ""


# ---------------------------------------------------------------- 输入校验 (VAL)

class NonFiniteScoreError(DiagnosticsException):
    """分数为NaN或无穷大"""

    def __init__(self, row=None, value=None, original_exception=None):
        message = f"分数必须为有限实数: {value!r}{_row_suffix(row)}"
        super().__init__(message, "VAL_001", original_exception)
        self.row = row
        self.value = value


class LabelOutOfDomainError(DiagnosticsException):
    """标签不在 {0, 1} 内"""

    def __init__(self, row=None, value=None, original_exception=None):
        message = f"标签必须为0或1: {value!r}{_row_suffix(row)}"
        super().__init__(message, "VAL_002", original_exception)
        self.row = row
        self.value = value


class LengthMismatchError(DiagnosticsException):
    """输入序列长度不一致"""

    def __init__(self, lengths: Dict[str, int]):
        detail = ", ".join(f"{name}={size}" for name, size in lengths.items())
        super().__init__(f"输入序列长度不一致: {detail}", "VAL_003")
        self.lengths = lengths


class EmptyInputError(DiagnosticsException):
    """输入为空"""

    def __init__(self, what="输入"):
        super().__init__(f"{what}不能为空", "VAL_004")
        self.what = what


class ProbabilityOutOfRangeError(DiagnosticsException):
    """概率不在 [0, 1] 内"""

    def __init__(self, value=None, index=None):
        message = f"概率必须位于[0, 1]区间: {value!r}"
        if index is not None:
            message += f" (位置 {index})"
        super().__init__(message, "VAL_005")
        self.value = value
        self.index = index


class InvalidEpsilonError(DiagnosticsException):
    """截断参数不在 (0, 0.5) 内"""

    def __init__(self, value):
        super().__init__(f"clamp_eps 必须位于(0, 0.5)区间: {value!r}", "VAL_006")
        self.value = value


class TooFewBinsError(DiagnosticsException):
    """分箱数不足"""

    def __init__(self, num_bins):
        super().__init__(f"分箱数必须至少为2: {num_bins!r}", "VAL_007")
        self.num_bins = num_bins


class EdgeMismatchError(DiagnosticsException):
    """两个直方图的分箱边界不一致"""

    def __init__(self, detail=None):
        message = "直方图分箱边界不一致"
        if detail:
            message += f" - {detail}"
        super().__init__(message, "VAL_008")


class NonFiniteFeatureError(DiagnosticsException):
    """特征值为NaN或无穷大"""

    def __init__(self, row=None, column=None, value=None):
        super().__init__(f"特征值必须为有限实数: {value!r}{_row_suffix(row, column)}", "VAL_009")
        self.row = row
        self.column = column
        self.value = value


class DimensionMismatchError(DiagnosticsException):
    """特征维度与模型不一致"""

    def __init__(self, expected, actual):
        super().__init__(f"特征维度不匹配: 期望 {expected}, 实际 {actual}", "VAL_010")
        self.expected = expected
        self.actual = actual


class ParseError(DiagnosticsException):
    """输入文件解析失败"""

    def __init__(self, row=None, column=None, detail=None, original_exception=None):
        message = "输入解析失败"
        if detail:
            message += f": {detail}"
        message += _row_suffix(row, column)
        super().__init__(message, "VAL_011", original_exception)
        self.row = row
        self.column = column


# ---------------------------------------------------------------- 数据条件 (DAT)

class NoPositivesError(DiagnosticsException):
    """数据中没有正样本，全局AUC无定义"""

    def __init__(self):
        super().__init__("数据中没有正样本(标签为1)，全局AUC无定义", "DAT_001")


class NoNegativesError(DiagnosticsException):
    """数据中没有负样本，全局AUC无定义"""

    def __init__(self):
        super().__init__("数据中没有负样本(标签为0)，全局AUC无定义", "DAT_002")


class MissingProbabilitiesError(DiagnosticsException):
    """请求概率类指标但数据中没有[0, 1]内的概率列"""

    def __init__(self, metric):
        super().__init__(f"指标 {metric} 需要[0, 1]内的概率列，请通过 --prob-col 指定", "DAT_003")
        self.metric = metric


class NoDefinedValueError(DiagnosticsException):
    """所有簇在该准则下都没有定义值"""

    def __init__(self, criterion):
        super().__init__(f"准则 {criterion} 下没有任何簇具有定义值", "DAT_004")
        self.criterion = criterion


class UnknownClusterError(DiagnosticsException):
    """簇标识不存在"""

    def __init__(self, cluster_id):
        super().__init__(f"簇不存在: {cluster_id!r}", "DAT_005")
        self.cluster_id = cluster_id


class NoFeaturesError(DiagnosticsException):
    """数据中没有特征列"""

    def __init__(self):
        super().__init__("数据中没有可用于漂移诊断的数值特征列", "DAT_006")


class EmptyComplementError(DiagnosticsException):
    """关注簇之外没有其他样本"""

    def __init__(self, cluster_id):
        super().__init__(f"簇 {cluster_id!r} 之外没有其他样本(只有一个簇)，无法对比", "DAT_007")
        self.cluster_id = cluster_id


class TooFewSamplesError(DiagnosticsException):
    """样本数少于簇数"""

    def __init__(self, n_samples, k):
        super().__init__(f"样本数 {n_samples} 少于簇数 k={k}", "DAT_008")
        self.n_samples = n_samples
        self.k = k


class DegenerateFeaturesError(DiagnosticsException):
    """所有特征列均为常数"""

    def __init__(self, feature_names=None):
        message = "所有特征列均为常数，无法聚类"
        if feature_names:
            message += f": {', '.join(feature_names)}"
        super().__init__(message, "DAT_009")
        self.feature_names = list(feature_names or [])


class EmptyAfterFilteringError(DiagnosticsException):
    """过滤后没有剩余数据行"""

    def __init__(self, path, rejected_count):
        super().__init__(f"过滤后没有有效数据行: {path} (拒绝 {rejected_count} 行)", "DAT_010")
        self.path = path
        self.rejected_count = rejected_count


class DecompositionResidualError(DiagnosticsException):
    """分解恒等式残差超出容差"""

    def __init__(self, residual, tolerance):
        super().__init__(f"AUC分解残差 {residual!r} 超出容差 {tolerance!r}", "DAT_011")
        self.residual = residual
        self.tolerance = tolerance


# ---------------------------------------------------------------- 配置 (CFG)

class ConfigurationError(DiagnosticsException):
    """配置错误异常"""

    def __init__(self, config_item, config_value=None, original_exception=None):
        message = f"配置错误: {config_item}"
        if config_value is not None:
            message += f" = {config_value!r}"
        super().__init__(message, "CFG_001", original_exception)
        self.config_item = config_item
        self.config_value = config_value


# ---------------------------------------------------------------- 文件系统 (SYS)

class InputFileNotFoundError(DiagnosticsException):
    """输入文件未找到"""

    def __init__(self, path, original_exception=None):
        super().__init__(f"输入文件未找到: {path}", "SYS_001", original_exception)
        self.path = path


class ReportWriteError(DiagnosticsException):
    """报告写入失败"""

    def __init__(self, path, reason=None, original_exception=None):
        message = f"报告写入失败: {path}"
        if reason:
            message += f" - {reason}"
        super().__init__(message, "SYS_002", original_exception)
        self.path = path


def wrap_exception(original_exception: Exception, context: Optional[Dict[str, Any]] = None) -> DiagnosticsException:
    """
    将通用异常包装为具体的诊断异常

    Args:
        original_exception: 原始异常
        context: 上下文信息字典 (path, row, column)

    Returns:
        DiagnosticsException: 包装后的具体异常
    """
    if isinstance(original_exception, DiagnosticsException):
        return original_exception

    context = context or {}
    path = context.get('path', 'unknown')

    if isinstance(original_exception, FileNotFoundError):
        return InputFileNotFoundError(path, original_exception)
    if isinstance(original_exception, UnicodeDecodeError):
        return ParseError(context.get('row'), context.get('column'), "文件不是UTF-8编码", original_exception)
    if isinstance(original_exception, ValueError):
        return ParseError(context.get('row'), context.get('column'), str(original_exception), original_exception)
    if isinstance(original_exception, OSError):
        return ReportWriteError(path, str(original_exception), original_exception)

    return DiagnosticsException(str(original_exception), "UNKNOWN_ERROR", original_exception)
