"""
数据读取
从带表头的分隔文本文件读取评分数据，逐行校验后构造 ClusteredDataset

行号从1开始计数数据行 (表头不计入)。
"""

import hashlib
import math
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from models.dataset import ClusteredDataset, IngestSummary
from models.report import IngestSpec
from utils.exceptions import (
    ConfigurationError,
    EmptyAfterFilteringError,
    InputFileNotFoundError,
    LabelOutOfDomainError,
    NonFiniteScoreError,
    ParseError,
    wrap_exception,
)
from utils.log_helper import get_logger

logger = get_logger(__name__)

LABEL_VALUES = {'0': 0, '1': 1, 'false': 0, 'true': 1}


def file_digest(path: Path) -> str:
    """文件内容的 SHA-256 摘要"""
    sha = hashlib.sha256()
    with open(path, 'rb') as handle:
        for chunk in iter(lambda: handle.read(65536), b''):
            sha.update(chunk)
    return f"sha256:{sha.hexdigest()}"


def read_table(path, delimiter: str = ',') -> Tuple[pd.DataFrame, str]:
    """以字符串形式读取整张表 (不做缺失值推断)

    Returns:
        Tuple[pd.DataFrame, str]: (表格, 内容摘要)
    """
    path = Path(path)
    if not path.is_file():
        raise InputFileNotFoundError(str(path))
    try:
        frame = pd.read_csv(path, sep=delimiter, dtype=str, keep_default_na=False,
                            encoding='utf-8', skipinitialspace=False)
    except pd.errors.EmptyDataError as e:
        raise ParseError(None, None, "文件为空或缺少表头", e)
    except pd.errors.ParserError as e:
        raise ParseError(None, None, str(e), e)
    except (UnicodeDecodeError, OSError) as e:
        raise wrap_exception(e, {'path': str(path)})
    frame.columns = [str(column).strip() for column in frame.columns]
    return frame, file_digest(path)


def _require_columns(frame: pd.DataFrame, columns: Sequence[Optional[str]]):
    for column in columns:
        if column is not None and column not in frame.columns:
            raise ParseError(None, column, "表头中没有该列")


def parse_numeric_column(raw: Sequence[str], column: str, rows: Sequence[int]) -> np.ndarray:
    """把字符串列解析为float，空串为NaN，无法解析的值报告行号"""
    values = pd.Series(list(raw), dtype=str).str.strip()
    parsed = pd.to_numeric(values, errors='coerce').to_numpy(dtype=float)
    suspicious = np.flatnonzero(np.isnan(parsed) & (values != '').to_numpy())
    for index in suspicious:
        try:
            parsed[index] = float(values.iat[index])
        except ValueError as e:
            raise ParseError(rows[index], column, f"无法解析为数值: {values.iat[index]!r}", e)
    return parsed


def _is_numeric_column(raw: pd.Series) -> bool:
    values = raw.str.strip()
    present = values[values != '']
    if present.empty:
        return False
    return not pd.to_numeric(present, errors='coerce').isna().any()


def default_feature_columns(frame: pd.DataFrame, reserved: Sequence[Optional[str]]) -> List[str]:
    """除保留列外所有数值列 (空值允许)"""
    return [column for column in frame.columns
            if column not in reserved and _is_numeric_column(frame[column])]


def _parse_score(text: str, row: int, column: str) -> float:
    try:
        value = float(text)
    except ValueError as e:
        raise ParseError(row, column, f"无法解析为数值: {text!r}", e)
    if not math.isfinite(value):
        raise NonFiniteScoreError(row=row, value=value)
    return value


def _parse_label(text: str, row: int) -> int:
    label = LABEL_VALUES.get(text.lower())
    if label is None:
        raise LabelOutOfDomainError(row=row, value=text)
    return label


def ingest(spec: IngestSpec) -> ClusteredDataset:
    """按读取规格读取并校验数据

    分数/标签/簇 (以及指定了概率列时的概率) 缺失的行被拒绝并记录行号；
    特征缺失值保留为NaN，仅在漂移诊断中按特征剔除。

    Args:
        spec: 读取规格

    Returns:
        ClusteredDataset: 校验后的数据集，source 记录摘要与行数核对
    """
    if not spec.header_required:
        raise ConfigurationError('header_required', spec.header_required)
    frame, digest = read_table(spec.path, spec.delimiter)
    _require_columns(frame, [spec.score_column, spec.label_column, spec.cluster_column,
                             spec.probability_column])

    reserved = [spec.score_column, spec.label_column, spec.cluster_column, spec.probability_column]
    if spec.feature_columns is None:
        feature_columns = default_feature_columns(frame, reserved)
    else:
        feature_columns = list(spec.feature_columns)
        _require_columns(frame, feature_columns)

    required = [column for column in (spec.score_column, spec.label_column,
                                      spec.cluster_column, spec.probability_column) if column]
    scores: List[float] = []
    labels: List[int] = []
    clusters: List[str] = []
    probs: List[str] = []
    accepted_rows: List[int] = []
    rejected: List[Tuple[int, str]] = []

    for position, record in enumerate(frame.itertuples(index=False, name=None)):
        row = position + 1
        cells: Dict[str, str] = dict(zip(frame.columns, record))
        missing = [column for column in required if str(cells[column]).strip() == '']
        if missing:
            rejected.append((row, f"缺少值: {', '.join(missing)}"))
            continue

        scores.append(_parse_score(cells[spec.score_column].strip(), row, spec.score_column))
        labels.append(_parse_label(cells[spec.label_column].strip(), row))
        if spec.cluster_column:
            clusters.append(cells[spec.cluster_column].strip())
        if spec.probability_column:
            probs.append(cells[spec.probability_column])
        accepted_rows.append(row)

    rows_total = len(frame)
    if not accepted_rows:
        raise EmptyAfterFilteringError(str(spec.path), len(rejected))
    if rejected:
        logger.warning(f"{spec.path}: 拒绝 {len(rejected)} 行 (共 {rows_total} 行)")

    keep = np.asarray(accepted_rows) - 1
    probabilities = (parse_numeric_column(probs, spec.probability_column, accepted_rows)
                     if spec.probability_column else None)
    features = {
        column: parse_numeric_column(frame[column].to_numpy()[keep], column, accepted_rows)
        for column in feature_columns
    }

    source = IngestSummary(path=str(spec.path), digest=digest, rows_total=rows_total,
                           rows_accepted=len(accepted_rows), rejected=rejected)
    logger.info(f"读取 {spec.path}: {len(accepted_rows)}/{rows_total} 行, 特征 {feature_columns}")
    return ClusteredDataset.from_arrays(
        scores, labels,
        clusters=clusters if spec.cluster_column else None,
        probabilities=probabilities,
        features=features,
        source=source,
    )
