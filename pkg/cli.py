#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
AUC诊断命令行工具

子命令:
    decompose  全局AUC的簇内/簇间分解、Brier/对数损失按簇分解、热力图与柱状图
    drift      最差簇 (或指定簇) 相对其余数据的特征漂移
    cluster    为缺少簇列的数据生成 k-means 簇分配

退出码: 0 成功; 1 输入/数据/文件错误; 2 用法或配置错误
"""

import argparse
import os
import shutil
import sys
import tempfile
from contextlib import contextmanager
from pathlib import Path
from typing import Iterator, List, Optional

import numpy as np

from analysis.clustering import kmeans_fit
from analysis.decomposition import decompose_additive, decompose_auc, worst_cluster
from analysis.drift_diagnostics import drift_report
from config import TOOL_VERSION, get_config
from models.decomposition import AdditiveMetric, WorstClusterCriterion
from models.drift import BinStrategy
from models.report import IngestSpec
from reporting.emitter import emit_drift, emit_model, emit_report, write_text
from reporting.ingest import default_feature_columns, ingest, parse_numeric_column, read_table
from reporting.report_builder import build_diagnostics_report
from utils.error_codes import EXIT_OK, EXIT_USAGE, ErrorHandler
from utils.exceptions import ConfigurationError, DiagnosticsException, ReportWriteError
from utils.log_helper import get_logger, setup_logger

logger = get_logger('cli')

CRITERIA = ('auc', 'brier', 'logloss')


def _format(value: Optional[float]) -> str:
    return 'n/a' if value is None else f"{value:.6f}"


def _split_columns(text: Optional[str]) -> Optional[List[str]]:
    if text is None:
        return None
    columns = [part.strip() for part in text.split(',') if part.strip()]
    return columns or None


@contextmanager
def staged_output(output_dir: Path) -> Iterator[Path]:
    """在输出目录的同级临时目录中写文件，全部成功后整体替换输出目录

    成功后输出目录只含本次运行的文件；失败时删除临时目录，输出目录保持原样。
    """
    output_dir = Path(output_dir).resolve()
    try:
        output_dir.parent.mkdir(parents=True, exist_ok=True)
        staging = Path(tempfile.mkdtemp(prefix=f".{output_dir.name}.tmp-", dir=output_dir.parent))
    except OSError as e:
        raise ReportWriteError(str(output_dir), str(e), e)

    try:
        yield staging
        staging.chmod(0o755)
        _swap_directory(staging, output_dir)
    except OSError as e:
        raise ReportWriteError(str(output_dir), str(e), e)
    finally:
        shutil.rmtree(staging, ignore_errors=True)


def _swap_directory(staging: Path, output_dir: Path):
    if not output_dir.exists():
        os.replace(staging, output_dir)
        return
    if not output_dir.is_dir():
        raise NotADirectoryError(f"输出路径不是目录: {output_dir}")

    retired = output_dir.with_name(f".{output_dir.name}.old-{staging.name.rsplit('-', 1)[-1]}")
    os.replace(output_dir, retired)
    try:
        os.replace(staging, output_dir)
    except OSError:
        os.replace(retired, output_dir)
        raise
    shutil.rmtree(retired, ignore_errors=True)


def _check_output_dir(args):
    """输出目录会被整体替换，输入文件不能位于其中"""
    output_dir = Path(args.output_dir).resolve()
    for name in ('input', 'reference_input', 'config'):
        value = getattr(args, name, None)
        if value and output_dir in Path(value).resolve().parents:
            raise ConfigurationError('output_dir', args.output_dir)


def _ingest_spec(args, config) -> IngestSpec:
    return IngestSpec(
        path=args.input,
        score_column=args.score_col,
        label_column=args.label_col,
        delimiter=config.delimiter,
        cluster_column=args.cluster_col,
        probability_column=args.prob_col,
        feature_columns=_split_columns(args.features),
    )


def cmd_decompose(args, config) -> int:
    """AUC分解与可加指标分解"""
    spec = _ingest_spec(args, config)
    dataset = ingest(spec)

    reference = None
    if args.reference_input:
        reference = ingest(IngestSpec(
            path=args.reference_input,
            score_column=spec.score_column,
            label_column=spec.label_column,
            delimiter=spec.delimiter,
            cluster_column=spec.cluster_column,
            probability_column=spec.probability_column,
            feature_columns=[],
        ))

    report = build_diagnostics_report(dataset, config, spec, reference)

    with staged_output(Path(args.output_dir)) as staging:
        for fmt in ('json', 'csv_matrices', 'svg'):
            emit_report(report, fmt, staging)
        if args.xlsx:
            emit_report(report, 'xlsx', staging)

    decomp = report.auc_decomposition
    lines = [
        f"global_auc {_format(decomp.global_auc)}",
        f"intra_total {_format(decomp.intra_total)}",
        f"inter_total {_format(decomp.inter_total)}",
        f"residual {decomp.residual:.6e}",
        f"global_brier {_format(report.brier.global_value if report.brier else None)}",
        f"global_log_loss {_format(report.log_loss.global_value if report.log_loss else None)}",
    ]
    for criterion, cluster_id in report.worst_clusters.items():
        lines.append(f"worst_{criterion} {cluster_id if cluster_id is not None else 'n/a'}")
    if report.generalization_gap is not None:
        lines.append(f"auc_gap {_format(report.generalization_gap['gap']['auc'])}")
    print('\n'.join(lines))
    return EXIT_OK


def _focus_cluster(dataset, criterion: str, config) -> str:
    if criterion == 'auc':
        decomp = decompose_auc(dataset, config.tie_policy, config.max_workers)
        return worst_cluster(decomp, WorstClusterCriterion.MIN_DIAGONAL_AUC)
    metric = AdditiveMetric.parse(criterion)
    decomp = decompose_additive(dataset, metric, config.clamp_eps)
    return worst_cluster(decomp, WorstClusterCriterion.MAX_METRIC)


def cmd_drift(args, config) -> int:
    """最差簇的特征漂移诊断"""
    spec = _ingest_spec(args, config)
    dataset = ingest(spec)

    if args.focus_cluster is not None:
        focus = args.focus_cluster
    else:
        focus = _focus_cluster(dataset, args.criterion, config)
    logger.info(f"漂移诊断关注簇: {focus}")

    drift = drift_report(dataset, focus, config.num_bins, BinStrategy(config.bin_strategy),
                         config.smoothing_eps, config.max_workers)

    config_echo = config.to_dict()
    config_echo['criterion'] = args.criterion
    config_echo['ingest'] = spec.to_dict()
    with staged_output(Path(args.output_dir)) as staging:
        emit_drift(drift, staging, config_echo, dataset.source.digest, TOOL_VERSION)

    lines = [
        f"focus_cluster {drift.focus_cluster}",
        f"label_rate_focus {_format(drift.label_rate_focus)}",
        f"label_rate_rest {_format(drift.label_rate_rest)}",
        f"label_rate_difference {_format(drift.label_rate_difference)}",
    ]
    for item in drift.sorted_by_psi():
        lines.append(f"feature {item.feature} psi {_format(item.psi)} js {_format(item.js_divergence)}")
    print('\n'.join(lines))
    return EXIT_OK


def cmd_cluster(args, config) -> int:
    """k-means 簇分配"""
    frame, digest = read_table(args.input, config.delimiter)
    if args.cluster_name in frame.columns:
        raise ConfigurationError('cluster_name', args.cluster_name)

    features = _split_columns(args.features)
    if features is None:
        reserved = [args.score_col, args.label_col, args.prob_col] + (_split_columns(args.exclude) or [])
        features = default_feature_columns(frame, reserved)
    else:
        missing = [column for column in features if column not in frame.columns]
        if missing:
            raise ConfigurationError('features', ','.join(missing))
    if not features:
        raise ConfigurationError('features', '')

    rows = list(range(1, len(frame) + 1))
    matrix = np.column_stack([parse_numeric_column(frame[column].to_numpy(), column, rows)
                              for column in features])
    model = kmeans_fit(matrix, config.kmeans_k, config.kmeans_max_iter, config.seed,
                       config.kmeans_tol, feature_names=features)

    output = frame.copy()
    output[args.cluster_name] = [f"C{int(index) + 1}" for index in model.assignments]
    output_name = f"{Path(args.input).stem}_clustered.csv"

    with staged_output(Path(args.output_dir)) as staging:
        write_text(staging / output_name,
                   output.to_csv(index=False, sep=config.delimiter, lineterminator='\n'))
        emit_model(model, staging, {'input_digest': digest, 'version': TOOL_VERSION,
                                    'cluster_column': args.cluster_name})

    sizes = np.bincount(model.assignments, minlength=model.k)
    lines = [f"k {model.k}", f"iterations {model.iterations_run}", f"inertia {_format(model.inertia)}"]
    lines.extend(f"cluster C{i + 1} {int(size)}" for i, size in enumerate(sizes))
    print('\n'.join(lines))
    return EXIT_OK


def _add_common(parser: argparse.ArgumentParser):
    parser.add_argument('--input', required=True, help='输入CSV文件 (须有表头, UTF-8)')
    parser.add_argument('--output-dir', required=True, help='输出目录 (成功时整体替换为本次运行的结果)')
    parser.add_argument('--config', help='JSON配置文件')
    parser.add_argument('--delimiter', help='字段分隔符 (默认 ,)')
    parser.add_argument('--max-workers', type=int, help='并发线程数')
    parser.add_argument('--log-level', choices=['DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'], help='日志级别')
    parser.add_argument('--log-dir', help='日志目录 (默认只输出到控制台)')


def _add_ingest(parser: argparse.ArgumentParser):
    parser.add_argument('--score-col', required=True, help='分数列名')
    parser.add_argument('--label-col', required=True, help='标签列名 (0/1/true/false)')
    parser.add_argument('--cluster-col', help='簇列名 (缺省时全部归入簇 all)')
    parser.add_argument('--prob-col', help='概率列名 (缺省时分数在[0, 1]内则用作概率)')
    parser.add_argument('--features', help='特征列，逗号分隔 (缺省为其余全部数值列)')
    parser.add_argument('--tie-policy', choices=['half', 'strict'], help='同分规则')
    parser.add_argument('--clamp-eps', type=float, help='对数损失截断参数')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='auc-diagnostics', description='分簇AUC分解与漂移诊断工具')
    parser.add_argument('--version', action='version', version=f'%(prog)s {TOOL_VERSION}')
    subparsers = parser.add_subparsers(dest='command', required=True)

    decompose = subparsers.add_parser('decompose', help='AUC簇内/簇间分解')
    _add_common(decompose)
    _add_ingest(decompose)
    decompose.add_argument('--reference-input', help='参考数据 (如训练集)，用于计算泛化差距')
    decompose.add_argument('--xlsx', action='store_true', help='额外输出 report.xlsx')
    decompose.set_defaults(handler=cmd_decompose)

    drift = subparsers.add_parser('drift', help='关注簇的特征漂移诊断')
    _add_common(drift)
    _add_ingest(drift)
    drift.add_argument('--bins', type=int, help='分箱数 (默认 10)')
    drift.add_argument('--bin-strategy', choices=['quantile', 'uniform'], help='分箱策略')
    drift.add_argument('--criterion', choices=CRITERIA, default='auc', help='最差簇准则')
    drift.add_argument('--focus-cluster', help='直接指定关注簇')
    drift.set_defaults(handler=cmd_drift)

    cluster = subparsers.add_parser('cluster', help='k-means 簇分配')
    _add_common(cluster)
    cluster.add_argument('--features', help='参与聚类的特征列，逗号分隔 (缺省为未排除的全部数值列)')
    cluster.add_argument('--score-col', help='分数列名 (缺省特征时排除)')
    cluster.add_argument('--label-col', help='标签列名 (缺省特征时排除)')
    cluster.add_argument('--prob-col', help='概率列名 (缺省特征时排除)')
    cluster.add_argument('--exclude', help='缺省特征时额外排除的列，逗号分隔 (如编号列)')
    cluster.add_argument('--k', type=int, help='簇数')
    cluster.add_argument('--seed', type=int, help='随机种子')
    cluster.add_argument('--max-iter', type=int, help='最大迭代次数')
    cluster.add_argument('--cluster-name', default='cluster', help='追加的簇列名')
    cluster.set_defaults(handler=cmd_cluster)

    return parser


def _load_config(args):
    config = get_config(config_file=args.config)
    if args.config and not Path(args.config).is_file():
        raise ConfigurationError('config', args.config)
    return config.apply_overrides(
        delimiter=args.delimiter,
        max_workers=args.max_workers,
        log_level=args.log_level,
        log_dir=args.log_dir,
        tie_policy=getattr(args, 'tie_policy', None),
        clamp_eps=getattr(args, 'clamp_eps', None),
        num_bins=getattr(args, 'bins', None),
        bin_strategy=getattr(args, 'bin_strategy', None),
        kmeans_k=getattr(args, 'k', None),
        kmeans_max_iter=getattr(args, 'max_iter', None),
        seed=getattr(args, 'seed', None),
    )


def main(argv: Optional[List[str]] = None) -> int:
    """命令行入口，返回退出码"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code is not None else EXIT_OK

    try:
        config = _load_config(args)
        setup_logger(config)
        _check_output_dir(args)
        return args.handler(args, config)
    except DiagnosticsException as e:
        exit_code, message = ErrorHandler.handle(e, logger)
        print(message, file=sys.stderr)
        if exit_code == EXIT_USAGE:
            parser.print_usage(sys.stderr)
        return exit_code


if __name__ == "__main__":
    sys.exit(main())
