#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
生成合成欺诈数据脚本
写出带分数、标签、簇和特征列的CSV，可直接用于 decompose / drift 子命令
"""

import sys
import os
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import argparse

from utils.exceptions import DiagnosticsException
from utils.synthetic import generate_synthetic_fraud


def main():
    """主函数"""
    parser = argparse.ArgumentParser(description='生成合成欺诈评分数据')
    parser.add_argument('--output', type=str, required=True, help='输出CSV路径')
    parser.add_argument('--n', type=int, default=5000, help='样本数')
    parser.add_argument('--k', type=int, default=4, help='簇数')
    parser.add_argument('--fraud-rate', type=float, default=0.03, help='正常簇的欺诈率')
    parser.add_argument('--seed', type=int, default=0, help='随机种子')
    parser.add_argument('--no-cluster', action='store_true', help='不输出簇列 (用于演示 cluster 子命令)')

    args = parser.parse_args()

    try:
        frame = generate_synthetic_fraud(args.n, args.k, args.fraud_rate, args.seed)
    except DiagnosticsException as e:
        print(f"✗ {e}")
        sys.exit(2)

    os.makedirs(os.path.dirname(os.path.abspath(args.output)), exist_ok=True)
    if args.no_cluster:
        frame = frame.drop(columns=['cluster'])
    frame.to_csv(args.output, index=False, lineterminator='\n')

    print(f"✓ 已生成 {len(frame)} 行: {args.output}")
    print(f"  欺诈样本: {int(frame['label'].sum())}")


if __name__ == "__main__":
    main()
