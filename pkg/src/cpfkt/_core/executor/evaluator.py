#!/usr/bin/env python3
# coding=utf-8

#
# Copyright (c) 2026 The cpfkt Authors.
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
#

from dataclasses import asdict
from dataclasses import dataclass

import numpy as np
import pandas as pd

from _core.executor.concurrent import Concurrent
from _core.logger import platform_logger
from _core.model.cell import predict_correct

__all__ = ["MetricsReport", "auc_score", "compute_metrics",
           "collect_predictions", "evaluate", "mean_report"]

LOG = platform_logger("Evaluator")

_METRICS = ("auc", "acc", "rmse", "r2")


@dataclass
class MetricsReport:
    auc: float = None
    acc: float = None
    rmse: float = None
    r2: float = None
    n_predictions: int = 0

    def to_dict(self):
        return asdict(self)


def auc_score(predictions, labels):
    """
    Mann-Whitney AUC with tied scores sharing their average rank; None
    when only one class is present.
    """
    predictions = np.asarray(predictions, dtype=np.float64)
    labels = np.asarray(labels).astype(bool)
    positives = int(labels.sum())
    negatives = int(labels.size - positives)
    if positives == 0 or negatives == 0:
        return None
    ranks = pd.Series(predictions).rank(method="average").to_numpy()
    rank_sum = ranks[labels].sum()
    return float((rank_sum - positives * (positives + 1) / 2.0) /
                 (positives * negatives))


def compute_metrics(predictions, labels):
    predictions = np.asarray(predictions, dtype=np.float64).reshape(-1)
    labels = np.asarray(labels, dtype=np.float64).reshape(-1)
    count = int(predictions.size)
    if count == 0:
        return MetricsReport()
    residual = predictions - labels
    ss_res = float(np.sum(np.square(residual)))
    ss_tot = float(np.sum(np.square(labels - labels.mean())))
    return MetricsReport(
        auc=auc_score(predictions, labels),
        acc=float(np.mean(predict_correct(predictions) == labels.astype(
            bool))),
        rmse=float(np.sqrt(ss_res / count)),
        r2=1.0 - ss_res / ss_tot if ss_tot > 0 else None,
        n_predictions=count)


def _predict_chunk(model, sequences):
    result = model.forward(model.make_batch(sequences), training=False)
    return result.valid_predictions(), result.valid_labels()


def collect_predictions(model, sequences, batch_size=128, workers=1):
    """
    Pooled (predictions, labels) over every valid step of the sequences,
    in sequence order.
    """
    chunks = [(model, sequences[start:start + batch_size])
              for start in range(0, len(sequences), batch_size)]
    if not chunks:
        return np.zeros(0), np.zeros(0)
    results = Concurrent.concurrent_execute(_predict_chunk, chunks,
                                            max_size=workers)
    predictions = np.concatenate([item[0] for item in results])
    labels = np.concatenate([item[1] for item in results])
    return predictions, labels


def evaluate(model, sequences, batch_size=128, workers=1):
    predictions, labels = collect_predictions(model, sequences, batch_size,
                                              workers)
    report = compute_metrics(predictions, labels)
    if report.n_predictions and report.auc is None:
        LOG.warning("Labels hold a single class, AUC is undefined",
                    predictions=report.n_predictions)
    return report


def mean_report(reports):
    """
    Arithmetic mean of each metric over the reports that define it.
    """
    values = {}
    for name in _METRICS:
        defined = [getattr(report, name) for report in reports
                   if getattr(report, name) is not None]
        values[name] = float(np.mean(defined)) if defined else None
    return MetricsReport(n_predictions=int(sum(
        report.n_predictions for report in reports)), **values)
