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

import copy
from dataclasses import dataclass
from dataclasses import field
from dataclasses import replace

import numpy as np

from _core.data.dataset import student_streams
from _core.data.features import difficulty_table
from _core.data.sequence import kfold
from _core.exception import ExecuteError
from _core.exception import ParamError
from _core.executor.evaluator import MetricsReport
from _core.executor.evaluator import evaluate
from _core.executor.evaluator import mean_report
from _core.executor.trainer import train
from _core.graph.prerequisite import build_concept_graph
from _core.interface import LifeCycle
from _core.logger import platform_logger
from _core.model.model import KnowledgeTracer
from _core.utils import get_instance_name

__all__ = ["FoldResult", "CrossValidationReport", "prepare_fold",
           "run_fold", "cross_validate", "sweep", "SWEEP_PARAMETERS"]

LOG = platform_logger("CrossValidation")

# sweep name -> model config attribute
SWEEP_PARAMETERS = {"k_window": "review_window", "gamma": "gamma"}


@dataclass
class FoldResult:
    fold: int
    metrics: MetricsReport
    best_epoch: int
    train_students: int
    val_students: int
    test_students: int
    model: object = None
    train_result: object = None
    graph: object = None

    def to_dict(self):
        content = {"fold": self.fold, "epoch": self.best_epoch,
                   "train_students": self.train_students,
                   "val_students": self.val_students,
                   "test_students": self.test_students}
        content.update(self.metrics.to_dict())
        return content


@dataclass
class CrossValidationReport:
    folds: list = field(default_factory=list)
    mean: MetricsReport = field(default_factory=MetricsReport)

    def to_dict(self):
        return {"folds": [item.to_dict() for item in self.folds],
                "mean": self.mean.to_dict()}


def prepare_fold(dataset, split, run_config):
    """
    Fold-local statistics: the difficulty table and the concept graph
    only read the training students.
    """
    train_sequences = dataset.select(split.train)
    if not train_sequences:
        raise ParamError("fold %d has no training students" % split.fold,
                         error_no="00115")
    exercises = np.concatenate([item.valid("exercise")
                                for item in train_sequences])
    corrects = np.concatenate([item.valid("correct")
                               for item in train_sequences])
    table = difficulty_table(exercises, corrects,
                             dataset.vocab.num_exercises,
                             dataset.discretizer.difficulty_buckets)
    graph = build_concept_graph(student_streams(train_sequences),
                                dataset.vocab.num_concepts,
                                run_config.graph.threshold_power)
    return train_sequences, table, graph


def run_fold(dataset, split, run_config, listeners=None):
    train_sequences, table, graph = prepare_fold(dataset, split, run_config)
    seed = run_config.seed + split.fold
    model = KnowledgeTracer(run_config.model, dataset.vocab,
                            dataset.discretizer,
                            prerequisites=graph.prerequisites,
                            difficulty=table, seed=seed)
    result = train(model, train_sequences, dataset.select(split.val),
                   run_config.train, seed=seed, fold=split.fold,
                   listeners=listeners)
    metrics = evaluate(model, dataset.select(split.test),
                       run_config.train.batch_size,
                       run_config.train.workers)
    LOG.info("Fold evaluated", fold=split.fold, auc=metrics.auc,
             acc=metrics.acc, predictions=metrics.n_predictions)
    return FoldResult(fold=split.fold, metrics=metrics,
                      best_epoch=result.best_epoch,
                      train_students=len(split.train),
                      val_students=len(split.val),
                      test_students=len(split.test), model=model,
                      train_result=result, graph=graph)


def cross_validate(dataset, run_config, listeners=None, folds=None):
    """
    Student-level k-fold train and evaluate. folds restricts the run to
    the given fold indices; the mean covers the folds that ran.
    """
    listeners = listeners or []
    train_config = run_config.train
    splits = kfold(dataset.students, train_config.folds, run_config.seed,
                   train_config.val_ratio)
    if folds is None:
        folds = [train_config.fold] if train_config.fold >= 0 else \
            range(len(splits))
    for listener in listeners:
        listener.__started__(LifeCycle.Run,
                             {"students": len(dataset.students),
                              "folds": len(splits)})
    results = []
    for index in folds:
        split = splits[index]
        try:
            results.append(run_fold(dataset, split, run_config, listeners))
        except Exception as error:
            raise ExecuteError("fold %d failed: %s: %s" % (
                split.fold, get_instance_name(error), error),
                error_no=getattr(error, "error_no", "") or "00150") \
                from error
    report = CrossValidationReport(
        folds=results, mean=mean_report([item.metrics for item in results]))
    for listener in listeners:
        listener.__ended__(LifeCycle.Run, {"folds": len(results)},
                           report=report)
    return report


def sweep(dataset, run_config, parameter, values, listeners=None):
    """
    Cross-validates once per value of a model hyper-parameter and returns
    rows of (parameter, value, auc, acc, rmse, r2) from the fold means.
    """
    if parameter not in SWEEP_PARAMETERS:
        raise ParamError("cannot sweep '%s', expected one of %s" % (
            parameter, sorted(SWEEP_PARAMETERS)), error_no="00115")
    rows = []
    for value in values:
        config = copy.deepcopy(run_config)
        config.model = replace(config.model,
                               **{SWEEP_PARAMETERS[parameter]: value})
        config.model.validate()
        LOG.info("Sweep point", parameter=parameter, value=value)
        report = cross_validate(dataset, config, listeners)
        row = {"parameter": parameter, "value": value}
        row.update({name: getattr(report.mean, name)
                    for name in ("auc", "acc", "rmse", "r2")})
        rows.append(row)
    return rows
