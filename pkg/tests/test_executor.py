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
import math

import numpy as np
import pytest

from _core.autodiff import Parameter
from _core.autodiff import ops
from _core.exception import ExecuteError
from _core.exception import NumericalError
from _core.exception import ParamError
from _core.data.sequence import kfold
from _core.executor import bce_loss
from _core.executor import compute_metrics
from _core.executor import cross_validate
from _core.executor import sweep
from _core.executor import train
from _core.executor.cross_validation import prepare_fold
from _core.executor.evaluator import MetricsReport
from _core.executor.evaluator import auc_score
from _core.executor.evaluator import collect_predictions
from _core.executor.evaluator import mean_report
from _core.executor.listener import CollectListener
from _core.model import KnowledgeTracer


def _loss(predictions, labels, mask=None, params=(), l2_lambda=0.0):
    predictions = np.asarray(predictions, dtype=np.float64)
    mask = np.ones_like(predictions) if mask is None else mask
    return float(bce_loss(ops.constant(predictions), labels, mask, params,
                          l2_lambda).data)


def _model(dataset, run_config, seed=None):
    return KnowledgeTracer(run_config.model, dataset.vocab,
                           dataset.discretizer,
                           seed=run_config.seed if seed is None else seed)


def test_bce_hand_values():
    assert _loss([[0.5, 0.5]], [[1.0, 0.0]]) == pytest.approx(math.log(2.0))
    assert _loss([[0.8]], [[1.0]]) == pytest.approx(0.22314, abs=1e-5)
    assert _loss([[1.0, 0.0]], [[1.0, 0.0]]) == pytest.approx(0.0, abs=1e-6)


def test_bce_ignores_padding():
    mask = np.array([[1.0, 0.0]])
    assert _loss([[0.8, 1e-9]], [[1.0, 1.0]], mask) == \
        pytest.approx(-math.log(0.8))


def test_bce_without_predictions():
    loss = bce_loss(None, np.zeros((1, 0)), np.zeros((1, 0)), [])
    assert float(loss.data) == 0.0


def test_bce_weight_decay():
    params = [Parameter(np.array([1.0, 2.0]), name="a"),
              Parameter(np.array([[1.0]]), name="b")]
    plain = _loss([[0.5]], [[1.0]])
    decayed = _loss([[0.5]], [[1.0]], params=params, l2_lambda=0.1)
    assert decayed - plain == pytest.approx(0.6)


def test_metrics_hand_example():
    report = compute_metrics([0.9, 0.2], [1, 0])
    assert report.auc == 1.0
    assert report.acc == 1.0
    assert report.rmse == pytest.approx(0.158113883)
    assert report.r2 == pytest.approx(0.9)
    assert report.n_predictions == 2


def test_metrics_of_exact_predictions():
    labels = np.array([1.0, 0.0, 1.0, 1.0])
    report = compute_metrics(labels, labels)
    assert report.rmse == 0.0
    assert report.r2 == 1.0
    assert report.acc == 1.0


def test_metrics_of_constant_predictor():
    labels = np.array([1, 0] * 50)
    report = compute_metrics(np.full(labels.size, 0.5), labels)
    assert report.auc == 0.5
    assert report.acc == 0.5
    assert report.r2 <= 0.0


def test_metrics_of_single_class():
    report = compute_metrics([0.3, 0.9, 0.6], [1, 1, 1])
    assert report.auc is None
    assert report.r2 is None
    assert report.acc == pytest.approx(2.0 / 3.0)
    assert compute_metrics([], []) == MetricsReport()


def test_auc_of_random_scores():
    rng = np.random.default_rng(11)
    labels = rng.integers(0, 2, 10000)
    assert 0.45 <= auc_score(rng.random(10000), labels) <= 0.55


def test_auc_shares_tied_ranks():
    assert auc_score([0.5, 0.5], [1, 0]) == 0.5
    assert auc_score([0.1, 0.4, 0.35, 0.8], [0, 0, 1, 1]) == 0.75


def test_mean_report_skips_undefined():
    reports = [MetricsReport(auc=0.6, acc=0.5, rmse=0.4, r2=None,
                             n_predictions=10),
               MetricsReport(auc=None, acc=0.7, rmse=0.2, r2=0.1,
                             n_predictions=5)]
    mean = mean_report(reports)
    assert mean.auc == pytest.approx(0.6)
    assert mean.acc == pytest.approx(0.6)
    assert mean.rmse == pytest.approx(0.3)
    assert mean.r2 == pytest.approx(0.1)
    assert mean.n_predictions == 15


def test_collect_predictions_pools_in_order(tiny_dataset, tiny_run_config):
    model = _model(tiny_dataset, tiny_run_config)
    sequences = tiny_dataset.sequences
    predictions, labels = collect_predictions(model, sequences, batch_size=5)
    parallel, parallel_labels = collect_predictions(model, sequences,
                                                    batch_size=5, workers=3)
    expected = sum(max(item.valid_steps - 1, 0) for item in sequences)
    assert predictions.size == labels.size == expected
    assert np.array_equal(predictions, parallel)
    assert np.array_equal(labels, parallel_labels)
    assert set(np.unique(labels)) <= {0.0, 1.0}


def test_training_is_deterministic(tiny_dataset, tiny_run_config):
    runs = []
    for _ in range(2):
        model = _model(tiny_dataset, tiny_run_config)
        result = train(model, tiny_dataset.sequences[:16],
                       tiny_dataset.sequences[16:], tiny_run_config.train,
                       seed=5)
        runs.append((model, result))
    (first, first_result), (second, second_result) = runs
    assert [item.to_dict() for item in first_result.records] == \
        [item.to_dict() for item in second_result.records]
    for name in first.params.names():
        assert np.array_equal(first.params[name].data,
                              second.params[name].data)


def test_zero_learning_rate_keeps_parameters(tiny_dataset, tiny_run_config):
    train_config = copy.deepcopy(tiny_run_config.train)
    train_config.lr = 0.0
    train_config.batch_size = len(tiny_dataset.sequences)
    model = _model(tiny_dataset, tiny_run_config)
    before = model.params.snapshot()
    result = train(model, tiny_dataset.sequences, [], train_config, seed=2)
    for name, value in before.items():
        assert np.array_equal(model.params[name].data, value)
    losses = [record.loss for record in result.records]
    assert len(losses) == train_config.epochs
    assert losses == pytest.approx([losses[0]] * len(losses), rel=1e-12)
    assert all(record.batches == 1 for record in result.records)


def test_training_reports_to_listeners(tiny_dataset, tiny_run_config):
    listener = CollectListener()
    model = _model(tiny_dataset, tiny_run_config)
    result = train(model, tiny_dataset.sequences[:12],
                   tiny_dataset.sequences[12:], tiny_run_config.train,
                   listeners=[listener])
    assert listener.get_records() == result.records
    assert 0 <= result.best_epoch < tiny_run_config.train.epochs
    assert all(record.val_auc is None or 0.0 <= record.val_auc <= 1.0
               for record in result.records)


def test_early_stop_with_stale_validation(tiny_dataset, tiny_run_config):
    train_config = copy.deepcopy(tiny_run_config.train)
    train_config.lr = 0.0
    train_config.epochs = 6
    train_config.patience = 2
    train_config.batch_size = 12
    model = _model(tiny_dataset, tiny_run_config)
    result = train(model, tiny_dataset.sequences[:12],
                   tiny_dataset.sequences[12:], train_config)
    assert result.stopped_early
    assert result.best_epoch == 0
    assert len(result.records) == 3


def test_non_finite_training_stops(tiny_dataset, tiny_run_config):
    model = _model(tiny_dataset, tiny_run_config)
    model.params["W2"].data[...] = np.nan
    with pytest.raises(NumericalError) as error:
        train(model, tiny_dataset.sequences, [], tiny_run_config.train)
    assert "epoch 0 batch 0" in str(error.value)


def test_cross_validation_folds(tiny_dataset, tiny_run_config):
    report = cross_validate(tiny_dataset, tiny_run_config)
    assert [item.fold for item in report.folds] == [0, 1]
    tested = [item.test_students for item in report.folds]
    assert sum(tested) == len(tiny_dataset.students)
    aucs = [item.metrics.auc for item in report.folds
            if item.metrics.auc is not None]
    if aucs:
        assert report.mean.auc == pytest.approx(float(np.mean(aucs)))
    accs = [item.metrics.acc for item in report.folds]
    assert report.mean.acc == pytest.approx(float(np.mean(accs)))
    content = report.to_dict()
    assert len(content["folds"]) == 2
    assert set(content["mean"]) >= {"auc", "acc", "rmse", "r2"}


def test_cross_validation_single_fold(tiny_dataset, tiny_run_config):
    report = cross_validate(tiny_dataset, tiny_run_config, folds=[1])
    assert [item.fold for item in report.folds] == [1]
    assert report.mean.acc == report.folds[0].metrics.acc


def test_fold_statistics_ignore_test_labels(tiny_dataset, tiny_run_config):
    split = kfold(tiny_dataset.students, 2, tiny_run_config.seed,
                  tiny_run_config.train.val_ratio)[0]
    _, table, graph = prepare_fold(tiny_dataset, split, tiny_run_config)
    flipped = copy.deepcopy(tiny_dataset)
    held_out = set(split.test)
    for sequence in flipped.sequences:
        if sequence.student_id in held_out:
            sequence.correct[...] = 1 - sequence.correct
    _, flipped_table, flipped_graph = prepare_fold(flipped, split,
                                                   tiny_run_config)
    assert np.array_equal(table, flipped_table)
    assert np.array_equal(graph.prerequisites, flipped_graph.prerequisites)


def test_cross_validation_wraps_fold_failures(tiny_dataset, tiny_run_config,
                                              monkeypatch):
    def failing_train(*args, **kwargs):
        raise NumericalError("loss is nan")

    monkeypatch.setattr("_core.executor.cross_validation.train",
                        failing_train)
    with pytest.raises(ExecuteError) as error:
        cross_validate(tiny_dataset, tiny_run_config)
    assert "fold 0 failed" in str(error.value)
    assert error.value.error_no == "00140"


def test_sweep_rows(tiny_dataset, tiny_run_config):
    tiny_run_config.train.epochs = 1
    rows = sweep(tiny_dataset, tiny_run_config, "k_window", [0, 2])
    assert [row["value"] for row in rows] == [0, 2]
    for row in rows:
        assert row["parameter"] == "k_window"
        assert set(row) == {"parameter", "value", "auc", "acc", "rmse", "r2"}
    assert tiny_run_config.model.review_window == 3


def test_sweep_rejects_unknown_parameter(tiny_dataset, tiny_run_config):
    with pytest.raises(ParamError):
        sweep(tiny_dataset, tiny_run_config, "d_k", [1])
