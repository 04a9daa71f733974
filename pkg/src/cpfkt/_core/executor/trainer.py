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

import time
from dataclasses import asdict
from dataclasses import dataclass
from dataclasses import field

import numpy as np

from _core.autodiff import Adam
from _core.autodiff import Tape
from _core.executor.evaluator import MetricsReport
from _core.executor.evaluator import evaluate
from _core.executor.loss import bce_loss
from _core.exception import NumericalError
from _core.interface import LifeCycle
from _core.logger import platform_logger

__all__ = ["EpochRecord", "TrainResult", "train", "train_step",
           "make_optimizer"]

LOG = platform_logger("Trainer")


@dataclass
class EpochRecord:
    fold: int
    epoch: int
    loss: float
    batches: int
    grad_norm: float
    val_auc: float = None
    val_acc: float = None
    val_rmse: float = None
    val_r2: float = None

    def to_dict(self):
        return asdict(self)


@dataclass
class TrainResult:
    fold: int
    best_epoch: int
    best_score: float
    stopped_early: bool
    optimizer: object = None
    records: list = field(default_factory=list)

    @property
    def final_loss(self):
        return self.records[-1].loss if self.records else None


def make_optimizer(model, train_config):
    return Adam(model.params, lr=train_config.lr, beta1=train_config.beta1,
                beta2=train_config.beta2, eps=train_config.eps,
                weight_decay=train_config.weight_decay,
                clip_norm=train_config.clip_norm)


def train_step(model, optimizer, sequences, l2_lambda, training=True):
    """
    One mini-batch: forward on the tape, backward, Adam update.
    Returns (loss, gradient norm before clipping).
    """
    model.params.zero_grad()
    with Tape() as tape:
        result = model.forward(model.make_batch(sequences),
                               training=training)
        loss = bce_loss(result.predictions, result.labels, result.mask,
                        model.params, l2_lambda)
    value = loss.item()
    if not np.isfinite(value):
        tape.reset()
        raise NumericalError("non-finite loss %s" % value)
    tape.backward(loss)
    return value, optimizer.step()


def _notify(listeners, method, *args, **kwargs):
    for listener in listeners:
        getattr(listener, method)(*args, **kwargs)


def train(model, train_sequences, val_sequences, train_config, seed=0,
          fold=0, listeners=None, training=True):
    """
    Mini-batch Adam over seeded shuffles of the training windows. The
    parameters with the best validation AUC are restored at the end;
    without a validation set the lowest training loss decides.
    """
    listeners = listeners or []
    optimizer = make_optimizer(model, train_config)
    rng = np.random.default_rng(seed)
    batch_size = train_config.batch_size
    records = []
    best = TrainResult(fold=fold, best_epoch=-1, best_score=-np.inf,
                       stopped_early=False, optimizer=optimizer,
                       records=records)
    best_snapshot = model.params.snapshot()
    stale = 0
    _notify(listeners, "__started__", LifeCycle.Fold,
            {"fold": fold, "train_windows": len(train_sequences),
             "val_windows": len(val_sequences)})
    for epoch in range(train_config.epochs):
        start_time = time.time()
        order = rng.permutation(len(train_sequences))
        losses, norms = [], []
        for batch_id, start in enumerate(range(0, len(order), batch_size)):
            chunk = [train_sequences[index]
                     for index in order[start:start + batch_size]]
            try:
                loss, grad_norm = train_step(model, optimizer, chunk,
                                             train_config.l2_lambda,
                                             training=training)
            except NumericalError as error:
                raise NumericalError("epoch %d batch %d: %s" % (
                    epoch, batch_id, error)) from error
            losses.append(loss)
            norms.append(grad_norm)

        metrics = evaluate(model, val_sequences, batch_size,
                           train_config.workers) if val_sequences \
            else MetricsReport()
        record = EpochRecord(
            fold=fold, epoch=epoch,
            loss=float(np.mean(losses)) if losses else 0.0,
            batches=len(losses),
            grad_norm=float(np.max(norms)) if norms else 0.0,
            val_auc=metrics.auc, val_acc=metrics.acc,
            val_rmse=metrics.rmse, val_r2=metrics.r2)
        records.append(record)
        LOG.debug("Epoch finished", fold=fold, epoch=epoch,
                  seconds="%.2f" % (time.time() - start_time))
        _notify(listeners, "__epoch__", record)

        score = metrics.auc if metrics.auc is not None else -record.loss
        if score > best.best_score:
            best.best_score, best.best_epoch = score, epoch
            best_snapshot = model.params.snapshot()
            stale = 0
        else:
            stale += 1
            if stale >= train_config.patience:
                best.stopped_early = True
                LOG.info("Early stop", fold=fold, epoch=epoch,
                         best_epoch=best.best_epoch)
                break

    model.params.restore(best_snapshot)
    _notify(listeners, "__ended__", LifeCycle.Fold,
            {"fold": fold, "best_epoch": best.best_epoch}, result=best)
    return best
