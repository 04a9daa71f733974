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

from dataclasses import dataclass
from dataclasses import field

import numpy as np

from _core.autodiff import ops
from _core.constants import CellType
from _core.data.features import default_difficulty
from _core.data.sequence import SequenceBatch
from _core.exception import ParamError
from _core.graph.forgetting import ForgettingParams
from _core.graph.forgetting import batch_forgetting_weights
from _core.graph.prerequisite import prerequisite_weights
from _core.logger import platform_logger
from _core.model.cell import identity
from _core.model.params import ModelDims
from _core.model.params import ModelParams
from _core.plugin import Plugin
from _core.plugin import get_plugin
from _core.plugin import registered_ids

__all__ = ["KnowledgeTracer", "ForwardResult"]

LOG = platform_logger("Model")


@dataclass
class ForwardResult:
    """
    predictions[:, t] is the probability for step t + 1 of every window,
    made from the state after step t. mask marks the pairs that count.
    """
    predictions: object
    labels: np.ndarray
    mask: np.ndarray
    traces: list = field(default_factory=list)

    @property
    def count(self):
        return int(self.mask.sum())

    def valid_predictions(self):
        values = self.predictions.data if self.predictions is not None \
            else np.zeros(self.mask.shape)
        return values[self.mask.astype(bool)]

    def valid_labels(self):
        return self.labels[self.mask.astype(bool)]


class KnowledgeTracer:
    """
    Owns the parameters, the enhanced Q-matrix, the prerequisite matrix and
    the cell plugin selected by config.mode.
    """

    def __init__(self, config, vocab, discretizer, prerequisites=None,
                 difficulty=None, seed=0):
        config.validate()
        self.config = config
        self.vocab = vocab
        self.discretizer = discretizer
        self.seed = seed
        self.dims = ModelDims(
            num_exercises=vocab.num_exercises,
            num_concepts=vocab.num_concepts,
            answer_vocab=discretizer.answer_vocab,
            interval_vocab=discretizer.interval_vocab,
            difficulty_buckets=discretizer.difficulty_buckets,
            accuracy_buckets=discretizer.accuracy_buckets)
        self.q_entries = vocab.q_matrix(config.gamma).entries
        self.forgetting = ForgettingParams(delta=config.delta,
                                           lambda_=config.lambda_)
        self.prerequisites = None
        self.prerequisite_weights = None
        self.set_prerequisites(prerequisites)
        self.difficulty = None
        if difficulty is not None:
            self.set_difficulty(difficulty)

        cells = get_plugin(Plugin.CELL, config.mode)
        if not cells:
            raise ParamError("no cell registered for mode '%s', known: %s" % (
                config.mode, registered_ids(Plugin.CELL)), error_no="00115")
        self.cell = cells[0]
        self.rng = np.random.default_rng(seed)
        self.params = ModelParams.allocate(self.cell.__shapes__(self),
                                           self.rng)
        LOG.debug("Model allocated", mode=config.mode,
                  ablation=config.ablation, blocks=len(self.params),
                  weights=sum(param.size for param in self.params))

    def set_prerequisites(self, prerequisites):
        num_concepts = self.vocab.num_concepts
        if prerequisites is None:
            prerequisites = np.zeros((num_concepts, num_concepts))
        prerequisites = np.asarray(prerequisites, dtype=np.float64)
        if prerequisites.shape != (num_concepts, num_concepts):
            raise ParamError("P-matrix shape %s does not match %d concepts" %
                             (prerequisites.shape, num_concepts),
                             error_no="00120")
        self.prerequisites = prerequisites
        self.prerequisite_weights = prerequisite_weights(prerequisites,
                                                         self.config.rho)

    def set_difficulty(self, table):
        table = np.asarray(table, dtype=np.int64)
        if table.shape != (self.vocab.num_exercises,):
            raise ParamError("difficulty table covers %d exercises, expected "
                             "%d" % (table.shape[0],
                                     self.vocab.num_exercises),
                             error_no="00120")
        self.difficulty = table

    def difficulty_table(self):
        if self.difficulty is not None:
            return self.difficulty
        return np.full(self.vocab.num_exercises,
                       default_difficulty(self.discretizer.difficulty_buckets),
                       dtype=np.int64)

    def dropout_fn(self, training):
        rate = self.config.dropout
        if not training or rate <= 0.0:
            return identity
        return lambda value: ops.dropout(value, rate, self.rng, training)

    def make_batch(self, sequences):
        if self.difficulty is not None:
            sequences = [sequence.with_difficulty(self.difficulty)
                         for sequence in sequences]
        batch = SequenceBatch.from_sequences(sequences)
        if self.config.mode == CellType.cpf:
            batch.forgetting_weight = batch_forgetting_weights(
                batch, self.prerequisites, self.forgetting)
        else:
            batch.forgetting_weight = np.ones(batch.exercise.shape)
        return batch

    def forward(self, batch, training=False, keep_traces=False):
        """
        Runs the cell over the longest valid prefix in the batch and
        predicts every step from the state before it.
        """
        if not isinstance(batch, SequenceBatch):
            batch = self.make_batch(batch)
        length = int(batch.mask.sum(axis=1).max()) if batch.size else 0
        labels = batch.correct[:, 1:length]
        mask = batch.mask[:, 1:length] * batch.mask[:, :max(length - 1, 0)]
        if length < 2:
            return ForwardResult(None, labels, mask)

        carry = self.cell.__begin__(self, batch)
        predictions = []
        traces = []
        for step in range(length - 1):
            carry, trace = self.cell.__step__(self, batch, step, carry,
                                              training=training)
            prediction = self.cell.__predict__(self, batch, step + 1, carry)
            predictions.append(prediction)
            if keep_traces:
                trace.prediction = prediction.data.copy()
                traces.append(trace)
        return ForwardResult(ops.stack(predictions, axis=1), labels, mask,
                             traces)

    def forward_sequence(self, sequence):
        """
        Predictions for steps 2..T of one window and the trace of every
        step that produced one.
        """
        result = self.forward([sequence], keep_traces=True)
        valid = result.mask[0].astype(bool) if result.mask.size else \
            np.zeros(0, dtype=bool)
        predictions = result.predictions.data[0][valid] \
            if result.predictions is not None else np.zeros(0)
        traces = [trace for trace, keep in zip(result.traces, valid) if keep]
        return predictions, traces
