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

import numpy as np

from _core.autodiff import ops
from _core.constants import AblationType
from _core.constants import CellType
from _core.exception import NumericalError
from _core.interface import ICell
from _core.model.cell import StepTrace
from _core.model.cell import forgetting_gate
from _core.model.cell import learning_embedding
from _core.model.cell import learning_gain
from _core.model.cell import lpkt_embedding
from _core.model.cell import lpkt_predict
from _core.model.cell import lpkt_step
from _core.model.cell import predict_next
from _core.model.cell import prerequisite_vector
from _core.model.cell import review_attention
from _core.model.cell import student_ability
from _core.model.cell import update_state
from _core.plugin import Plugin

__all__ = ["CpfCell", "LpktCell"]


def _check_state(state, step):
    if not np.all(np.isfinite(state.data)):
        raise NumericalError("non-finite knowledge state at step %d" % step)


def _gate_means(gate, batch_size):
    return gate.data.reshape(batch_size, -1).mean(axis=1)


@Plugin(type=Plugin.CELL, id=CellType.cpf)
class CpfCell(ICell):
    """
    Personalized learning gain with causal forgetting and review attention.
    """

    def __shapes__(self, model):
        d, d_a, dims = model.config.d, model.config.d_a, model.dims
        return [
            ("e", (dims.num_exercises, d), "embedding"),
            ("c", (dims.num_concepts, d), "embedding"),
            ("a", (2, d_a), "embedding"),
            ("at", (dims.answer_vocab, d), "embedding"),
            ("it", (dims.interval_vocab, d), "embedding"),
            ("df", (dims.difficulty_buckets, d), "embedding"),
            ("ac", (dims.accuracy_buckets, d), "embedding"),
            ("W1", (2 * d + d_a + d, d), "weight"),
            ("b1", (d,), "bias"),
            ("W2", (2 * d, d), "weight"),
            ("b2", (d,), "bias"),
            ("W3", (2 * d, d), "weight"),
            ("b3", (d,), "bias"),
            ("W4", (5 * d, d), "weight"),
            ("b4", (d,), "bias"),
            ("W5", (3 * d, 1), "weight"),
            ("b5", (1,), "bias"),
        ]

    def __begin__(self, model, batch):
        return {"h": ops.constant(np.zeros((batch.size,
                                            model.dims.num_concepts,
                                            model.config.d))),
                "history": []}

    def __step__(self, model, batch, step, carry, training=False):
        config, params = model.config, model.params
        size = batch.size
        dropout = model.dropout_fn(training)
        exercise = batch.exercise[:, step]
        concept = batch.concept[:, step]
        q_row = ops.constant(model.q_entries[exercise])
        h_prev = carry["h"]

        ability = student_ability(batch.difficulty[:, step],
                                  batch.accuracy[:, step],
                                  batch.answer_bucket[:, step], params,
                                  config)
        learning_ability = ability
        if config.ablation == AblationType.no_learning_module:
            learning_ability = ops.constant(np.zeros((size, config.d)))
        learning, _ = learning_embedding(exercise, concept,
                                         batch.correct[:, step],
                                         learning_ability, params)
        learning = dropout(learning)

        if config.ablation == AblationType.no_p_matrix:
            p_vec = ops.constant(np.zeros((size, config.d)))
        else:
            p_vec = prerequisite_vector(concept, model.prerequisite_weights,
                                        params)
        gain, gain_matrix, pooled, learn_gate = learning_gain(
            learning, h_prev, q_row, p_vec, params, config, dropout)

        history = carry["history"]
        if step >= 1:
            history.append(pooled)
        review = review_attention(history, config.review_window,
                                  config.review_mode, (size, config.d))

        if config.ablation in (AblationType.no_p_matrix,
                               AblationType.no_forgetting):
            weight = np.ones(size)
        else:
            weight = batch.forgetting_weight[:, step]
        causal_gain = gain * ops.constant(weight.reshape(size, 1))

        if config.ablation == AblationType.no_forgetting:
            forget = ops.constant(np.ones(h_prev.shape))
        else:
            forget = forgetting_gate(
                h_prev, causal_gain,
                ops.take(params["it"], batch.interval_bucket[:, step]),
                ability, review, params, dropout)
        h_t = update_state(h_prev, gain_matrix, forget)
        _check_state(h_t, step)

        carry["h"] = h_t
        trace = StepTrace(
            pooled_norm=np.linalg.norm(pooled.data, axis=-1),
            gain=gain.data.copy(),
            forgetting_weight=np.asarray(weight, dtype=np.float64).copy(),
            learning_gate_mean=_gate_means(learn_gate, size),
            forgetting_gate_mean=_gate_means(forget, size))
        return carry, trace

    def __predict__(self, model, batch, step, carry):
        exercise = batch.exercise[:, step]
        return predict_next(carry["h"], exercise, batch.concept[:, step],
                            ops.constant(model.q_entries[exercise]),
                            model.params)


@Plugin(type=Plugin.CELL, id=CellType.lpkt)
class LpktCell(ICell):
    """
    Learning-process baseline: no ability vector, prerequisite graph or
    review.
    """

    def __shapes__(self, model):
        d, d_a, dims = model.config.d, model.config.d_a, model.dims
        return [
            ("e", (dims.num_exercises, d), "embedding"),
            ("a", (2, d_a), "embedding"),
            ("at", (dims.answer_vocab, d), "embedding"),
            ("it", (dims.interval_vocab, d), "embedding"),
            ("W1", (d + d + d_a, d), "weight"),
            ("b1", (d,), "bias"),
            ("W2", (4 * d, d), "weight"),
            ("b2", (d,), "bias"),
            ("W3", (4 * d, d), "weight"),
            ("b3", (d,), "bias"),
            ("W4", (3 * d, d), "weight"),
            ("b4", (d,), "bias"),
            ("W5", (2 * d, 1), "weight"),
            ("b5", (1,), "bias"),
        ]

    def __begin__(self, model, batch):
        return {"h": ops.constant(np.zeros((batch.size,
                                            model.dims.num_concepts,
                                            model.config.d))),
                "l": ops.constant(np.zeros((batch.size, model.config.d)))}

    def __step__(self, model, batch, step, carry, training=False):
        params = model.params
        size = batch.size
        dropout = model.dropout_fn(training)
        exercise = batch.exercise[:, step]
        learning = dropout(lpkt_embedding(exercise,
                                          batch.answer_bucket[:, step],
                                          batch.correct[:, step], params))
        interval = ops.take(params["it"], batch.interval_bucket[:, step])
        h_t, gain, learn_gate, forget, pooled = lpkt_step(
            carry["l"], learning, interval, carry["h"],
            ops.constant(model.q_entries[exercise]), params, dropout)
        _check_state(h_t, step)
        carry["h"], carry["l"] = h_t, learning
        trace = StepTrace(
            pooled_norm=np.linalg.norm(pooled.data, axis=-1),
            gain=gain.data.copy(),
            forgetting_weight=np.ones(size),
            learning_gate_mean=_gate_means(learn_gate, size),
            forgetting_gate_mean=_gate_means(forget, size))
        return carry, trace

    def __predict__(self, model, batch, step, carry):
        exercise = batch.exercise[:, step]
        return lpkt_predict(carry["h"], exercise,
                            ops.constant(model.q_entries[exercise]),
                            model.params)
