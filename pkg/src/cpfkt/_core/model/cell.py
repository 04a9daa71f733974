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

"""
Building blocks of the recurrent knowledge-tracing cells. Every function
works on a batch: vectors are (B, d), knowledge states (B, K, d) and
Q-matrix rows (B, K).
"""

from dataclasses import dataclass

import numpy as np

from _core.autodiff import ops
from _core.constants import AblationType
from _core.constants import ActivationType
from _core.constants import ReviewMode

__all__ = ["StepTrace", "student_ability", "learning_embedding",
           "learning_gain", "prerequisite_vector", "review_attention",
           "forgetting_gate", "update_state", "predict_next",
           "predict_correct", "lpkt_embedding", "lpkt_step", "lpkt_predict",
           "exercise_embedding", "identity", "PREDICTION_FLOOR"]

PREDICTION_FLOOR = 1e-7


def identity(value):
    return value


@dataclass
class StepTrace:
    pooled_norm: np.ndarray
    gain: np.ndarray
    forgetting_weight: np.ndarray
    learning_gate_mean: np.ndarray
    forgetting_gate_mean: np.ndarray
    prediction: np.ndarray = None


def student_ability(df_index, ac_index, at_index, params, config):
    """
    s = alpha * df + beta * ac + mu * at; a shared zero vector when the
    personalization is ablated.
    """
    if config.ablation == AblationType.no_personalization:
        return ops.constant(np.zeros((len(df_index), config.d)))
    return ops.take(params["df"], df_index) * config.alpha + \
        ops.take(params["ac"], ac_index) * config.beta + \
        ops.take(params["at"], at_index) * config.mu


def exercise_embedding(e_index, c_index, params):
    return ops.concat([ops.take(params["e"], e_index),
                       ops.take(params["c"], c_index)])


def learning_embedding(e_index, c_index, correct, ability, params):
    """
    Returns (l~, e~) with e~ = e (+) c and l~ = W1 [e~ (+) a (+) s] + b1.
    """
    combined = exercise_embedding(e_index, c_index, params)
    answer = ops.take(params["a"], correct)
    learning = ops.linear(ops.concat([combined, answer, ability]),
                          params["W1"], params["b1"])
    return learning, combined


def learning_gain(learning, h_prev, q_row, p_vec, params, config,
                  dropout=identity):
    """
    Returns (LG, LG~, pooled h~, learning gate).

    LG = gate * (tanh(..) + 1) / 2 + r where r is the normalized norm of
    sigmoid(p (+) h~), dropped under the learning-module ablation.
    """
    pooled = ops.pool(q_row, h_prev)
    gate_input = dropout(ops.concat([learning, pooled]))
    gain = ops.activate(ops.linear(gate_input, params["W2"], params["b2"]),
                        ActivationType.tanh)
    gate = ops.activate(ops.linear(gate_input, params["W3"], params["b3"]),
                        ActivationType.sigmoid)
    scaled_gain = gate * ((gain + 1.0) * 0.5)
    if config.ablation != AblationType.no_learning_module:
        review = ops.norm(ops.sigmoid(ops.concat([p_vec, pooled]))) * \
            (1.0 / np.sqrt(2.0 * config.d))
        scaled_gain = scaled_gain + review
    return scaled_gain, ops.outer(q_row, scaled_gain), pooled, gate


def prerequisite_vector(concept_index, weights, params):
    """
    Weighted mean of concept embeddings over the prerequisites of each
    concept; weights comes from prerequisite_weights().
    """
    rows = ops.constant(weights[np.asarray(concept_index, dtype=np.int64)])
    return ops.matmul(rows, params["c"])


def review_attention(history, window, mode, shape):
    """
    history holds pooled states oldest first, the last entry being the
    current one. Attention compares the latest `window` entries with the
    current state by cosine similarity.
    """
    if window <= 0 or not history:
        return ops.constant(np.zeros(shape))
    latest = history[-1]
    if mode == ReviewMode.literal:
        # softmax weights sum to 1, so the weighted copies of the latest
        # state collapse to the state itself
        return latest
    keys = ops.stack(history[-window:], axis=1)
    query = ops.reshape(latest, (shape[0], 1, shape[1]))
    weights = ops.softmax(ops.cosine(keys, query), axis=-1)
    return ops.pool(weights, keys)


def _rows(vector, num_concepts):
    batch, width = vector.shape
    return ops.expand(ops.reshape(vector, (batch, 1, width)),
                      (batch, num_concepts, width))


def forgetting_gate(h_prev, causal_gain, interval, ability, review, params,
                    dropout=identity):
    num_concepts = h_prev.shape[1]
    gate_input = ops.concat([h_prev,
                             _rows(causal_gain, num_concepts),
                             _rows(interval, num_concepts),
                             _rows(ability, num_concepts),
                             _rows(review, num_concepts)])
    return ops.sigmoid(ops.linear(dropout(gate_input), params["W4"],
                                  params["b4"]))


def update_state(h_prev, gain_matrix, gate):
    return gain_matrix + gate * h_prev


def _bounded_sigmoid(logits):
    return ops.clip(ops.sigmoid(logits), PREDICTION_FLOOR,
                    1.0 - PREDICTION_FLOOR)


def predict_next(h_t, next_exercise, next_concept, q_next, params):
    """
    y = sigmoid(W5 [e~_{t+1} (+) q_{t+1} . h_t] + b5), shape (B,).
    Kept inside [PREDICTION_FLOOR, 1 - PREDICTION_FLOOR].
    """
    combined = exercise_embedding(next_exercise, next_concept, params)
    pooled = ops.pool(q_next, h_t)
    logits = ops.linear(ops.concat([combined, pooled]), params["W5"],
                        params["b5"])
    return ops.reshape(_bounded_sigmoid(logits), (h_t.shape[0],))


def predict_correct(prediction, threshold=0.5):
    return np.asarray(prediction) > threshold


def lpkt_embedding(e_index, at_index, correct, params):
    """
    l = W1 [e (+) at (+) a] + b1
    """
    return ops.linear(ops.concat([ops.take(params["e"], e_index),
                                  ops.take(params["at"], at_index),
                                  ops.take(params["a"], correct)]),
                      params["W1"], params["b1"])


def lpkt_step(l_prev, learning, interval, h_prev, q_row, params,
              dropout=identity):
    """
    Baseline update: gated learning gain from the previous and current
    learning embeddings, then a forgetting gate over h, LG and the interval.
    Returns (h_t, LG, learning gate, forgetting gate, pooled h~).
    """
    num_concepts = h_prev.shape[1]
    pooled = ops.pool(q_row, h_prev)
    gate_input = dropout(ops.concat([l_prev, interval, learning, pooled]))
    gain = ops.tanh(ops.linear(gate_input, params["W2"], params["b2"]))
    gate = ops.sigmoid(ops.linear(gate_input, params["W3"], params["b3"]))
    scaled_gain = gate * ((gain + 1.0) * 0.5)
    forget_input = ops.concat([h_prev, _rows(scaled_gain, num_concepts),
                               _rows(interval, num_concepts)])
    forget = ops.sigmoid(ops.linear(dropout(forget_input), params["W4"],
                                    params["b4"]))
    h_t = update_state(h_prev, ops.outer(q_row, scaled_gain), forget)
    return h_t, scaled_gain, gate, forget, pooled


def lpkt_predict(h_t, next_exercise, q_next, params):
    pooled = ops.pool(q_next, h_t)
    logits = ops.linear(ops.concat([ops.take(params["e"], next_exercise),
                                    pooled]), params["W5"], params["b5"])
    return ops.reshape(_bounded_sigmoid(logits), (h_t.shape[0],))
