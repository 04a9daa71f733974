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

import math
from dataclasses import dataclass

import numpy as np

__all__ = ["ForgettingParams", "nearest_prerequisite_step",
           "forgetting_weight", "batch_forgetting_weights"]

SECONDS_PER_DAY = 86400.0


@dataclass
class ForgettingParams:
    delta: float = 2.0
    lambda_: float = 0.0
    seconds_per_unit: float = SECONDS_PER_DAY


def nearest_prerequisite_step(concepts, step, prerequisites):
    """
    Latest m < step whose concept is a prerequisite of the concept at step,
    or None.
    """
    if step <= 0:
        return None
    concepts = np.asarray(concepts, dtype=np.int64)
    candidates = np.flatnonzero(
        prerequisites[concepts[:step], concepts[step]])
    if candidates.size == 0:
        return None
    return int(candidates[-1])


def forgetting_weight(answer_raw, interval_raw, step, match, params):
    """
    delta / (1 + exp(dt + lambda)) with dt the gap in days between the
    answer-plus-interval times of step and match; 1 without a match.
    """
    if match is None:
        return 1.0
    elapsed = abs((answer_raw[step] + interval_raw[step]) -
                  (answer_raw[match] + interval_raw[match]))
    exponent = elapsed / params.seconds_per_unit + params.lambda_
    if exponent < 0.0:
        return params.delta / (1.0 + math.exp(exponent))
    decay = math.exp(-exponent)
    return params.delta * decay / (1.0 + decay)


def batch_forgetting_weights(batch, prerequisites, params):
    """
    Causal forgetting weight for every step of a batch; the first step,
    padded steps and steps without a prerequisite match get 1.
    """
    weights = np.ones(batch.exercise.shape)
    if not np.any(prerequisites):
        return weights
    for row in range(batch.size):
        concepts = batch.concept[row]
        for step in range(1, batch.steps):
            if not batch.mask[row, step]:
                continue
            match = nearest_prerequisite_step(concepts, step, prerequisites)
            weights[row, step] = forgetting_weight(
                batch.answer_raw[row], batch.interval_raw[row], step, match,
                params)
    return weights
