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

from _core.exception import DataError

__all__ = ["to_bucket", "compute_exercise_difficulty", "difficulty_table",
           "compute_running_accuracy", "QMatrix", "enhance_q_matrix",
           "default_difficulty",
           "incidence_from_concepts"]

# absorbs ratios such as 0.29 * 100 landing on 28.999999999999996
_BUCKET_EPS = 1e-9


def to_bucket(ratio, buckets):
    bucket = int(math.floor(ratio * buckets + _BUCKET_EPS))
    return min(max(bucket, 0), buckets - 1)


def compute_exercise_difficulty(train_records, buckets):
    """
    Maps exercise id to the bucket of 1 - correct / attempts. Only pass
    training records; exercises missing here fall back to buckets // 2
    through default_difficulty().
    """
    attempts = {}
    corrects = {}
    for record in train_records:
        attempts[record.exercise_id] = attempts.get(record.exercise_id, 0) + 1
        corrects[record.exercise_id] = corrects.get(record.exercise_id, 0) + \
            int(record.correct)
    return {exercise: to_bucket(1.0 - corrects[exercise] / count, buckets)
            for exercise, count in attempts.items()}


def default_difficulty(buckets):
    return buckets // 2


def difficulty_table(exercises, corrects, num_exercises, buckets):
    """
    Array form of compute_exercise_difficulty over exercise indices.
    """
    exercises = np.asarray(exercises, dtype=np.int64)
    corrects = np.asarray(corrects, dtype=np.float64)
    attempts = np.bincount(exercises, minlength=num_exercises)
    hits = np.bincount(exercises, weights=corrects, minlength=num_exercises)
    table = np.full(num_exercises, default_difficulty(buckets),
                    dtype=np.int64)
    for index in np.flatnonzero(attempts):
        table[index] = to_bucket(1.0 - hits[index] / attempts[index], buckets)
    return table


def compute_running_accuracy(corrects, buckets, prior=0.5):
    """
    Bucket of the accuracy over the attempts before each step; the first
    step uses the prior.
    """
    result = np.empty(len(corrects), dtype=np.int64)
    hits = 0
    for step, correct in enumerate(corrects):
        ratio = prior if step == 0 else hits / step
        result[step] = to_bucket(ratio, buckets)
        hits += int(correct)
    return result


@dataclass
class QMatrix:
    entries: np.ndarray
    gamma: float

    @property
    def num_exercises(self):
        return self.entries.shape[0]

    @property
    def num_concepts(self):
        return self.entries.shape[1]


def incidence_from_concepts(exercise_concept, num_concepts):
    incidence = np.zeros((len(exercise_concept), num_concepts))
    incidence[np.arange(len(exercise_concept)), exercise_concept] = 1.0
    return incidence


def enhance_q_matrix(raw_incidence, gamma):
    raw = np.asarray(raw_incidence, dtype=np.float64)
    if raw.ndim != 2:
        raise DataError("Q-matrix must be 2-D, got shape %s" % (raw.shape,))
    binary = np.isin(raw, (0.0, 1.0))
    if not binary.all():
        raise DataError("Q-matrix must be binary")
    ones = raw.sum(axis=1)
    bad_rows = np.flatnonzero(ones != 1)
    if bad_rows.size:
        raise DataError("Q-matrix rows %s must contain exactly one 1" %
                        bad_rows[:10].tolist())
    return QMatrix(entries=np.where(raw == 1.0, 1.0, gamma), gamma=gamma)
