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
from dataclasses import fields
from dataclasses import replace

import numpy as np

from _core.exception import ParamError

__all__ = ["StudentSequence", "SequenceBatch", "FoldSplit", "make_windows",
           "kfold", "STEP_FIELDS"]

STEP_FIELDS = ("exercise", "concept", "correct", "answer_bucket",
               "interval_bucket", "answer_raw", "interval_raw", "difficulty",
               "accuracy", "mask")
_FLOAT_FIELDS = ("answer_raw", "interval_raw")


@dataclass
class StudentSequence:
    """
    One student's steps as parallel arrays. Windows produced by
    make_windows have a fixed length; padded steps carry mask 0 and zeros.
    """
    student_id: str
    window_index: int
    exercise: np.ndarray
    concept: np.ndarray
    correct: np.ndarray
    answer_bucket: np.ndarray
    interval_bucket: np.ndarray
    answer_raw: np.ndarray
    interval_raw: np.ndarray
    difficulty: np.ndarray
    accuracy: np.ndarray
    mask: np.ndarray

    def __len__(self):
        return int(self.exercise.shape[0])

    @property
    def valid_steps(self):
        return int(self.mask.sum())

    def valid(self, name):
        return getattr(self, name)[self.mask.astype(bool)]

    def to_dict(self):
        content = {"student_id": self.student_id,
                   "window_index": self.window_index}
        for name in STEP_FIELDS:
            values = getattr(self, name)
            content[name] = values.tolist()
        return content

    @classmethod
    def from_dict(cls, content):
        kwargs = {"student_id": str(content["student_id"]),
                  "window_index": int(content.get("window_index", 0))}
        for name in STEP_FIELDS:
            dtype = np.float64 if name in _FLOAT_FIELDS else np.int64
            kwargs[name] = np.asarray(content[name], dtype=dtype)
        return cls(**kwargs)

    @classmethod
    def from_arrays(cls, student_id, window_index=0, **arrays):
        length = len(arrays["exercise"])
        kwargs = {}
        for name in STEP_FIELDS:
            dtype = np.float64 if name in _FLOAT_FIELDS else np.int64
            default = np.ones(length) if name == "mask" else np.zeros(length)
            kwargs[name] = np.asarray(arrays.get(name, default), dtype=dtype)
        return cls(student_id=student_id, window_index=window_index, **kwargs)

    def with_difficulty(self, table):
        difficulty = np.where(self.mask.astype(bool),
                              table[self.exercise], 0).astype(np.int64)
        return replace(self, difficulty=difficulty)


def _pad(values, length):
    padded = np.zeros(length, dtype=values.dtype)
    padded[:values.shape[0]] = values
    return padded


def make_windows(sequences, window):
    """
    Cuts each full-length student sequence into consecutive
    non-overlapping chunks of `window` steps, zero-padding the last one.
    The first step of every chunk gets interval 0.
    """
    if window <= 1:
        raise ParamError("window length must be > 1, got %s" % window,
                         error_no="00115")
    windows = []
    for sequence in sequences:
        length = sequence.valid_steps
        for index, start in enumerate(range(0, length, window)):
            stop = min(start + window, length)
            arrays = {}
            for item in fields(sequence):
                if item.name not in STEP_FIELDS:
                    continue
                chunk = getattr(sequence, item.name)[start:stop].copy()
                if item.name in ("interval_bucket", "interval_raw"):
                    chunk[0] = 0
                arrays[item.name] = _pad(chunk, window)
            windows.append(StudentSequence(student_id=sequence.student_id,
                                           window_index=index, **arrays))
    return windows


@dataclass
class FoldSplit:
    fold: int
    train: list
    val: list
    test: list


def kfold(students, k=5, seed=0, val_ratio=0.2):
    """
    Student-level k-fold: each fold tests on one of k chunks of a seeded
    permutation and splits the rest into train and validation.
    """
    students = sorted(set(students))
    if k < 2:
        raise ParamError("k must be >= 2, got %s" % k, error_no="00115")
    if len(students) < k:
        raise ParamError("%d students cannot fill %d folds" % (
            len(students), k), error_no="00115")
    rng = np.random.default_rng(seed)
    order = rng.permutation(len(students))
    chunks = np.array_split(order, k)
    splits = []
    for fold, test_index in enumerate(chunks):
        test_set = set(test_index.tolist())
        rest = [index for index in order.tolist() if index not in test_set]
        val_count = int(round(val_ratio * len(rest)))
        val_index = rest[:val_count]
        train_index = rest[val_count:]
        splits.append(FoldSplit(
            fold=fold,
            train=sorted(students[index] for index in train_index),
            val=sorted(students[index] for index in val_index),
            test=sorted(students[index] for index in test_index)))
    return splits


@dataclass
class SequenceBatch:
    """
    Windows stacked into (batch, steps) arrays, plus the causal forgetting
    weight per step filled in by the model.
    """
    exercise: np.ndarray
    concept: np.ndarray
    correct: np.ndarray
    answer_bucket: np.ndarray
    interval_bucket: np.ndarray
    answer_raw: np.ndarray
    interval_raw: np.ndarray
    difficulty: np.ndarray
    accuracy: np.ndarray
    mask: np.ndarray
    forgetting_weight: np.ndarray = None

    @classmethod
    def from_sequences(cls, sequences):
        if not sequences:
            raise ParamError("cannot batch an empty list of sequences")
        lengths = {len(sequence) for sequence in sequences}
        if len(lengths) != 1:
            raise ParamError("sequences in a batch must share one length, "
                             "got %s" % sorted(lengths))
        arrays = {name: np.stack([getattr(sequence, name)
                                  for sequence in sequences])
                  for name in STEP_FIELDS}
        return cls(**arrays)

    @property
    def size(self):
        return self.exercise.shape[0]

    @property
    def steps(self):
        return self.exercise.shape[1]
