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

import json
import os
import stat
from dataclasses import asdict
from dataclasses import dataclass

import numpy as np

from _core.config.config_manager import DiscretizerSpec
from _core.config.json_parser import JsonParser
from _core.config.json_parser import write_json
from _core.constants import FileName
from _core.data.features import compute_running_accuracy
from _core.data.features import difficulty_table
from _core.data.features import enhance_q_matrix
from _core.data.features import incidence_from_concepts
from _core.data.records import discretize
from _core.data.records import group_by_student
from _core.data.sequence import StudentSequence
from _core.data.sequence import make_windows
from _core.exception import DataError
from _core.exception import ParamError
from _core.logger import platform_logger

__all__ = ["Vocabulary", "Dataset", "build_dataset", "save_dataset",
           "load_dataset", "student_streams"]

LOG = platform_logger("Dataset")


@dataclass
class Vocabulary:
    exercises: list
    concepts: list
    # concept index of every exercise index
    exercise_concept: np.ndarray

    @property
    def num_exercises(self):
        return len(self.exercises)

    @property
    def num_concepts(self):
        return len(self.concepts)

    def exercise_index(self):
        return {exercise: index for index, exercise in
                enumerate(self.exercises)}

    def concept_index(self):
        return {concept: index for index, concept in
                enumerate(self.concepts)}

    def q_matrix(self, gamma):
        return enhance_q_matrix(incidence_from_concepts(
            self.exercise_concept, self.num_concepts), gamma)

    def to_dict(self):
        return {"exercises": list(self.exercises),
                "concepts": list(self.concepts),
                "exercise_concept": self.exercise_concept.tolist(),
                "num_exercises": self.num_exercises,
                "num_concepts": self.num_concepts}

    @classmethod
    def from_dict(cls, content):
        return cls(exercises=[str(item) for item in content["exercises"]],
                   concepts=[str(item) for item in content["concepts"]],
                   exercise_concept=np.asarray(content["exercise_concept"],
                                               dtype=np.int64))


@dataclass
class Dataset:
    sequences: list
    vocab: Vocabulary
    discretizer: DiscretizerSpec

    @property
    def students(self):
        return sorted({sequence.student_id for sequence in self.sequences})

    def select(self, students):
        chosen = set(students)
        return [sequence for sequence in self.sequences
                if sequence.student_id in chosen]


def build_vocabulary(records):
    exercises = sorted({record.exercise_id for record in records})
    concepts = sorted({record.concept_id for record in records})
    concept_index = {concept: index for index, concept in enumerate(concepts)}
    first_concept = {}
    conflicts = 0
    for record in records:
        known = first_concept.setdefault(record.exercise_id,
                                         record.concept_id)
        if known != record.concept_id:
            conflicts += 1
    if conflicts:
        LOG.warning("Exercises tagged with several concepts keep the first",
                    records=conflicts)
    exercise_concept = np.asarray(
        [concept_index[first_concept[exercise]] for exercise in exercises],
        dtype=np.int64)
    return Vocabulary(exercises, concepts, exercise_concept)


def build_dataset(records, spec):
    """
    Records -> vocabularies, discretized times, running accuracy,
    difficulty over all given records, and fixed-length windows.
    """
    if not records:
        raise DataError("no interaction records to build a dataset from")
    vocab = build_vocabulary(records)
    exercise_index = vocab.exercise_index()
    records = discretize(records, spec)

    full_sequences = []
    for student_records in group_by_student(records):
        exercise = np.asarray([exercise_index[record.exercise_id]
                               for record in student_records], dtype=np.int64)
        correct = np.asarray([record.correct for record in student_records],
                             dtype=np.int64)
        full_sequences.append(StudentSequence.from_arrays(
            student_records[0].student_id,
            exercise=exercise,
            concept=vocab.exercise_concept[exercise],
            correct=correct,
            answer_bucket=[record.answer_bucket
                           for record in student_records],
            interval_bucket=[record.interval_bucket
                             for record in student_records],
            answer_raw=[record.answer_time for record in student_records],
            interval_raw=[record.interval_time
                          for record in student_records],
            accuracy=compute_running_accuracy(correct,
                                              spec.accuracy_buckets)))

    all_exercises = np.concatenate([item.exercise for item in full_sequences])
    all_correct = np.concatenate([item.correct for item in full_sequences])
    table = difficulty_table(all_exercises, all_correct, vocab.num_exercises,
                             spec.difficulty_buckets)
    full_sequences = [item.with_difficulty(table) for item in full_sequences]
    windows = make_windows(full_sequences, spec.window)
    LOG.info("Dataset built", students=len(full_sequences),
             windows=len(windows), exercises=vocab.num_exercises,
             concepts=vocab.num_concepts)
    return Dataset(windows, vocab, spec)


def student_streams(sequences):
    """
    Rebuilds each student's unwindowed (concepts, corrects) stream from
    windows, ordered by student id then window index.
    """
    grouped = {}
    for sequence in sequences:
        grouped.setdefault(sequence.student_id, []).append(sequence)
    streams = []
    for student in sorted(grouped):
        windows = sorted(grouped[student], key=lambda item: item.window_index)
        streams.append((
            np.concatenate([item.valid("concept") for item in windows]),
            np.concatenate([item.valid("correct") for item in windows])))
    return streams


def save_dataset(dataset, output_dir):
    os.makedirs(output_dir, exist_ok=True)
    path = os.path.join(output_dir, FileName.dataset)
    flags = os.O_WRONLY | os.O_CREAT | os.O_TRUNC
    modes = stat.S_IWUSR | stat.S_IRUSR | stat.S_IRGRP | stat.S_IROTH
    with os.fdopen(os.open(path, flags, modes), "w",
                   encoding="utf-8") as file_handler:
        for sequence in dataset.sequences:
            file_handler.write(json.dumps(sequence.to_dict(), sort_keys=True))
            file_handler.write("\n")
    meta = {"vocab": dataset.vocab.to_dict(),
            "discretizer": asdict(dataset.discretizer),
            "windows": len(dataset.sequences),
            "students": len(dataset.students)}
    write_json(os.path.join(output_dir, FileName.dataset_meta), meta)
    return path


def load_dataset(path):
    """
    path is a directory holding dataset.jsonl and dataset.meta.json, or
    the jsonl file itself.
    """
    data_file = os.path.join(path, FileName.dataset) if os.path.isdir(path) \
        else path
    meta_file = os.path.join(os.path.dirname(data_file),
                             FileName.dataset_meta)
    if not os.path.exists(data_file):
        raise ParamError("dataset %s does not exist" % data_file,
                         error_no="00110")
    meta = JsonParser(meta_file).get_content()
    sequences = []
    with open(data_file, "r", encoding="utf-8") as file_handler:
        for line_no, line in enumerate(file_handler, start=1):
            if not line.strip():
                continue
            try:
                sequences.append(StudentSequence.from_dict(json.loads(line)))
            except (KeyError, TypeError, ValueError) as error:
                raise DataError("malformed dataset line %d in %s: %s" % (
                    line_no, data_file, error)) from error
    vocab = Vocabulary.from_dict(meta["vocab"])
    spec = DiscretizerSpec(**meta["discretizer"])
    LOG.info("Dataset loaded", path=data_file, windows=len(sequences))
    return Dataset(sequences, vocab, spec)
