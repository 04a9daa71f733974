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

import os
from dataclasses import dataclass

import numpy as np

from _core.config.config_manager import ColumnMapping
from _core.config.json_parser import write_json
from _core.constants import ColumnConst
from _core.constants import FileName
from _core.data.records import InteractionRecord
from _core.data.records import records_to_frame
from _core.executor.concurrent import Concurrent
from _core.logger import platform_logger

__all__ = ["StudentTrace", "student_rng", "decay_mastery",
           "practice_mastery", "correct_probability", "simulate_student",
           "simulate_log", "ground_truth", "write_simulation"]

LOG = platform_logger("Simulator")

SECONDS_PER_DAY = 86400.0


@dataclass
class StudentTrace:
    student_id: str
    ability: float
    records: list
    # (steps, K) mastery right after every attempt
    mastery: np.ndarray


def student_rng(seed, index):
    return np.random.default_rng([seed, index])


def decay_mastery(mastery, days, base_forget_rate, coupling, edges):
    """
    Exponential decay over the gap, then every successor loses coupling
    times what its prerequisite lost. Returns a new array in [0, 1].
    """
    decayed = mastery * np.exp(-base_forget_rate * days)
    if coupling and edges:
        drop = mastery - decayed
        for source, target in edges:
            decayed[target] -= coupling * drop[source]
    return np.clip(decayed, 0.0, 1.0)


def practice_mastery(mastery, concept, ability, learn_rate):
    updated = mastery.copy()
    updated[concept] = min(1.0, updated[concept] + ability * learn_rate)
    return updated


def correct_probability(mastery, difficulty, scale):
    return 1.0 / (1.0 + np.exp(-scale * (mastery - difficulty)))


def _review_concept(world, current, position, rng):
    learned = world.order[:position]
    parents = [concept for concept in world.parents(current)
               if concept in set(learned.tolist())]
    if parents:
        return int(parents[rng.integers(len(parents))])
    return int(learned[rng.integers(len(learned))])


def simulate_student(world, index, steps, ability=None):
    """
    One student walks the curriculum in topological order: practice the
    current concept until mastery_target or max_steps_per_concept, and with
    review_prob revisit an earlier concept, preferring direct prerequisites.
    """
    spec = world.spec
    rng = student_rng(spec.seed, index)
    ability = float(world.abilities[index] if ability is None else ability)
    mastery = np.full(world.num_concepts, spec.initial_mastery,
                      dtype=np.float64)
    clock = float(spec.start_timestamp)
    position, on_concept = 0, 0
    records = []
    history = np.zeros((steps, world.num_concepts))
    student_id = world.student_id(index)
    for step in range(steps):
        gap = rng.lognormal(spec.gap_log_mean, spec.gap_log_sigma)
        clock += gap
        mastery = decay_mastery(mastery, gap / SECONDS_PER_DAY,
                                spec.base_forget_rate, spec.coupling,
                                world.edges)

        current = int(world.order[position])
        reviewing = position > 0 and rng.random() < spec.review_prob
        concept = _review_concept(world, current, position, rng) \
            if reviewing else current
        exercises = world.exercises_of(concept)
        exercise = int(exercises[rng.integers(len(exercises))])
        probability = correct_probability(mastery[concept],
                                          world.difficulty[exercise],
                                          spec.scale)
        correct = int(rng.random() < probability)
        answer_time = int(round(rng.lognormal(spec.answer_log_mean,
                                              spec.answer_log_sigma)))
        records.append(InteractionRecord(
            student_id=student_id,
            exercise_id=world.exercise_id(exercise),
            concept_id=world.concept_id(concept),
            correct=correct,
            answer_time=float(answer_time),
            timestamp=float(int(clock))))
        clock += answer_time

        mastery = practice_mastery(mastery, concept, ability,
                                   spec.learn_rate)
        history[step] = mastery
        if not reviewing:
            on_concept += 1
            if mastery[current] >= spec.mastery_target or \
                    on_concept >= spec.max_steps_per_concept:
                position = min(position + 1, world.num_concepts - 1)
                on_concept = 0
    return StudentTrace(student_id, ability, records, history)


def simulate_log(world, steps, workers=1, keep_traces=False):
    """
    Records of every student ordered by student id; each student draws
    from its own seed so the result does not depend on workers.
    """
    params = [(world, index, steps)
              for index in range(world.spec.num_students)]
    traces = Concurrent.concurrent_execute(simulate_student, params,
                                           max_size=workers)
    records = [record for trace in traces for record in trace.records]
    LOG.info("Interactions simulated", students=len(traces),
             records=len(records),
             accuracy="%.4f" % (np.mean([item.correct for item in records])
                                if records else 0.0))
    if keep_traces:
        return records, traces
    return records


def ground_truth(world):
    return {
        "seed": world.spec.seed,
        "concepts": [world.concept_id(index)
                     for index in range(world.num_concepts)],
        "edges": [[world.concept_id(source), world.concept_id(target)]
                  for source, target in world.edges],
        "exercise_concept": {
            world.exercise_id(index): world.concept_id(int(concept))
            for index, concept in enumerate(world.exercise_concept)},
        "difficulty": {world.exercise_id(index): round(float(value), 10)
                       for index, value in enumerate(world.difficulty)},
        "abilities": {world.student_id(index): round(float(value), 10)
                      for index, value in enumerate(world.abilities)},
    }


def write_simulation(world, records, output_dir):
    """
    log.csv in the default ingestion schema and ground_truth.json.
    """
    os.makedirs(output_dir, exist_ok=True)
    columns = ColumnMapping()
    frame = records_to_frame(records).rename(columns={
        ColumnConst.student: columns.student,
        ColumnConst.exercise: columns.exercise,
        ColumnConst.concept: columns.concept,
        ColumnConst.correct: columns.correct,
        ColumnConst.answer_time: columns.answer_time,
        ColumnConst.timestamp: columns.timestamp})
    frame[columns.answer_time] = frame[columns.answer_time].astype(np.int64)
    frame[columns.timestamp] = frame[columns.timestamp].astype(np.int64)
    log_path = os.path.join(output_dir, FileName.simulated_log)
    frame.to_csv(log_path, index=False, lineterminator="\n")
    truth_path = os.path.join(output_dir, FileName.ground_truth)
    write_json(truth_path, ground_truth(world))
    LOG.info("Simulation written", log=log_path, truth=truth_path)
    return log_path, truth_path
