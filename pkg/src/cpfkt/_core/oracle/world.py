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

import numpy as np

from _core.constants import TopologyType
from _core.exception import ParamError
from _core.logger import platform_logger

__all__ = ["WorldSpec", "World", "generate_world"]

LOG = platform_logger("World")


@dataclass
class WorldSpec:
    """
    Ground-truth settings of a synthetic population. Rates are per day,
    gaps and answer times are lognormal in seconds.
    """
    num_concepts: int = 10
    num_edges: int = 9
    topology: str = TopologyType.chain
    num_exercises: int = 30
    num_students: int = 200
    ability_low: float = 0.3
    ability_high: float = 1.0
    initial_mastery: float = 0.0
    learn_rate: float = 0.3
    base_forget_rate: float = 0.05
    coupling: float = 0.5
    scale: float = 8.0
    difficulty_low: float = 0.1
    difficulty_high: float = 0.5
    review_prob: float = 0.2
    mastery_target: float = 0.8
    max_steps_per_concept: int = 30
    gap_log_mean: float = 8.0
    gap_log_sigma: float = 1.5
    answer_log_mean: float = 3.0
    answer_log_sigma: float = 0.6
    start_timestamp: int = 1600000000
    seed: int = 0

    @classmethod
    def from_config(cls, simulation, seed):
        return cls(num_concepts=simulation.concepts,
                   num_edges=simulation.edges,
                   topology=simulation.topology,
                   num_exercises=simulation.exercises,
                   num_students=simulation.students,
                   ability_low=simulation.ability_low,
                   ability_high=simulation.ability_high,
                   initial_mastery=simulation.initial_mastery,
                   learn_rate=simulation.learn_rate,
                   base_forget_rate=simulation.base_forget_rate,
                   coupling=simulation.coupling,
                   scale=simulation.scale,
                   difficulty_low=simulation.difficulty_low,
                   difficulty_high=simulation.difficulty_high,
                   review_prob=simulation.review_prob,
                   mastery_target=simulation.mastery_target,
                   max_steps_per_concept=simulation.max_steps_per_concept,
                   gap_log_mean=simulation.gap_log_mean,
                   gap_log_sigma=simulation.gap_log_sigma,
                   answer_log_mean=simulation.answer_log_mean,
                   answer_log_sigma=simulation.answer_log_sigma,
                   start_timestamp=simulation.start_timestamp,
                   seed=seed)

    @property
    def edge_capacity(self):
        if self.topology == TopologyType.chain:
            return max(self.num_concepts - 1, 0)
        return self.num_concepts * (self.num_concepts - 1) // 2

    def validate(self):
        if self.num_concepts < 1 or self.num_exercises < self.num_concepts:
            raise ParamError("a world needs >= 1 concept and an exercise for "
                             "every concept", error_no="00115")
        if self.topology not in (TopologyType.chain, TopologyType.random):
            raise ParamError("unknown topology '%s'" % self.topology,
                             error_no="00115")
        if not 0 <= self.num_edges <= self.edge_capacity:
            raise ParamError("%d edges do not fit an acyclic %s graph over %d "
                             "concepts (at most %d)" % (
                                 self.num_edges, self.topology,
                                 self.num_concepts, self.edge_capacity),
                             error_no="00115")


@dataclass
class World:
    spec: WorldSpec
    # (prerequisite, successor) pairs
    edges: list
    # concepts in the order the curriculum teaches them
    order: np.ndarray
    exercise_concept: np.ndarray
    difficulty: np.ndarray
    abilities: np.ndarray

    @property
    def num_concepts(self):
        return self.spec.num_concepts

    @property
    def prerequisites(self):
        matrix = np.zeros((self.num_concepts, self.num_concepts),
                          dtype=np.int64)
        for source, target in self.edges:
            matrix[source, target] = 1
        return matrix

    def parents(self, concept):
        return [source for source, target in self.edges if target == concept]

    def exercises_of(self, concept):
        return np.flatnonzero(self.exercise_concept == concept)

    def student_id(self, index):
        return "s%05d" % index

    def exercise_id(self, index):
        return "e%04d" % index

    def concept_id(self, index):
        return "c%03d" % index


def generate_world(spec):
    """
    Draws the prerequisite DAG, the exercise bank and the student
    abilities from spec.seed.
    """
    spec.validate()
    rng = np.random.default_rng(spec.seed)
    num_concepts = spec.num_concepts
    if spec.topology == TopologyType.chain:
        order = np.arange(num_concepts)
        edges = [(index, index + 1) for index in range(spec.num_edges)]
    else:
        order = rng.permutation(num_concepts)
        candidates = [(int(order[low]), int(order[high]))
                      for low in range(num_concepts)
                      for high in range(low + 1, num_concepts)]
        chosen = rng.choice(len(candidates), size=spec.num_edges,
                            replace=False)
        edges = sorted(candidates[index] for index in chosen)

    extra = rng.integers(0, num_concepts,
                         size=spec.num_exercises - num_concepts)
    exercise_concept = rng.permutation(
        np.concatenate([np.arange(num_concepts), extra])).astype(np.int64)
    difficulty = rng.uniform(spec.difficulty_low, spec.difficulty_high,
                             size=spec.num_exercises)
    abilities = rng.uniform(spec.ability_low, spec.ability_high,
                            size=spec.num_students)
    LOG.info("World generated", concepts=num_concepts, edges=len(edges),
             exercises=spec.num_exercises, students=spec.num_students,
             seed=spec.seed)
    return World(spec=spec, edges=[(int(a), int(b)) for a, b in edges],
                 order=np.asarray(order, dtype=np.int64),
                 exercise_concept=exercise_concept, difficulty=difficulty,
                 abilities=abilities)
