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
from dataclasses import replace

import numpy as np
import pandas as pd
import pytest

from _core.constants import TopologyType
from _core.exception import ParamError
from _core.oracle import WorldSpec
from _core.oracle import concept_streams
from _core.oracle import generate_world
from _core.oracle import permutation_null_auc
from _core.oracle import score_p_recovery
from _core.oracle import simulate_log
from _core.oracle import simulate_student
from _core.oracle import write_simulation
from _core.oracle.simulator import correct_probability
from _core.oracle.simulator import decay_mastery
from _core.oracle.simulator import practice_mastery
from _core.oracle.simulator import student_rng


def _spec(**changes):
    spec = WorldSpec(num_concepts=5, num_edges=4, num_exercises=10,
                     num_students=6, seed=3)
    return replace(spec, **changes)


def test_world_without_edges():
    world = generate_world(_spec(num_edges=0))
    assert world.edges == []
    assert not world.prerequisites.any()


def test_chain_world():
    world = generate_world(_spec())
    assert world.edges == [(0, 1), (1, 2), (2, 3), (3, 4)]
    assert world.prerequisites.sum() == 4
    assert sorted(set(world.exercise_concept.tolist())) == list(range(5))


def test_random_world_is_acyclic():
    world = generate_world(_spec(topology=TopologyType.random,
                                 num_edges=7))
    position = {int(concept): rank for rank, concept in
                enumerate(world.order)}
    assert len(world.edges) == len(set(world.edges)) == 7
    assert all(position[source] < position[target]
               for source, target in world.edges)


def test_world_rejects_too_many_edges():
    with pytest.raises(ParamError) as error:
        generate_world(_spec(num_edges=5))
    assert error.value.error_no == "00115"
    with pytest.raises(ParamError):
        generate_world(_spec(topology=TopologyType.random, num_edges=11))


def test_world_is_seeded():
    first = generate_world(_spec(topology=TopologyType.random))
    second = generate_world(_spec(topology=TopologyType.random))
    assert first.edges == second.edges
    assert np.array_equal(first.difficulty, second.difficulty)
    assert np.array_equal(first.abilities, second.abilities)


def test_decay_mastery_laws():
    mastery = np.array([1.0, 0.5])
    alone = decay_mastery(mastery, 2.0, 0.1, 0.0, [(0, 1)])
    assert alone[1] == pytest.approx(0.5 * np.exp(-0.2))
    coupled = decay_mastery(mastery, 2.0, 0.1, 0.5, [(0, 1)])
    assert coupled[0] == alone[0]
    assert coupled[1] < alone[1]
    decays = [decay_mastery(mastery, days, 0.1, 0.5, [(0, 1)])
              for days in (0.0, 1.0, 5.0, 50.0)]
    for before, after in zip(decays, decays[1:]):
        assert np.all(after <= before)
    assert np.all(decays[-1] >= 0.0)
    assert np.array_equal(mastery, [1.0, 0.5])


def _successor_loss_correlation(coupling, draws=2000):
    prerequisite_loss, successor_loss = [], []
    for seed in range(draws):
        mastery = student_rng(seed, 0).uniform(0.0, 1.0, size=2)
        decayed = decay_mastery(mastery, 5.0, 0.1, coupling, [(0, 1)])
        prerequisite_loss.append(mastery[0] - decayed[0])
        successor_loss.append(mastery[1] - decayed[1])
    return np.corrcoef(prerequisite_loss, successor_loss)[0, 1]


def test_uncoupled_successor_ignores_prerequisite_decay():
    assert abs(_successor_loss_correlation(0.0)) < 0.1
    assert _successor_loss_correlation(0.5) > 0.3


def test_practice_and_correctness_laws():
    mastery = practice_mastery(np.array([0.9, 0.0]), 0, 1.0, 0.3)
    assert np.array_equal(mastery, [1.0, 0.0])
    assert correct_probability(0.3, 0.3, 8.0) == 0.5
    assert correct_probability(1.0, 0.1, 8.0) > correct_probability(
        0.2, 0.1, 8.0)


def test_mastery_stays_in_bounds(tiny_world):
    _, traces = simulate_log(tiny_world, 30, keep_traces=True)
    for trace in traces:
        assert trace.mastery.shape == (30, tiny_world.num_concepts)
        assert np.all((trace.mastery >= 0.0) & (trace.mastery <= 1.0))


def test_perfect_learner_keeps_mastery():
    world = generate_world(_spec(learn_rate=1.0, base_forget_rate=0.0))
    trace = simulate_student(world, 0, 40, ability=1.0)
    assert np.all(np.diff(trace.mastery, axis=0) >= 0.0)
    practiced = {int(record.concept_id[1:]) for record in trace.records}
    assert np.all(trace.mastery[-1, sorted(practiced)] == 1.0)


def test_zero_ability_correctness_rate():
    world = generate_world(_spec(num_students=50, ability_low=0.0,
                                 ability_high=0.0))
    records = simulate_log(world, 200)
    expected = [correct_probability(0.0, world.difficulty[
        int(record.exercise_id[1:])], world.spec.scale)
        for record in records]
    observed = np.mean([record.correct for record in records])
    assert len(records) == 10000
    assert observed == pytest.approx(np.mean(expected), abs=0.02)


def test_higher_ability_learns_more():
    world = generate_world(_spec())
    slow = simulate_student(world, 0, 40, ability=0.2)
    fast = simulate_student(world, 0, 40, ability=0.9)
    assert fast.mastery[-1].mean() > slow.mastery[-1].mean()


def test_simulation_is_reproducible(tiny_world):
    first = simulate_log(tiny_world, 15)
    second = simulate_log(tiny_world, 15, workers=3)
    assert first == second
    assert len(first) == tiny_world.spec.num_students * 15
    students = [record.student_id for record in first]
    assert students == sorted(students)
    times = {}
    for record in first:
        assert record.timestamp >= times.get(record.student_id, 0)
        times[record.student_id] = record.timestamp


def test_write_simulation(tmp_path, tiny_world):
    records = simulate_log(tiny_world, 10)
    log_path, truth_path = write_simulation(tiny_world, records,
                                            str(tmp_path / "sim"))
    frame = pd.read_csv(log_path)
    assert list(frame.columns) == ["student_id", "exercise_id", "concept_id",
                                   "correct", "answer_time", "timestamp"]
    assert len(frame) == len(records)
    assert set(frame["correct"].unique()) <= {0, 1}
    with open(truth_path) as truth_file:
        truth = json.load(truth_file)
    assert len(truth["edges"]) == len(tiny_world.edges)
    assert len(truth["exercise_concept"]) == tiny_world.spec.num_exercises
    assert os.path.basename(log_path) == "log.csv"


def test_recovery_without_true_edges():
    score = score_p_recovery([], np.ones((3, 3)) - np.eye(3))
    assert score.auc is None
    assert score.precision is None
    assert score.recall is None
    assert score.true_edges == 0
    assert permutation_null_auc([], [], 3) is None


def test_recovery_of_a_perfect_ranking():
    t_tilde = np.full((3, 3), 0.01)
    t_tilde[0, 1] = t_tilde[1, 2] = 0.9
    np.fill_diagonal(t_tilde, 0.0)
    prerequisites = np.zeros((3, 3), dtype=np.int64)
    prerequisites[0, 1] = prerequisites[0, 2] = 1
    score = score_p_recovery([(0, 1), (1, 2)], t_tilde, prerequisites)
    assert score.auc == 1.0
    assert score.recall == 0.5
    assert score.precision == 0.5
    assert score.predicted_edges == 2


def test_concept_streams(tiny_world, tiny_records):
    streams = concept_streams(tiny_records, tiny_world)
    assert len(streams) == tiny_world.spec.num_students
    assert sum(len(concepts) for concepts, _ in streams) == \
        len(tiny_records)
    assert all(concepts.max() < tiny_world.num_concepts
               for concepts, _ in streams)
