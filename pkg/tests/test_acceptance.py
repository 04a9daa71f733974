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
from dataclasses import replace

import numpy as np
import pytest

from _core.config.config_manager import RunConfigManager
from _core.config.config_manager import TrainConfig
from _core.constants import AblationType
from _core.data.dataset import Vocabulary
from _core.data.dataset import build_dataset
from _core.executor import cross_validate
from _core.executor import train
from _core.executor.loss import bce_loss
from _core.graph.prerequisite import binarize_transitions
from _core.graph.prerequisite import build_answer_matrix
from _core.model import KnowledgeTracer
from _core.oracle import WorldSpec
from _core.oracle import concept_streams
from _core.oracle import generate_world
from _core.oracle import permutation_null_auc
from _core.oracle import score_p_recovery
from _core.oracle import simulate_log
from conftest import CONFIG_DIR

pytestmark = pytest.mark.slow


def test_model_memorizes_tiny_sequences(tiny_discretizer, tiny_model_config,
                                        sequence_factory):
    vocab = Vocabulary(exercises=["e%d" % index for index in range(20)],
                       concepts=["k%d" % index for index in range(4)],
                       exercise_concept=np.arange(20) % 4)
    rng = np.random.default_rng(0)
    sequences = []
    for index in range(4):
        exercises = np.arange(5 * index, 5 * index + 5)
        sequences.append(sequence_factory(
            "s%d" % index, exercises % 4, rng.integers(0, 2, 5),
            exercise=exercises))
    model = KnowledgeTracer(tiny_model_config, vocab, tiny_discretizer,
                            seed=0)
    result = train(model, sequences, [],
                   TrainConfig(lr=0.05, batch_size=4, epochs=500,
                               patience=500, l2_lambda=0.0), seed=0)
    assert min(record.loss for record in result.records) < 0.1
    forward = model.forward(model.make_batch(sequences))
    final = bce_loss(forward.predictions, forward.labels, forward.mask, [])
    assert float(final.data) < 0.1


def test_chain_prerequisites_are_recovered():
    world = generate_world(WorldSpec(num_concepts=10, num_edges=9,
                                     num_exercises=30, num_students=200,
                                     seed=2026))
    records = simulate_log(world, 200)
    streams = concept_streams(records, world)
    transitions = binarize_transitions(build_answer_matrix(streams, 10))
    score = score_p_recovery(world.edges, transitions.t_tilde)
    assert score.true_edges == 9
    assert score.auc >= 0.9
    null = permutation_null_auc(streams, world.edges, 10, draws=50, seed=1)
    assert 0.45 <= null <= 0.55


def test_synthetic_cross_validation():
    manager = RunConfigManager(os.path.join(CONFIG_DIR, "synthetic.json"))
    config = manager.get_config()
    config.simulation = replace(config.simulation, students=1000)
    world = generate_world(WorldSpec.from_config(config.simulation,
                                                 config.seed))
    assert len(world.abilities) == 1000
    dataset = build_dataset(simulate_log(world, config.simulation.steps),
                            config.discretizer)
    full = cross_validate(dataset, config, folds=[0])
    assert full.mean.auc >= 0.65

    config.model = replace(config.model,
                           ablation=AblationType.no_forgetting)
    without_forgetting = cross_validate(dataset, config, folds=[0])
    assert full.mean.auc >= without_forgetting.mean.auc
