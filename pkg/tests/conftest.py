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
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.join(os.path.dirname(os.path.dirname(
    os.path.abspath(__file__))), "src"))

import cpfkt  # noqa: E402,F401  registers plugins and the _core path
from _core.autodiff import set_default_dtype  # noqa: E402
from _core.config.config_manager import DiscretizerSpec  # noqa: E402
from _core.config.config_manager import ModelConfig  # noqa: E402
from _core.config.config_manager import RunConfig  # noqa: E402
from _core.config.config_manager import SimulationConfig  # noqa: E402
from _core.config.config_manager import TrainConfig  # noqa: E402
from _core.data.dataset import build_dataset  # noqa: E402
from _core.data.sequence import StudentSequence  # noqa: E402
from _core.oracle.simulator import simulate_log  # noqa: E402
from _core.oracle.world import WorldSpec  # noqa: E402
from _core.oracle.world import generate_world  # noqa: E402

CONFIG_DIR = os.path.join(os.path.dirname(os.path.dirname(
    os.path.abspath(__file__))), "config")


@pytest.fixture(autouse=True)
def float64_precision():
    set_default_dtype("float64")
    yield
    set_default_dtype("float64")


@pytest.fixture
def tiny_discretizer():
    return DiscretizerSpec(answer_time_cap=60, interval_time_cap=1440,
                           difficulty_buckets=10, accuracy_buckets=10,
                           window=5)


@pytest.fixture
def tiny_model_config():
    return ModelConfig(d=8, d_a=4, review_window=3, dropout=0.0)


@pytest.fixture
def tiny_world():
    return generate_world(WorldSpec(num_concepts=4, num_edges=3,
                                    num_exercises=6, num_students=8,
                                    seed=7))


@pytest.fixture
def tiny_records(tiny_world):
    return simulate_log(tiny_world, 12)


@pytest.fixture
def tiny_dataset(tiny_records, tiny_discretizer):
    return build_dataset(tiny_records, tiny_discretizer)


@pytest.fixture
def tiny_run_config(tiny_discretizer, tiny_model_config):
    return RunConfig(
        seed=7, discretizer=tiny_discretizer, model=tiny_model_config,
        train=TrainConfig(lr=0.01, batch_size=4, epochs=3, patience=3,
                          folds=2, l2_lambda=0.0),
        simulation=SimulationConfig(concepts=4, edges=3, exercises=6,
                                    students=8, steps=12))


@pytest.fixture
def sequence_factory():
    """
    Builds a StudentSequence whose exercise index defaults to its concept.
    """
    return _make_sequence


def _make_sequence(student_id, concepts, corrects, window_index=0,
                   **arrays):
    concepts = np.asarray(concepts, dtype=np.int64)
    arrays.setdefault("exercise", concepts)
    return StudentSequence.from_arrays(student_id, window_index=window_index,
                                       concept=concepts, correct=corrects,
                                       **arrays)
