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
import zipfile

import numpy as np
import pytest

from _core.constants import AblationType
from _core.exception import DataError
from _core.exception import ParamError
from _core.executor.trainer import train
from _core.graph.prerequisite import build_concept_graph
from _core.data.dataset import student_streams
from _core.model import KnowledgeTracer
from _core.model import load_checkpoint
from _core.model import save_checkpoint


@pytest.fixture
def trained(tiny_dataset, tiny_run_config):
    graph = build_concept_graph(student_streams(tiny_dataset.sequences),
                                tiny_dataset.vocab.num_concepts)
    model = KnowledgeTracer(tiny_run_config.model, tiny_dataset.vocab,
                            tiny_dataset.discretizer,
                            prerequisites=graph.prerequisites,
                            difficulty=np.arange(
                                tiny_dataset.vocab.num_exercises) % 10,
                            seed=tiny_run_config.seed)
    result = train(model, tiny_dataset.sequences[:8],
                   tiny_dataset.sequences[8:12], tiny_run_config.train,
                   seed=tiny_run_config.seed)
    return model, result


def test_checkpoint_restores_model(tmp_path, trained, tiny_dataset,
                                   tiny_run_config):
    model, result = trained
    path = str(tmp_path / "checkpoint.npz")
    save_checkpoint(path, model, tiny_run_config, result.optimizer,
                    extra={"best_epoch": result.best_epoch})
    loaded, meta = load_checkpoint(path)
    assert meta["extra"] == {"best_epoch": result.best_epoch}
    assert meta["optimizer"]["step_count"] == result.optimizer.step_count
    assert meta["run_config"].model == tiny_run_config.model
    assert loaded.params.names() == model.params.names()
    for param in model.params:
        other = loaded.params[param.name]
        assert np.array_equal(other.data, param.data)
        assert np.array_equal(other.adam_m, param.adam_m)
        assert np.array_equal(other.adam_v, param.adam_v)
    assert np.array_equal(loaded.prerequisites, model.prerequisites)
    assert np.array_equal(loaded.difficulty, model.difficulty)
    sequences = tiny_dataset.sequences[:6]
    assert np.array_equal(loaded.forward(sequences).predictions.data,
                          model.forward(sequences).predictions.data)


def test_checkpoint_bytes_are_stable(tmp_path, trained, tiny_run_config):
    model, result = trained
    first = str(tmp_path / "first.npz")
    second = str(tmp_path / "second.npz")
    save_checkpoint(first, model, tiny_run_config, result.optimizer)
    loaded, _ = load_checkpoint(first)
    loaded_optimizer = result.optimizer.state_dict()
    save_checkpoint(second, loaded, tiny_run_config, result.optimizer)
    with open(first, "rb") as left, open(second, "rb") as right:
        assert left.read() == right.read()
    assert loaded_optimizer == result.optimizer.state_dict()


def test_checkpoint_without_difficulty_table(tmp_path, tiny_dataset,
                                             tiny_run_config):
    model = KnowledgeTracer(tiny_run_config.model, tiny_dataset.vocab,
                            tiny_dataset.discretizer, seed=1)
    path = str(tmp_path / "plain.npz")
    save_checkpoint(path, model)
    loaded, meta = load_checkpoint(path)
    assert loaded.difficulty is None
    assert meta["optimizer"] == {}
    sequences = tiny_dataset.sequences[:3]
    assert np.array_equal(loaded.forward(sequences).predictions.data,
                          model.forward(sequences).predictions.data)


def test_checkpoint_keeps_ablation(tmp_path, tiny_dataset, tiny_run_config):
    tiny_run_config.model.ablation = AblationType.no_forgetting
    model = KnowledgeTracer(tiny_run_config.model, tiny_dataset.vocab,
                            tiny_dataset.discretizer, seed=1)
    path = str(tmp_path / "fp.npz")
    save_checkpoint(path, model, tiny_run_config)
    loaded, _ = load_checkpoint(path)
    assert loaded.config.ablation == AblationType.no_forgetting


def test_missing_checkpoint(tmp_path):
    with pytest.raises(ParamError) as error:
        load_checkpoint(str(tmp_path / "absent.npz"))
    assert error.value.error_no == "00110"


def test_unreadable_checkpoint(tmp_path):
    path = tmp_path / "broken.npz"
    path.write_bytes(b"not a zip archive")
    with pytest.raises(DataError):
        load_checkpoint(str(path))


def test_checkpoint_version_mismatch(tmp_path):
    path = str(tmp_path / "future.npz")
    with zipfile.ZipFile(path, "w") as archive:
        archive.writestr("meta.json", json.dumps({"version": 99}))
    with pytest.raises(DataError):
        load_checkpoint(path)
