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

import pytest

from _core.config.config_manager import RunConfig
from _core.config.config_manager import RunConfigManager
from _core.config.config_manager import config_from_dict
from _core.constants import AblationType
from _core.exception import ParamError
from conftest import CONFIG_DIR


@pytest.mark.parametrize("name", ["default.json", "tiny.json",
                                  "synthetic.json"])
def test_shipped_configs_load(name):
    config = RunConfigManager(os.path.join(CONFIG_DIR, name)).get_config()
    assert isinstance(config, RunConfig)
    assert config.discretizer.window > 1


def test_tiny_config_values():
    config = RunConfigManager(os.path.join(CONFIG_DIR,
                                           "tiny.json")).get_config()
    assert config.seed == 7
    assert config.model.d == 8
    assert config.model.dropout == 0.0
    assert config.discretizer.answer_vocab == 61
    assert config.discretizer.interval_vocab == 1441
    assert config.train.folds == 2
    # sections missing from the file keep their defaults
    assert config.train.lr == RunConfig().train.lr


def test_defaults_without_file():
    assert RunConfigManager().get_config() == RunConfig()


def test_unknown_keys_are_rejected(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"model": {"depth": 3}}))
    with pytest.raises(ParamError) as error:
        RunConfigManager(str(path))
    assert error.value.error_no == "00115"
    path.write_text(json.dumps({"optimizer": {}}))
    with pytest.raises(ParamError):
        RunConfigManager(str(path))


def test_missing_config_file(tmp_path):
    with pytest.raises(ParamError) as error:
        RunConfigManager(str(tmp_path / "absent.json"))
    assert error.value.error_no == "00110"


def test_invalid_values_are_rejected():
    with pytest.raises(ParamError):
        RunConfigManager('{"model": {"d": "wide"}}')
    with pytest.raises(ParamError):
        RunConfigManager('{"model": {"ablation": "XYZ"}}')
    with pytest.raises(ParamError):
        RunConfigManager('{"discretizer": {"window": 1}}')
    with pytest.raises(ParamError):
        RunConfigManager('{"seed": -1}')


def test_lambda_key():
    config = RunConfigManager('{"model": {"lambda": 0.5}}').get_config()
    assert config.model.lambda_ == 0.5
    assert config.to_dict()["model"]["lambda"] == 0.5
    assert "lambda_" not in config.to_dict()["model"]


def test_overrides():
    manager = RunConfigManager(
        os.path.join(CONFIG_DIR, "tiny.json"),
        overrides={"seed": 11, "model.ablation": AblationType.no_p_matrix,
                   "model.lambda": 0.25, "train.fold": None})
    config = manager.get_config()
    assert config.seed == 11
    assert config.model.ablation == "P"
    assert config.model.lambda_ == 0.25
    assert config.model.d == 8
    assert config.train.fold == -1
    with pytest.raises(ParamError):
        manager.apply_overrides({"model.width": 3})
    with pytest.raises(ParamError):
        manager.apply_overrides({"speed": 3})


def test_dump_and_reload(tmp_path):
    manager = RunConfigManager(os.path.join(CONFIG_DIR, "synthetic.json"))
    path = manager.dump(str(tmp_path / "run"))
    assert os.path.basename(path) == "resolved_config.json"
    with open(path) as config_file:
        content = json.load(config_file)
    assert config_from_dict(content) == manager.get_config()
    reloaded = RunConfigManager(path).get_config()
    assert reloaded == manager.get_config()
