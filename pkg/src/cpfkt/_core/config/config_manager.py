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
from dataclasses import asdict
from dataclasses import dataclass
from dataclasses import field
from dataclasses import fields

from _core.config.json_parser import JsonParser
from _core.config.json_parser import write_json
from _core.constants import AblationType
from _core.constants import CellType
from _core.constants import ConfigConst
from _core.constants import FileName
from _core.constants import ReviewMode
from _core.constants import TopologyType
from _core.exception import ParamError
from _core.logger import platform_logger

__all__ = ["ColumnMapping", "DiscretizerSpec", "ModelConfig", "TrainConfig",
           "GraphConfig", "SimulationConfig", "PathConfig", "RunConfig",
           "RunConfigManager", "config_from_dict"]
LOG = platform_logger("ConfigManager")


def _check(condition, message):
    if not condition:
        raise ParamError(message, error_no="00115")


@dataclass
class ColumnMapping:
    student: str = "student_id"
    exercise: str = "exercise_id"
    concept: str = "concept_id"
    correct: str = "correct"
    answer_time: str = "answer_time"
    timestamp: str = "timestamp"
    # multiply answer_time by this to get seconds, 0.001 for milliseconds
    answer_time_scale: float = 1.0
    # "12;15" keeps the first concept when set to ";"
    concept_separator: str = ""
    # empty: epoch seconds; "auto": parsed date strings; else strftime
    timestamp_format: str = ""

    def validate(self):
        _check(self.answer_time_scale > 0,
               "columns.answer_time_scale must be positive")


@dataclass
class DiscretizerSpec:
    answer_time_cap: int = 3600
    interval_time_cap: int = 43200
    difficulty_buckets: int = 100
    accuracy_buckets: int = 100
    window: int = 100

    def validate(self):
        _check(self.answer_time_cap > 0 and self.interval_time_cap > 0,
               "discretizer caps must be positive")
        _check(self.difficulty_buckets >= 2 and self.accuracy_buckets >= 2,
               "discretizer bucket counts must be >= 2")
        _check(self.window > 1, "discretizer.window must be > 1")

    @property
    def answer_vocab(self):
        return self.answer_time_cap + 1

    @property
    def interval_vocab(self):
        return self.interval_time_cap + 1


@dataclass
class ModelConfig:
    d: int = 128
    d_a: int = 50
    review_window: int = 50
    alpha: float = 1.0 / 3.0
    beta: float = 1.0 / 3.0
    mu: float = 1.0 / 3.0
    delta: float = 2.0
    lambda_: float = 0.0
    gamma: float = 0.03
    rho: float = 0.0
    dropout: float = 0.2
    ablation: str = AblationType.full
    mode: str = CellType.cpf
    review_mode: str = ReviewMode.attention_over_past

    def validate(self):
        _check(self.d >= 1 and self.d_a >= 1,
               "model.d and model.d_a must be >= 1")
        _check(self.review_window >= 0, "model.review_window must be >= 0")
        _check(0.0 <= self.dropout < 1.0, "model.dropout must be in [0, 1)")
        _check(self.delta > 0, "model.delta must be positive")
        _check(self.gamma >= 0, "model.gamma must be >= 0")
        _check(0.0 <= self.rho <= 1.0, "model.rho must be in [0, 1]")
        _check(self.ablation in AblationType.values(),
               "model.ablation must be one of %s" % AblationType.values())
        _check(self.mode in (CellType.cpf, CellType.lpkt),
               "model.mode must be cpf or lpkt")
        _check(self.review_mode in (ReviewMode.attention_over_past,
                                    ReviewMode.literal),
               "model.review_mode must be attention_over_past or literal")


@dataclass
class TrainConfig:
    lr: float = 3e-3
    batch_size: int = 128
    epochs: int = 100
    patience: int = 10
    l2_lambda: float = 1e-5
    weight_decay: float = 0.0
    clip_norm: float = 5.0
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8
    folds: int = 5
    val_ratio: float = 0.2
    # -1 runs every fold in cross-validate and fold 0 in train
    fold: int = -1
    workers: int = 1
    precision: str = "float64"

    def validate(self):
        _check(self.lr >= 0, "train.lr must be >= 0")
        if self.lr == 0:
            LOG.warning("train.lr is 0, parameters will not change")
        _check(self.batch_size >= 1, "train.batch_size must be >= 1")
        _check(self.epochs >= 1, "train.epochs must be >= 1")
        _check(self.patience >= 1, "train.patience must be >= 1")
        _check(self.l2_lambda >= 0 and self.weight_decay >= 0,
               "train.l2_lambda and train.weight_decay must be >= 0")
        _check(self.folds >= 2, "train.folds must be >= 2")
        _check(0.0 <= self.val_ratio < 1.0,
               "train.val_ratio must be in [0, 1)")
        _check(-1 <= self.fold < self.folds,
               "train.fold must be -1 or a fold index below %d" % self.folds)
        _check(self.workers >= 1, "train.workers must be >= 1")
        _check(self.precision in ("float64", "float32"),
               "train.precision must be float64 or float32")


@dataclass
class GraphConfig:
    threshold_power: float = 3.0

    def validate(self):
        _check(self.threshold_power > 0, "graph.threshold_power must be > 0")


@dataclass
class SimulationConfig:
    concepts: int = 10
    edges: int = 9
    topology: str = TopologyType.chain
    exercises: int = 30
    students: int = 200
    steps: int = 200
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

    def validate(self):
        _check(self.concepts >= 1, "simulation.concepts must be >= 1")
        _check(self.edges >= 0, "simulation.edges must be >= 0")
        _check(self.topology in (TopologyType.chain, TopologyType.random),
               "simulation.topology must be chain or random")
        _check(self.exercises >= self.concepts,
               "simulation.exercises must cover every concept")
        _check(self.students >= 1 and self.steps >= 1,
               "simulation.students and simulation.steps must be >= 1")
        _check(0.0 <= self.ability_low <= self.ability_high <= 1.0,
               "simulation abilities must satisfy 0 <= low <= high <= 1")
        _check(0.0 <= self.initial_mastery <= 1.0,
               "simulation.initial_mastery must be in [0, 1]")
        _check(self.learn_rate >= 0 and self.base_forget_rate >= 0 and
               self.coupling >= 0, "simulation rates must be >= 0")
        _check(0.0 <= self.review_prob <= 1.0,
               "simulation.review_prob must be in [0, 1]")


@dataclass
class PathConfig:
    data_in: str = ""
    output_dir: str = "output"
    checkpoint: str = ""

    def validate(self):
        pass


_SECTIONS = {
    ConfigConst.columns: ColumnMapping,
    ConfigConst.discretizer: DiscretizerSpec,
    ConfigConst.model: ModelConfig,
    ConfigConst.train: TrainConfig,
    ConfigConst.graph: GraphConfig,
    ConfigConst.simulation: SimulationConfig,
    ConfigConst.paths: PathConfig,
}
# json keys that are python keywords
_KEY_ALIASES = {"lambda": "lambda_"}
_TOP_LEVEL = (ConfigConst.log_level, "seed")


@dataclass
class RunConfig:
    log_level: str = "info"
    seed: int = 2026
    columns: ColumnMapping = field(default_factory=ColumnMapping)
    discretizer: DiscretizerSpec = field(default_factory=DiscretizerSpec)
    model: ModelConfig = field(default_factory=ModelConfig)
    train: TrainConfig = field(default_factory=TrainConfig)
    graph: GraphConfig = field(default_factory=GraphConfig)
    simulation: SimulationConfig = field(default_factory=SimulationConfig)
    paths: PathConfig = field(default_factory=PathConfig)

    def validate(self):
        _check(str(self.log_level).lower() in ("debug", "info", "warning",
                                               "error"),
               "log_level must be debug, info, warning or error")
        _check(isinstance(self.seed, int) and self.seed >= 0,
               "seed must be a non-negative integer")
        for name in _SECTIONS:
            getattr(self, name).validate()

    def to_dict(self):
        content = asdict(self)
        for section in _SECTIONS:
            for json_key, attr in _KEY_ALIASES.items():
                if attr in content[section]:
                    content[section][json_key] = content[section].pop(attr)
        return content


def _build_section(name, values):
    section_cls = _SECTIONS[name]
    known = {item.name: item.type for item in fields(section_cls)}
    kwargs = {}
    for key, value in values.items():
        attr = _KEY_ALIASES.get(key, key)
        if attr not in known:
            raise ParamError("unknown key '%s.%s' in config" % (name, key),
                             error_no="00115")
        kwargs[attr] = _coerce(name, key, value, known[attr])
    return section_cls(**kwargs)


def _coerce(section, key, value, annotation):
    type_name = annotation if isinstance(annotation, str) else \
        getattr(annotation, "__name__", "")
    try:
        if type_name == "int":
            if isinstance(value, bool) or float(value) != int(value):
                raise ValueError(value)
            return int(value)
        if type_name == "float":
            if isinstance(value, bool):
                raise ValueError(value)
            return float(value)
        if type_name == "str":
            if not isinstance(value, str):
                raise ValueError(value)
            return value
    except (TypeError, ValueError) as error:
        raise ParamError("'%s.%s' expects %s, got %r" % (
            section, key, type_name, value), error_no="00115") from error
    return value


class RunConfigManager(object):
    """
    Loads a run configuration json, applies command line overrides given as
    dotted keys ("model.ablation", "seed", ...) and validates the result.
    """

    def __init__(self, config_file="", overrides=None):
        self.file_path = config_file
        content = JsonParser(config_file).get_content() if config_file \
            else {}
        self.config = self._build(content)
        if overrides:
            self.apply_overrides(overrides)
        self.config.validate()
        LOG.debug("Run config resolved", path=config_file or "<defaults>")

    @classmethod
    def _build(cls, content):
        kwargs = {}
        for key, value in content.items():
            if key in _TOP_LEVEL:
                kwargs[key] = value
            elif key in _SECTIONS:
                if not isinstance(value, dict):
                    raise ParamError("'%s' should be an object" % key,
                                     error_no="00115")
                kwargs[key] = _build_section(key, value)
            else:
                raise ParamError("unknown key '%s' in config" % key,
                                 error_no="00115")
        return RunConfig(**kwargs)

    def apply_overrides(self, overrides):
        for dotted_key, value in overrides.items():
            if value is None:
                continue
            if "." not in dotted_key:
                if dotted_key not in _TOP_LEVEL:
                    raise ParamError("unknown override '%s'" % dotted_key,
                                     error_no="00115")
                setattr(self.config, dotted_key, value)
                continue
            section_name, key = dotted_key.split(".", 1)
            if section_name not in _SECTIONS:
                raise ParamError("unknown override '%s'" % dotted_key,
                                 error_no="00115")
            section = getattr(self.config, section_name)
            merged = asdict(section)
            merged[_KEY_ALIASES.get(key, key)] = value
            values = {_reverse_alias(attr): item
                      for attr, item in merged.items()}
            setattr(self.config, section_name,
                    _build_section(section_name, values))

    def get_config(self):
        return self.config

    def dump(self, output_dir):
        os.makedirs(output_dir, exist_ok=True)
        path = os.path.join(output_dir, FileName.resolved_config)
        write_json(path, self.config.to_dict())
        return path


def _reverse_alias(attr):
    for json_key, name in _KEY_ALIASES.items():
        if name == attr:
            return json_key
    return attr


def config_from_dict(content):
    """
    Rebuilds and validates a RunConfig from its to_dict() form.
    """
    config = RunConfigManager._build(content)
    config.validate()
    return config
