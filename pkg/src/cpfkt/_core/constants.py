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

__all__ = ["LogType", "ListenerType", "ReporterType", "CellType",
           "ToolCommandType", "ActivationType", "AblationType",
           "ReviewMode", "ConfigConst", "FileName", "FilePermission",
           "ColumnConst", "TopologyType", "RelationType"]


@dataclass
class LogType:
    tool = "Tool"


@dataclass
class ListenerType:
    log = "Log"
    collect = "Collect"
    report = "Report"


@dataclass
class ReporterType:
    result = "Result"


@dataclass
class CellType(object):
    """
    CellType enumeration, also the values accepted by --mode
    """
    cpf = "cpf"
    lpkt = "lpkt"


@dataclass
class ToolCommandType(object):
    toolcmd_key_help = "help"
    toolcmd_key_ingest = "ingest"
    toolcmd_key_build_graph = "build-graph"
    toolcmd_key_train = "train"
    toolcmd_key_eval = "eval"
    toolcmd_key_cross_validate = "cross-validate"
    toolcmd_key_gradcheck = "gradcheck"
    toolcmd_key_simulate = "simulate"
    toolcmd_key_export_states = "export-states"

    @property
    def command_list(self):
        return [self.toolcmd_key_ingest, self.toolcmd_key_build_graph,
                self.toolcmd_key_train, self.toolcmd_key_eval,
                self.toolcmd_key_cross_validate, self.toolcmd_key_gradcheck,
                self.toolcmd_key_simulate, self.toolcmd_key_export_states]


@dataclass
class ActivationType(object):
    sigmoid = "sigmoid"
    tanh = "tanh"


@dataclass
class AblationType(object):
    """
    AblationType enumeration, values accepted by --ablation
    """
    full = "full"
    no_p_matrix = "P"
    no_personalization = "I"
    no_learning_module = "L"
    no_forgetting = "FP"

    @classmethod
    def values(cls):
        return [cls.full, cls.no_p_matrix, cls.no_personalization,
                cls.no_learning_module, cls.no_forgetting]


@dataclass
class ReviewMode(object):
    attention_over_past = "attention_over_past"
    literal = "literal"


@dataclass
class TopologyType(object):
    chain = "chain"
    random = "random"


@dataclass
class RelationType(object):
    mutual = "mutual"
    directed = "directed"
    unrelated = "unrelated"


@dataclass
class ColumnConst(object):
    student = "student"
    exercise = "exercise"
    concept = "concept"
    correct = "correct"
    answer_time = "answer_time"
    timestamp = "timestamp"

    @classmethod
    def required(cls):
        return [cls.student, cls.exercise, cls.concept, cls.correct,
                cls.answer_time, cls.timestamp]


@dataclass
class ConfigConst(object):
    columns = "columns"
    discretizer = "discretizer"
    model = "model"
    train = "train"
    graph = "graph"
    simulation = "simulation"
    paths = "paths"
    log_level = "log_level"

    # paths section
    data_in = "data_in"
    output_dir = "output_dir"
    checkpoint = "checkpoint"

    @classmethod
    def sections(cls):
        return [cls.columns, cls.discretizer, cls.model, cls.train,
                cls.graph, cls.simulation, cls.paths]


@dataclass
class FileName(object):
    resolved_config = "resolved_config.json"
    dataset = "dataset.jsonl"
    dataset_meta = "dataset.meta.json"
    p_matrix = "p_matrix.csv"
    t_tilde = "t_tilde.csv"
    edges = "edges.json"
    relations = "relations.json"
    checkpoint = "checkpoint.npz"
    metrics = "metrics.json"
    train_log = "train_log.csv"
    cv_report = "cv_report.json"
    sensitivity = "sensitivity.csv"
    gradcheck = "gradcheck.json"
    simulated_log = "log.csv"
    ground_truth = "ground_truth.json"
    states = "states.csv"


@dataclass
class FilePermission(object):
    mode_755 = 0o755
    mode_644 = 0o644
