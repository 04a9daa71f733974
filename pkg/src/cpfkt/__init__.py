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

from importlib import metadata

from .variables import Variables
from _core.plugin import Plugin
from _core.plugin import get_plugin
from _core.logger import platform_logger
from _core.interface import LifeCycle
from _core.interface import ICell
from _core.interface import IListener
from _core.interface import IReporter
from _core.exception import ParamError
from _core.exception import DimensionError
from _core.exception import DataError
from _core.exception import NumericalError
from _core.exception import ExecuteError
from _core.constants import AblationType
from _core.constants import CellType
from _core.constants import ReviewMode
from _core.constants import ToolCommandType
from _core.constants import FileName
from _core.config.config_manager import RunConfig
from _core.config.config_manager import RunConfigManager
from _core.config.json_parser import JsonParser
from _core.autodiff import Tensor
from _core.autodiff import Parameter
from _core.autodiff import Tape
from _core.autodiff import Adam
from _core.autodiff import finite_diff_check
from _core.autodiff import ops
from _core.data import parse_interactions
from _core.data import build_dataset
from _core.data import load_dataset
from _core.data import save_dataset
from _core.data import kfold
from _core.graph import build_concept_graph
from _core.graph import export_graph
from _core.model import KnowledgeTracer
from _core.model import save_checkpoint
from _core.model import load_checkpoint
from _core.executor import bce_loss
from _core.executor import evaluate
from _core.executor import train
from _core.executor import cross_validate
from _core.executor import sweep
from _core.executor import MetricsReport
from _core.oracle import WorldSpec
from _core.oracle import generate_world
from _core.oracle import simulate_log
from _core.oracle import score_p_recovery
from _core.oracle import permutation_null_auc
from _core.report.result_reporter import ResultReporter
from _core.command.console import Console

__all__ = [
    "Variables",
    "Console",
    "platform_logger",
    "Plugin",
    "get_plugin",
    "LifeCycle",
    "ICell",
    "IListener",
    "IReporter",
    "ParamError",
    "DimensionError",
    "DataError",
    "NumericalError",
    "ExecuteError",
    "AblationType",
    "CellType",
    "ReviewMode",
    "ToolCommandType",
    "FileName",
    "RunConfig",
    "RunConfigManager",
    "JsonParser",
    "Tensor",
    "Parameter",
    "Tape",
    "Adam",
    "finite_diff_check",
    "ops",
    "parse_interactions",
    "build_dataset",
    "load_dataset",
    "save_dataset",
    "kfold",
    "build_concept_graph",
    "export_graph",
    "KnowledgeTracer",
    "save_checkpoint",
    "load_checkpoint",
    "bce_loss",
    "evaluate",
    "train",
    "cross_validate",
    "sweep",
    "MetricsReport",
    "WorldSpec",
    "generate_world",
    "simulate_log",
    "score_p_recovery",
    "permutation_null_auc",
    "ResultReporter",
]


def _load_external_plugins():
    groups = [Plugin.LOG, Plugin.CELL, Plugin.LISTENER, Plugin.REPORTER]
    entry_points = metadata.entry_points()
    for plugin_group in groups:
        if hasattr(entry_points, "select"):
            selected = entry_points.select(group=plugin_group)
        else:
            selected = entry_points.get(plugin_group, [])
        for entry_point in selected:
            entry_point.load()
    return


_load_external_plugins()
del _load_external_plugins
