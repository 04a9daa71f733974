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

import importlib
import logging
import os
import pkgutil
import sys
from dataclasses import dataclass

__all__ = ["Variables"]

MODULES_DIR = os.path.abspath(os.path.dirname(__file__))
SRC_DIR = os.path.dirname(MODULES_DIR)
TOP_DIR = os.path.dirname(SRC_DIR)

# internal modules import each other as _core.*
for _path in (MODULES_DIR, SRC_DIR):
    if _path not in sys.path:
        sys.path.insert(0, _path)

LOG_FORMAT = \
    "[%(asctime)s] [%(thread)d] [%(name)s] [%(levelname)s] %(message)s"


@dataclass
class Variables:
    modules_dir = MODULES_DIR
    top_dir = TOP_DIR
    res_dir = os.path.join(MODULES_DIR, "_core", "resource")
    config_dir = os.path.join(TOP_DIR, "config")
    log_format = LOG_FORMAT
    log_level = logging.INFO
    # logs go to standard error only, standard output is left to data
    log_handler = "console"


def _register_tool_logger():
    from _core.constants import LogType
    from _core.logger import Log
    from _core.plugin import Plugin
    from _core.plugin import get_plugin

    if not get_plugin(Plugin.LOG, LogType.tool):
        @Plugin(type=Plugin.LOG, id=LogType.tool, enabled=True)
        class ToolLog(Log):
            pass

    get_plugin(Plugin.LOG, LogType.tool)[0].__initial__(
        Variables.log_handler, level=Variables.log_level,
        log_format=Variables.log_format)


def _import_plugin_modules():
    """
    Imports every module of the packages holding built-in cells, listeners
    and reporters so their @Plugin decorators run.
    """
    import _core.executor
    import _core.model
    import _core.report

    for package in (_core.model, _core.executor, _core.report):
        for _, name, _ in pkgutil.iter_modules(package.__path__,
                                               package.__name__ + "."):
            importlib.import_module(name)


_register_tool_logger()
_import_plugin_modules()
