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

import pytest

from _core.logger import _render
from _core.logger import add_task_file_handler
from _core.logger import change_logger_level
from _core.logger import platform_logger
from _core.logger import remove_task_file_handler


def test_render_fields_and_error_no():
    assert _render("Loaded", rows=3) == "[Loaded] [rows=3]"
    assert _render("Bad value", error_no="00115", key="d") == \
        "[Bad value] [ErrorNo=00115, key=d]"
    assert _render("Plain") == "[Plain]"


@pytest.fixture
def task_log(tmp_path):
    log_file = tmp_path / "run.log"
    add_task_file_handler(str(log_file))
    yield log_file
    remove_task_file_handler()
    change_logger_level("info")


def test_task_file_receives_records(task_log):
    log = platform_logger("LoggerTest")
    log.info("Epoch finished", epoch=2)
    log.error("Fold failed", error_no="00150")
    remove_task_file_handler()
    text = task_log.read_text(encoding="UTF-8")
    assert "[Epoch finished] [epoch=2]" in text
    assert "[Fold failed] [ErrorNo=00150]" in text


def test_level_change_filters_info(task_log):
    log = platform_logger("LoggerTest")
    change_logger_level("error")
    log.info("Hidden")
    log.error("Shown")
    remove_task_file_handler()
    text = task_log.read_text(encoding="UTF-8")
    assert "Hidden" not in text
    assert "Shown" in text


def test_unknown_level_is_ignored(task_log):
    log = platform_logger("LoggerTest")
    change_logger_level("chatty")
    log.info("Still visible")
    remove_task_file_handler()
    assert "Still visible" in task_log.read_text(encoding="UTF-8")
