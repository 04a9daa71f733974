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

import logging
import sys
from logging.handlers import RotatingFileHandler

from _core.constants import LogType
from _core.plugin import Plugin
from _core.plugin import get_plugin

__all__ = ["Log", "FrameworkLog", "platform_logger", "change_logger_level",
           "add_task_file_handler", "remove_task_file_handler"]

MAX_LOG_BYTES = 20 * 1024 * 1024
MAX_LOG_BACKUPS = 100
LEVELS = {"debug": logging.DEBUG, "info": logging.INFO,
          "warning": logging.WARNING, "error": logging.ERROR}
_DEFAULT_NAME = "cpfkt"


def _render(msg, error_no=None, **fields):
    """
    "[msg] [ErrorNo=00115, key=value, ...]"
    """
    pairs = ["%s=%s" % (key, value) for key, value in fields.items()]
    if error_no:
        pairs.insert(0, "ErrorNo=%s" % error_no)
    text = "[%s]" % msg if msg else ""
    if text and pairs:
        text = "%s [%s]" % (text, ", ".join(pairs))
    return text


class FrameworkLog:
    """
    A named logger whose keyword arguments are rendered as key=value
    pairs after the message; error and exception also carry error_no.
    """

    def __init__(self, name, level=logging.INFO, handlers=()):
        self.name = name
        self.logger = logging.Logger(name, level)
        for handler in handlers:
            self.logger.addHandler(handler)

    def set_level(self, level):
        self.logger.setLevel(level)

    def debug(self, msg, **fields):
        self.logger.debug(_render(msg, **fields))

    def info(self, msg, **fields):
        self.logger.info(_render(msg, **fields))

    def warning(self, msg, **fields):
        self.logger.warning(_render(msg, **fields))

    def error(self, msg, error_no="00000", **fields):
        self.logger.error(_render(msg, error_no, **fields))

    def exception(self, msg, error_no="00000", exc_info=True, **fields):
        self.logger.error(_render(msg, error_no, **fields),
                          exc_info=exc_info)


class Log:
    """
    Base of the tool log plugin. It owns the shared handlers, hands out
    one FrameworkLog per name and attaches the per-run file log.
    """

    def __init__(self):
        self.level = logging.INFO
        self.log_format = None
        self.handlers = []
        self.loggers = {}
        self.task_file_handler = None

    def __initial__(self, log_handler_flag, log_file=None, level=None,
                    log_format=None):
        if self.handlers:
            return
        self.log_format = log_format
        if "console" in log_handler_flag:
            handler = logging.StreamHandler(sys.stderr)
            handler.setFormatter(logging.Formatter(log_format))
            self.handlers.append(handler)
        if log_file and "file" in log_handler_flag:
            self.handlers.append(self._file_handler(log_file))
        if level:
            self.level = level
        for log in self.loggers.values():
            log.set_level(self.level)
            for handler in self.handlers:
                log.logger.addHandler(handler)

    def _file_handler(self, log_file):
        handler = RotatingFileHandler(log_file, mode="a",
                                      maxBytes=MAX_LOG_BYTES,
                                      backupCount=MAX_LOG_BACKUPS,
                                      encoding="UTF-8")
        handler.setFormatter(logging.Formatter(self.log_format))
        return handler

    def __logger__(self, name):
        log = self.loggers.get(name)
        if log is None:
            handlers = list(self.handlers)
            if self.task_file_handler is not None:
                handlers.append(self.task_file_handler)
            log = FrameworkLog(name, self.level, handlers)
            self.loggers[name] = log
        return log

    def set_level(self, level):
        self.level = level
        for log in self.loggers.values():
            log.set_level(level)

    def add_task_file_handler(self, log_file):
        self.remove_task_file_handler()
        self.task_file_handler = self._file_handler(log_file)
        for log in self.loggers.values():
            log.logger.addHandler(self.task_file_handler)

    def remove_task_file_handler(self):
        if self.task_file_handler is None:
            return
        for log in self.loggers.values():
            log.logger.removeHandler(self.task_file_handler)
        self.task_file_handler.close()
        self.task_file_handler = None


def _tool_logs():
    return [log_plugin for log_plugin in get_plugin(Plugin.LOG, LogType.tool)
            if log_plugin.get_plugin_config().get("enabled", False)]


def platform_logger(name=None):
    for log_plugin in _tool_logs():
        return log_plugin.__logger__(name or _DEFAULT_NAME)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(
        "[%(asctime)s] [%(name)s] [%(levelname)s] %(message)s"))
    return FrameworkLog(name or _DEFAULT_NAME, handlers=[handler])


def change_logger_level(level_name):
    """
    Applies a run config log_level ("debug", "info", ...) to every logger.
    """
    level = LEVELS.get(str(level_name).lower())
    if level is None:
        return
    for log_plugin in _tool_logs():
        log_plugin.set_level(level)


def add_task_file_handler(log_file=None):
    if not log_file:
        return
    for log_plugin in _tool_logs():
        log_plugin.add_task_file_handler(log_file)


def remove_task_file_handler():
    for log_plugin in _tool_logs():
        log_plugin.remove_task_file_handler()
