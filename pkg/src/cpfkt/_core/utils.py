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

import argparse
import os
import sys

from _core.exception import ParamError
from _core.logger import platform_logger

__all__ = ["get_version", "get_instance_name", "is_python_satisfied",
           "parse_number_list", "NumberListAction", "is_csv_file"]

LOG = platform_logger("Utils")
MIN_PYTHON = (3, 8)


def is_csv_file(path):
    return os.path.isfile(path) and path.lower().endswith(".csv")


def is_python_satisfied():
    if sys.version_info[:2] >= MIN_PYTHON:
        return True
    LOG.error("Python %s or later is required" %
              ".".join(str(part) for part in MIN_PYTHON),
              found=sys.version.split()[0])
    return False


def get_version():
    """
    Version from resource/version.txt ("cpfkt-v0.1.0"), or "" without it.
    """
    from cpfkt.variables import Variables
    version_file = os.path.join(Variables.res_dir, "version.txt")
    if not os.path.isfile(version_file):
        return ""
    with open(version_file, encoding="utf-8") as handle:
        for line in handle:
            if "-v" in line:
                return line.strip().split("-v", 1)[1]
    return ""


def get_instance_name(instance):
    return instance.__class__.__name__


def parse_number_list(value, cast=float):
    """
    "0,10,30" -> [0, 10, 30]; raises ParamError on an empty or bad item.
    """
    items = [item.strip() for item in str(value).split(",")]
    if not items or any(not item for item in items):
        raise ParamError("'%s' is not a comma separated list" % value,
                         error_no="00115")
    try:
        return [cast(item) for item in items]
    except ValueError as error:
        raise ParamError("'%s' holds a value that is not a %s" % (
            value, cast.__name__), error_no="00115") from error


class NumberListAction(argparse.Action):
    """
    Stores a comma separated flag value as a list of numbers; the type
    comes from the action's `type` argument, int or float.
    """

    def __init__(self, option_strings, dest, **kwargs):
        self.cast = kwargs.pop("type", float)
        super().__init__(option_strings, dest, **kwargs)

    def __call__(self, parser, namespace, values, option_string=None):
        try:
            setattr(namespace, self.dest,
                    parse_number_list(values, self.cast))
        except ParamError as error:
            parser.error("%s: %s" % (option_string, error))
