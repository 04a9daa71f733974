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

import sys

from cpfkt import Console
from cpfkt import platform_logger
from _core.utils import get_version

LOG = platform_logger("Main")


def main_process(command=None):
    """
    Entry point of the cpf command; returns the exit status.
    """
    LOG.debug("cpfkt %s starting" % get_version())
    if command:
        args = str(command).split()
    else:
        args = sys.argv[1:]
    return Console().console(args)


if __name__ == "__main__":
    sys.exit(main_process())
