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
import stat

from _core.exception import ParamError
from _core.logger import platform_logger

__all__ = ["JsonParser", "write_json"]
LOG = platform_logger("JsonParser")


class JsonParser:
    """
    This class parses a json file or string into a dict, sample:
    {
        "log_level": "info",
        "seed": 2026,
        "model": {"d": 128, "ablation": "full"},
        "train": {"lr": 0.003, "batch_size": 128}
    }
    """

    def __init__(self, path_or_content):
        self.content = {}
        self._do_parse(path_or_content)

    def _do_parse(self, path_or_content):
        try:
            if path_or_content.lstrip().startswith("{"):
                json_content = json.loads(path_or_content)
            else:
                if not os.path.exists(path_or_content):
                    raise ParamError("The json file {} does not exist".format(
                        path_or_content), error_no="00110")

                flags = os.O_RDONLY
                modes = stat.S_IWUSR | stat.S_IRUSR
                with os.fdopen(os.open(path_or_content, flags, modes),
                               "r", encoding="utf-8") as file_content:
                    json_content = json.load(file_content)
        except (TypeError, ValueError, AttributeError) as error:
            raise ParamError("json file error: %s %s" % (
                path_or_content, error), error_no="00111")
        if not isinstance(json_content, dict):
            raise ParamError("json root of %s should be an object" %
                             path_or_content, error_no="00111")
        self.content = json_content

    def get_content(self):
        return self.content


def write_json(path, content):
    """
    Writes content with sorted keys and indent 2 so reruns are
    byte-identical.
    """
    flags = os.O_WRONLY | os.O_CREAT | os.O_TRUNC
    modes = stat.S_IWUSR | stat.S_IRUSR | stat.S_IRGRP | stat.S_IROTH
    with os.fdopen(os.open(path, flags, modes), "w",
                   encoding="utf-8") as file_handler:
        json.dump(content, file_handler, sort_keys=True, indent=2)
        file_handler.write("\n")
    LOG.debug("Json written", path=path)
