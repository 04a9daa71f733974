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

import pandas as pd

from _core.config.json_parser import write_json
from _core.constants import FileName
from _core.constants import ReporterType
from _core.interface import IReporter
from _core.logger import platform_logger
from _core.plugin import Plugin

__all__ = ["ResultReporter", "write_frame", "TRAIN_LOG_COLUMNS",
           "SENSITIVITY_COLUMNS", "STATE_COLUMNS"]

LOG = platform_logger("ResultReporter")

TRAIN_LOG_COLUMNS = ["fold", "epoch", "loss", "batches", "grad_norm",
                     "val_auc", "val_acc", "val_rmse", "val_r2"]
SENSITIVITY_COLUMNS = ["parameter", "value", "auc", "acc", "rmse", "r2"]
STATE_COLUMNS = ["student_id", "window_index", "step", "exercise", "concept",
                 "correct", "y", "pooled_norm", "w_f", "learning_gate_mean",
                 "forgetting_gate_mean"]


def write_frame(path, rows, columns):
    frame = pd.DataFrame(rows, columns=columns)
    frame.to_csv(path, index=False, float_format="%.10g",
                 lineterminator="\n")
    return path


@Plugin(type=Plugin.REPORTER, id=ReporterType.result)
class ResultReporter(IReporter):
    """
    Writes whichever run artifacts are passed as keyword arguments:
    metrics, train_log, cv_report, sensitivity, states, gradcheck.
    """

    def __generate_reports__(self, report_path, **kwargs):
        if not report_path:
            LOG.error("Report path is wrong", error_no="00110",
                      ReportPath=report_path)
            return []
        os.makedirs(report_path, exist_ok=True)
        written = []
        if kwargs.get("metrics") is not None:
            written.append(self._write_json(report_path, FileName.metrics,
                                            kwargs["metrics"]))
        if kwargs.get("train_log") is not None:
            rows = [record.to_dict() for record in kwargs["train_log"]]
            written.append(write_frame(
                os.path.join(report_path, FileName.train_log), rows,
                TRAIN_LOG_COLUMNS))
        if kwargs.get("cv_report") is not None:
            written.append(self._write_json(report_path, FileName.cv_report,
                                            kwargs["cv_report"].to_dict()))
        if kwargs.get("sensitivity") is not None:
            written.append(write_frame(
                os.path.join(report_path, FileName.sensitivity),
                kwargs["sensitivity"], SENSITIVITY_COLUMNS))
        if kwargs.get("states") is not None:
            written.append(write_frame(
                os.path.join(report_path, FileName.states),
                kwargs["states"], STATE_COLUMNS))
        if kwargs.get("gradcheck") is not None:
            written.append(self._write_json(report_path, FileName.gradcheck,
                                            kwargs["gradcheck"].to_dict()))
        for path in written:
            LOG.info("Report generated", path=path)
        return written

    @staticmethod
    def _write_json(report_path, name, content):
        path = os.path.join(report_path, name)
        write_json(path, content)
        return path
