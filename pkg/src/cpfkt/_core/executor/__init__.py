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

from _core.executor.concurrent import Concurrent
from _core.executor.loss import bce_loss
from _core.executor.evaluator import MetricsReport
from _core.executor.evaluator import compute_metrics
from _core.executor.evaluator import evaluate
from _core.executor.trainer import EpochRecord
from _core.executor.trainer import TrainResult
from _core.executor.trainer import train
from _core.executor.cross_validation import CrossValidationReport
from _core.executor.cross_validation import cross_validate
from _core.executor.cross_validation import sweep

__all__ = ["Concurrent", "bce_loss", "MetricsReport", "compute_metrics",
           "evaluate", "EpochRecord", "TrainResult", "train",
           "CrossValidationReport", "cross_validate", "sweep"]
