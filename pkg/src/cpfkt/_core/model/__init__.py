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

from _core.model import cells  # registers the cell plugins
from _core.model.params import ModelDims
from _core.model.params import ModelParams
from _core.model.cell import StepTrace
from _core.model.cell import predict_correct
from _core.model.model import KnowledgeTracer
from _core.model.model import ForwardResult
from _core.model.checkpoint import save_checkpoint
from _core.model.checkpoint import load_checkpoint

__all__ = ["ModelDims", "ModelParams", "StepTrace", "predict_correct",
           "KnowledgeTracer", "ForwardResult", "save_checkpoint",
           "load_checkpoint", "cells"]
