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

from _core.autodiff.tensor import Tensor
from _core.autodiff.tensor import Parameter
from _core.autodiff.tensor import Tape
from _core.autodiff.tensor import IndexedGrad
from _core.autodiff.tensor import current_tape
from _core.autodiff.tensor import set_default_dtype
from _core.autodiff.tensor import get_default_dtype
from _core.autodiff.optim import Adam
from _core.autodiff.optim import clip_grad_norm
from _core.autodiff.gradcheck import finite_diff_check
from _core.autodiff.gradcheck import GradCheckReport
from _core.autodiff import ops

__all__ = ["Tensor", "Parameter", "Tape", "IndexedGrad", "current_tape",
           "set_default_dtype", "get_default_dtype", "Adam", "clip_grad_norm",
           "finite_diff_check", "GradCheckReport", "ops"]
