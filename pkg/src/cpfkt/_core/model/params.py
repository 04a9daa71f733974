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

from collections import OrderedDict
from dataclasses import dataclass

import numpy as np

from _core.autodiff import Parameter
from _core.exception import DimensionError

__all__ = ["ModelDims", "ModelParams", "xavier_uniform"]


@dataclass
class ModelDims:
    """
    Vocabulary sizes the parameter shapes depend on.
    """
    num_exercises: int
    num_concepts: int
    answer_vocab: int
    interval_vocab: int
    difficulty_buckets: int
    accuracy_buckets: int

    def to_dict(self):
        return dict(self.__dict__)


def xavier_uniform(shape, rng):
    fan_in = shape[0]
    fan_out = shape[1] if len(shape) > 1 else 1
    bound = np.sqrt(6.0 / (fan_in + fan_out))
    return rng.uniform(-bound, bound, size=shape)


class ModelParams:
    """
    Named parameter blocks in allocation order.
    """

    def __init__(self, blocks=None):
        self.blocks = OrderedDict(blocks or [])

    @classmethod
    def allocate(cls, shapes, rng):
        blocks = []
        for name, shape, kind in shapes:
            if kind == "bias":
                data = np.zeros(shape)
            else:
                data = xavier_uniform(shape, rng)
            blocks.append((name, Parameter(data, name=name)))
        return cls(blocks)

    def __getitem__(self, name):
        return self.blocks[name]

    def __contains__(self, name):
        return name in self.blocks

    def __iter__(self):
        return iter(self.blocks.values())

    def __len__(self):
        return len(self.blocks)

    def names(self):
        return list(self.blocks.keys())

    def zero_grad(self):
        for param in self.blocks.values():
            param.zero_grad()

    def snapshot(self):
        return {name: param.data.copy() for name, param in
                self.blocks.items()}

    def restore(self, arrays):
        for name, param in self.blocks.items():
            value = np.asarray(arrays[name])
            if value.shape != param.shape:
                raise DimensionError("parameter %s: stored shape %s does not "
                                     "match %s" % (name, value.shape,
                                                   param.shape))
            param.data[...] = value

    def all_finite(self):
        return all(np.all(np.isfinite(param.data))
                   for param in self.blocks.values())
