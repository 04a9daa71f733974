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

import threading
from collections import namedtuple

import numpy as np

from _core.exception import ParamError

__all__ = ["Tensor", "Parameter", "Tape", "IndexedGrad", "TapeRecord",
           "current_tape", "set_default_dtype", "get_default_dtype"]

_LOCAL = threading.local()
_DTYPES = {"float64": np.float64, "float32": np.float32}
_DEFAULT_DTYPE = {"dtype": np.float64}

TapeRecord = namedtuple("TapeRecord", "output inputs backward")
IndexedGrad = namedtuple("IndexedGrad", "indices values")


def set_default_dtype(name):
    if name not in _DTYPES:
        raise ParamError("unsupported precision '%s', expected one of %s" %
                         (name, sorted(_DTYPES)), error_no="00115")
    _DEFAULT_DTYPE["dtype"] = _DTYPES[name]


def get_default_dtype():
    return _DEFAULT_DTYPE["dtype"]


def current_tape():
    return getattr(_LOCAL, "tape", None)


class Tensor:
    """
    A dense array that can take part in reverse-mode differentiation.
    Operations live in ops; this class only holds the value.
    """
    __slots__ = ("data", "grad", "requires_grad", "is_leaf", "name")
    __array_priority__ = 100

    def __init__(self, data, requires_grad=False, name=""):
        self.data = np.asarray(data, dtype=get_default_dtype())
        self.grad = None
        self.requires_grad = requires_grad
        self.is_leaf = True
        self.name = name

    def __repr__(self):
        return "Tensor(shape=%s, requires_grad=%s)" % (
            self.shape, self.requires_grad)

    @property
    def shape(self):
        return self.data.shape

    @property
    def ndim(self):
        return self.data.ndim

    @property
    def size(self):
        return self.data.size

    def item(self):
        return float(self.data.reshape(-1)[0])

    def numpy(self):
        return self.data.copy()


class Parameter(Tensor):
    """
    A trainable tensor with its gradient and Adam moment buffers.
    """
    __slots__ = ("adam_m", "adam_v")

    def __init__(self, data, name=""):
        super().__init__(data, requires_grad=True, name=name)
        self.grad = np.zeros_like(self.data)
        self.adam_m = np.zeros_like(self.data)
        self.adam_v = np.zeros_like(self.data)

    def __repr__(self):
        return "Parameter(name=%s, shape=%s)" % (self.name, self.shape)

    def zero_grad(self):
        self.grad.fill(0.0)


class Tape:
    """
    Ordered record of differentiable operations. Only operations executed
    while the tape is active are recorded:

        with Tape() as tape:
            loss = closure()
        tape.backward(loss)
    """

    def __init__(self):
        self.records = []
        self._previous = None

    def __enter__(self):
        self._previous = current_tape()
        _LOCAL.tape = self
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        _LOCAL.tape = self._previous
        self._previous = None
        return False

    def __len__(self):
        return len(self.records)

    def record(self, output, inputs, backward):
        self.records.append(TapeRecord(output, tuple(inputs), backward))

    def reset(self):
        self.records = []

    def backward(self, loss):
        if not isinstance(loss, Tensor) or loss.size != 1:
            shape = getattr(loss, "shape", type(loss).__name__)
            raise ParamError("backward needs a scalar loss, got shape %s" %
                             (shape,))
        pending = {id(loss): np.ones_like(loss.data)}
        for record in reversed(self.records):
            grad = pending.pop(id(record.output), None)
            if grad is None:
                continue
            input_grads = record.backward(grad)
            for tensor, input_grad in zip(record.inputs, input_grads):
                if input_grad is None or not tensor.requires_grad:
                    continue
                if tensor.is_leaf:
                    _accumulate_leaf(tensor, input_grad)
                else:
                    _accumulate_pending(pending, tensor, input_grad)
        self.reset()


def _densify(tensor, input_grad):
    if isinstance(input_grad, IndexedGrad):
        dense = np.zeros_like(tensor.data)
        np.add.at(dense, input_grad.indices, input_grad.values)
        return dense
    return input_grad


def _accumulate_leaf(tensor, input_grad):
    if tensor.grad is None:
        tensor.grad = np.zeros_like(tensor.data)
    if isinstance(input_grad, IndexedGrad):
        # sparse rows, embedding tables are too large to densify per step
        np.add.at(tensor.grad, input_grad.indices, input_grad.values)
    else:
        tensor.grad += input_grad


def _accumulate_pending(pending, tensor, input_grad):
    input_grad = _densify(tensor, input_grad)
    key = id(tensor)
    if key in pending:
        pending[key] = pending[key] + input_grad
    else:
        pending[key] = input_grad
