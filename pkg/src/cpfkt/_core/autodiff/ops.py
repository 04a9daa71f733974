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

import numpy as np

from _core.autodiff.tensor import IndexedGrad
from _core.autodiff.tensor import Tensor
from _core.autodiff.tensor import current_tape
from _core.constants import ActivationType
from _core.exception import DimensionError
from _core.exception import ParamError

__all__ = ["as_tensor", "constant", "add", "sub", "mul", "div", "neg",
           "matmul", "linear", "activate", "sigmoid", "tanh", "softmax",
           "concat", "stack", "reshape", "expand", "take", "pool", "outer",
           "sum", "mean", "norm", "cosine", "log", "clip", "dropout",
           "square_sum"]


def as_tensor(value):
    if isinstance(value, Tensor):
        return value
    return Tensor(value)


def constant(value):
    return Tensor(value, requires_grad=False)


def _result(data, inputs, backward):
    requires_grad = any(tensor.requires_grad for tensor in inputs)
    out = Tensor(data, requires_grad=requires_grad)
    out.is_leaf = False
    tape = current_tape()
    if requires_grad and tape is not None:
        tape.record(out, inputs, backward)
    return out


def _unbroadcast(grad, shape):
    while grad.ndim > len(shape):
        grad = grad.sum(axis=0)
    for axis, size in enumerate(shape):
        if size == 1 and grad.shape[axis] != 1:
            grad = grad.sum(axis=axis, keepdims=True)
    return grad


def _broadcast_shape(op_name, left, right):
    try:
        return np.broadcast_shapes(left.shape, right.shape)
    except ValueError as error:
        raise DimensionError("%s: shapes %s and %s do not broadcast" % (
            op_name, left.shape, right.shape)) from error


def add(left, right):
    left, right = as_tensor(left), as_tensor(right)
    _broadcast_shape("add", left, right)

    def backward(grad):
        return (_unbroadcast(grad, left.shape),
                _unbroadcast(grad, right.shape))
    return _result(left.data + right.data, (left, right), backward)


def sub(left, right):
    left, right = as_tensor(left), as_tensor(right)
    _broadcast_shape("sub", left, right)

    def backward(grad):
        return (_unbroadcast(grad, left.shape),
                _unbroadcast(-grad, right.shape))
    return _result(left.data - right.data, (left, right), backward)


def mul(left, right):
    left, right = as_tensor(left), as_tensor(right)
    _broadcast_shape("mul", left, right)

    def backward(grad):
        return (_unbroadcast(grad * right.data, left.shape),
                _unbroadcast(grad * left.data, right.shape))
    return _result(left.data * right.data, (left, right), backward)


def div(left, right):
    left, right = as_tensor(left), as_tensor(right)
    _broadcast_shape("div", left, right)

    def backward(grad):
        return (_unbroadcast(grad / right.data, left.shape),
                _unbroadcast(-grad * left.data / np.square(right.data),
                             right.shape))
    return _result(left.data / right.data, (left, right), backward)


def neg(value):
    value = as_tensor(value)
    return _result(-value.data, (value,), lambda grad: (-grad,))


def matmul(value, weight):
    """
    value[..., m] @ weight[m, n] -> [..., n]
    """
    value, weight = as_tensor(value), as_tensor(weight)
    if weight.ndim != 2 or value.ndim < 1 or \
            value.shape[-1] != weight.shape[0]:
        raise DimensionError("matmul: shape %s does not conform to %s" % (
            value.shape, weight.shape))

    def backward(grad):
        flat_value = value.data.reshape(-1, weight.shape[0])
        flat_grad = grad.reshape(-1, weight.shape[1])
        return grad @ weight.data.T, flat_value.T @ flat_grad
    return _result(value.data @ weight.data, (value, weight), backward)


def linear(value, weight, bias):
    """
    value[..., m] @ weight[m, n] + bias[n]
    """
    value, weight, bias = as_tensor(value), as_tensor(weight), \
        as_tensor(bias)
    if weight.ndim != 2 or value.shape[-1:] != weight.shape[:1]:
        raise DimensionError("linear: input shape %s does not conform to "
                             "weight shape %s" % (value.shape, weight.shape))
    if bias.shape != weight.shape[1:]:
        raise DimensionError("linear: bias shape %s does not conform to "
                             "weight shape %s" % (bias.shape, weight.shape))

    def backward(grad):
        flat_value = value.data.reshape(-1, weight.shape[0])
        flat_grad = grad.reshape(-1, weight.shape[1])
        return (grad @ weight.data.T, flat_value.T @ flat_grad,
                flat_grad.sum(axis=0))
    return _result(value.data @ weight.data + bias.data,
                   (value, weight, bias), backward)


def _stable_sigmoid(data):
    out = np.empty_like(data)
    positive = data >= 0
    out[positive] = 1.0 / (1.0 + np.exp(-data[positive]))
    exp_data = np.exp(data[~positive])
    out[~positive] = exp_data / (1.0 + exp_data)
    return out


def sigmoid(value):
    value = as_tensor(value)
    out_data = _stable_sigmoid(value.data)
    return _result(out_data, (value,),
                   lambda grad: (grad * out_data * (1.0 - out_data),))


def tanh(value):
    value = as_tensor(value)
    out_data = np.tanh(value.data)
    return _result(out_data, (value,),
                   lambda grad: (grad * (1.0 - np.square(out_data)),))


def activate(value, kind):
    if kind == ActivationType.sigmoid:
        return sigmoid(value)
    if kind == ActivationType.tanh:
        return tanh(value)
    raise ParamError("unknown activation '%s'" % kind)


def softmax(value, axis=-1):
    value = as_tensor(value)
    if value.ndim == 0 or value.shape[axis] == 0:
        raise ParamError("softmax of an empty vector")
    shifted = value.data - value.data.max(axis=axis, keepdims=True)
    exp_data = np.exp(shifted)
    out_data = exp_data / exp_data.sum(axis=axis, keepdims=True)

    def backward(grad):
        inner = (grad * out_data).sum(axis=axis, keepdims=True)
        return (out_data * (grad - inner),)
    return _result(out_data, (value,), backward)


def concat(values, axis=-1):
    values = [as_tensor(value) for value in values]
    try:
        out_data = np.concatenate([value.data for value in values],
                                  axis=axis)
    except ValueError as error:
        raise DimensionError("concat: shapes %s do not conform" % (
            [value.shape for value in values],)) from error
    sizes = [value.shape[axis] for value in values]
    offsets = np.cumsum(sizes)[:-1]

    def backward(grad):
        return tuple(np.split(grad, offsets, axis=axis))
    return _result(out_data, values, backward)


def stack(values, axis=0):
    values = [as_tensor(value) for value in values]
    try:
        out_data = np.stack([value.data for value in values], axis=axis)
    except ValueError as error:
        raise DimensionError("stack: shapes %s do not conform" % (
            [value.shape for value in values],)) from error

    def backward(grad):
        return tuple(np.moveaxis(grad, axis, 0))
    return _result(out_data, values, backward)


def reshape(value, shape):
    value = as_tensor(value)
    old_shape = value.shape
    try:
        out_data = value.data.reshape(shape)
    except ValueError as error:
        raise DimensionError("reshape: cannot view %s as %s" % (
            old_shape, tuple(shape))) from error
    return _result(out_data, (value,),
                   lambda grad: (grad.reshape(old_shape),))


def expand(value, shape):
    value = as_tensor(value)
    try:
        out_data = np.broadcast_to(value.data, shape)
    except ValueError as error:
        raise DimensionError("expand: cannot broadcast %s to %s" % (
            value.shape, tuple(shape))) from error
    return _result(out_data, (value,),
                   lambda grad: (_unbroadcast(grad, value.shape),))


def take(table, indices):
    """
    Row lookup table[indices]; the gradient stays sparse.
    """
    table = as_tensor(table)
    indices = np.asarray(indices, dtype=np.int64)
    if indices.size and (indices.min() < 0 or
                         indices.max() >= table.shape[0]):
        raise IndexError("index out of range for table %s with %d rows" % (
            table.name or "embedding", table.shape[0]))
    return _result(table.data[indices], (table,),
                   lambda grad: (IndexedGrad(indices, grad),))


def pool(weights, rows):
    """
    weights[..., k] . rows[..., k, d] -> [..., d]
    """
    weights, rows = as_tensor(weights), as_tensor(rows)
    if rows.shape[:-1] != weights.shape:
        raise DimensionError("pool: weights %s do not match rows %s" % (
            weights.shape, rows.shape))

    def backward(grad):
        return (np.einsum("...d,...kd->...k", grad, rows.data),
                np.einsum("...k,...d->...kd", weights.data, grad))
    return _result(np.einsum("...k,...kd->...d", weights.data, rows.data),
                   (weights, rows), backward)


def outer(left, right):
    """
    left[..., k] x right[..., d] -> [..., k, d]
    """
    left, right = as_tensor(left), as_tensor(right)
    if left.shape[:-1] != right.shape[:-1]:
        raise DimensionError("outer: shapes %s and %s do not conform" % (
            left.shape, right.shape))

    def backward(grad):
        return (np.einsum("...kd,...d->...k", grad, right.data),
                np.einsum("...kd,...k->...d", grad, left.data))
    return _result(np.einsum("...k,...d->...kd", left.data, right.data),
                   (left, right), backward)


def sum(value, axis=None, keepdims=False):
    value = as_tensor(value)
    shape = value.shape

    def backward(grad):
        if axis is not None and not keepdims:
            grad = np.expand_dims(grad, axis)
        return (np.broadcast_to(grad, shape),)
    return _result(value.data.sum(axis=axis, keepdims=keepdims), (value,),
                   backward)


def mean(value, axis=None, keepdims=False):
    value = as_tensor(value)
    if axis is None:
        count = value.size
    else:
        axes = axis if isinstance(axis, tuple) else (axis,)
        count = int(np.prod([value.shape[item] for item in axes]))
    return mul(sum(value, axis=axis, keepdims=keepdims), 1.0 / max(count, 1))


def square_sum(value):
    value = as_tensor(value)
    return _result(np.sum(np.square(value.data)), (value,),
                   lambda grad: (2.0 * grad * value.data,))


def norm(value, axis=-1, keepdims=True):
    """
    Euclidean norm; the gradient at a zero vector is taken as zero.
    """
    value = as_tensor(value)
    out_data = np.sqrt(np.sum(np.square(value.data), axis=axis,
                              keepdims=True))

    def backward(grad):
        if not keepdims:
            grad = np.expand_dims(grad, axis)
        safe = np.where(out_data > 0, out_data, 1.0)
        return (np.where(out_data > 0, grad * value.data / safe, 0.0),)
    if not keepdims:
        return _result(np.squeeze(out_data, axis=axis), (value,), backward)
    return _result(out_data, (value,), backward)


def cosine(left, right, axis=-1):
    """
    Cosine similarity along axis; defined as 0 when either side has
    zero norm.
    """
    left, right = as_tensor(left), as_tensor(right)
    _broadcast_shape("cosine", left, right)
    left_norm = np.sqrt(np.sum(np.square(left.data), axis=axis,
                               keepdims=True))
    right_norm = np.sqrt(np.sum(np.square(right.data), axis=axis,
                                keepdims=True))
    valid = (left_norm > 0) & (right_norm > 0)
    denominator = np.where(valid, left_norm * right_norm, 1.0)
    dot = np.sum(left.data * right.data, axis=axis, keepdims=True)
    similarity = np.where(valid, dot / denominator, 0.0)

    def backward(grad):
        grad = np.expand_dims(grad, axis)
        safe_left = np.where(left_norm > 0, left_norm, 1.0)
        safe_right = np.where(right_norm > 0, right_norm, 1.0)
        grad_left = right.data / denominator - \
            similarity * left.data / np.square(safe_left)
        grad_right = left.data / denominator - \
            similarity * right.data / np.square(safe_right)
        grad_left = np.where(valid, grad * grad_left, 0.0)
        grad_right = np.where(valid, grad * grad_right, 0.0)
        return (_unbroadcast(grad_left, left.shape),
                _unbroadcast(grad_right, right.shape))
    return _result(np.squeeze(similarity, axis=axis), (left, right),
                   backward)


def log(value):
    value = as_tensor(value)
    return _result(np.log(value.data), (value,),
                   lambda grad: (grad / value.data,))


def clip(value, low, high):
    value = as_tensor(value)
    inside = (value.data >= low) & (value.data <= high)
    return _result(np.clip(value.data, low, high), (value,),
                   lambda grad: (np.where(inside, grad, 0.0),))


def dropout(value, rate, rng, training=True):
    """
    Inverted dropout; identity outside training or at rate 0.
    """
    value = as_tensor(value)
    if not training or rate <= 0.0:
        return value
    keep = (rng.random(value.shape) >= rate) / (1.0 - rate)
    return mul(value, constant(keep))


Tensor.__add__ = add
Tensor.__radd__ = lambda self, other: add(other, self)
Tensor.__sub__ = sub
Tensor.__rsub__ = lambda self, other: sub(other, self)
Tensor.__mul__ = mul
Tensor.__rmul__ = lambda self, other: mul(other, self)
Tensor.__truediv__ = div
Tensor.__rtruediv__ = lambda self, other: div(other, self)
Tensor.__neg__ = neg
Tensor.__matmul__ = matmul
