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

import math

import numpy as np
import pytest

from _core.autodiff import Adam
from _core.autodiff import Parameter
from _core.autodiff import Tape
from _core.autodiff import finite_diff_check
from _core.autodiff import ops
from _core.autodiff.optim import clip_grad_norm
from _core.exception import DimensionError
from _core.exception import NumericalError
from _core.exception import ParamError


def _backward(closure):
    with Tape() as tape:
        loss = closure()
    tape.backward(loss)
    return loss


def test_linear_hand_examples():
    identity = ops.linear([1.0, 2.0], np.eye(2), np.zeros(2))
    assert np.array_equal(identity.data, [1.0, 2.0])
    shifted = ops.linear([0.0, 0.0], np.ones((2, 2)), [3.0, -1.0])
    assert np.array_equal(shifted.data, [3.0, -1.0])
    product = ops.linear([1.0, 1.0], [[1.0, 2.0], [3.0, 4.0]], np.zeros(2))
    assert np.array_equal(product.data, [4.0, 6.0])


def test_linear_rejects_mismatched_shapes():
    with pytest.raises(DimensionError):
        ops.linear(np.ones(3), np.ones((2, 2)), np.zeros(2))
    with pytest.raises(DimensionError):
        ops.linear(np.ones(2), np.ones((2, 2)), np.zeros(3))


def test_activation_ranges():
    values = np.array([-800.0, -3.0, 0.0, 3.0, 800.0])
    sigmoid = ops.sigmoid(values).data
    tanh = ops.tanh(values).data
    assert np.all(np.isfinite(sigmoid))
    assert np.all((sigmoid >= 0.0) & (sigmoid <= 1.0))
    assert sigmoid[2] == 0.5
    assert np.all(np.abs(tanh) <= 1.0)


def test_matmul_gradient_is_outer_of_input():
    weight = Parameter(np.array([[0.5, -1.0], [2.0, 0.0]]), name="W")
    _backward(lambda: ops.sum(ops.matmul(np.array([[1.0, 1.0]]), weight)))
    assert np.array_equal(weight.grad, np.ones((2, 2)))


def test_unused_parameter_gets_zero_gradient():
    used = Parameter(np.ones(3), name="used")
    unused = Parameter(np.ones((2, 2)), name="P")
    _backward(lambda: ops.sum(used * 2.0))
    assert np.array_equal(used.grad, np.full(3, 2.0))
    assert not unused.grad.any()


def test_sigmoid_gradient_at_zero():
    weight = Parameter(np.zeros(1), name="w")
    _backward(lambda: ops.sum(ops.sigmoid(weight)))
    assert weight.grad[0] == pytest.approx(0.25)


def test_take_accumulates_repeated_rows():
    table = Parameter(np.arange(6.0).reshape(3, 2), name="emb")
    _backward(lambda: ops.sum(ops.take(table, [0, 2, 0])))
    assert np.array_equal(table.grad, [[2.0, 2.0], [0.0, 0.0], [1.0, 1.0]])


def test_take_rejects_out_of_range_index():
    with pytest.raises(IndexError):
        ops.take(np.zeros((2, 3)), [2])


def test_operations_outside_a_tape_are_not_recorded():
    weight = Parameter(np.ones(2), name="w")
    with Tape() as tape:
        pass
    ops.sum(weight * 3.0)
    assert len(tape) == 0


def test_backward_needs_scalar():
    weight = Parameter(np.ones(2), name="w")
    with Tape() as tape:
        loss = weight * 2.0
    with pytest.raises(ParamError):
        tape.backward(loss)


def test_norm_gradient_at_zero_vector_is_zero():
    value = Parameter(np.zeros((1, 3)), name="v")
    _backward(lambda: ops.sum(ops.norm(value)))
    assert not value.grad.any()


def test_cosine_of_zero_vector_is_zero():
    similarity = ops.cosine(np.zeros((1, 3)), np.ones((1, 3)))
    assert similarity.data[0] == 0.0


def test_softmax_rows_sum_to_one():
    result = ops.softmax(np.array([[1.0, 2.0, 3.0], [0.0, 0.0, 1000.0]]))
    assert np.allclose(result.data.sum(axis=-1), 1.0)
    assert np.all(np.isfinite(result.data))


def test_softmax_closed_form_and_shift_invariance():
    pair = ops.softmax(np.array([0.0, math.log(3.0)])).data
    assert pair == pytest.approx([0.25, 0.75], abs=1e-12)
    rng = np.random.default_rng(29)
    for _ in range(50):
        values = rng.normal(scale=5.0, size=7)
        shift = rng.uniform(-50.0, 50.0)
        base = ops.softmax(values).data
        assert abs(base.sum() - 1.0) <= 1e-9
        assert np.allclose(ops.softmax(values + shift).data, base,
                           rtol=0.0, atol=1e-12)


def test_gradcheck_linear_sigmoid_bce():
    rng = np.random.default_rng(3)
    weight = Parameter(rng.normal(size=(4, 1)), name="W")
    bias = Parameter(np.zeros(1), name="b")
    inputs = rng.normal(size=(6, 4))
    labels = np.array([[1.0], [0.0], [1.0], [1.0], [0.0], [0.0]])

    def closure():
        y = ops.sigmoid(ops.linear(inputs, weight, bias))
        terms = ops.log(y) * labels + ops.log(1.0 - y) * (1.0 - labels)
        return ops.mean(terms) * -1.0

    report = finite_diff_check(closure, [weight, bias])
    assert report.passed
    assert report.max_rel_error < 1e-4


def test_gradcheck_composite_operations():
    rng = np.random.default_rng(11)
    rows = Parameter(rng.normal(size=(2, 3, 4)), name="rows")
    query = Parameter(rng.normal(size=(2, 1, 4)), name="query")
    gain = Parameter(rng.normal(size=(2, 4)), name="gain")
    q_row = rng.uniform(0.1, 1.0, size=(2, 3))

    def closure():
        attention = ops.softmax(ops.cosine(rows, query), axis=-1)
        pooled = ops.pool(attention, rows)
        review = ops.norm(ops.sigmoid(ops.concat([pooled, gain])))
        state = ops.outer(q_row, ops.tanh(gain)) + \
            ops.expand(ops.reshape(pooled, (2, 1, 4)), (2, 3, 4))
        return ops.sum(ops.stack([ops.sum(state), ops.sum(review)]))

    report = finite_diff_check(closure, [rows, query, gain])
    assert report.passed, report.to_dict()


def test_adam_unchanged_without_gradient():
    param = Parameter(np.array([1.0, -2.0]), name="w")
    optimizer = Adam([param], lr=0.1)
    optimizer.step()
    assert np.array_equal(param.data, [1.0, -2.0])


def test_adam_first_step_moves_by_learning_rate():
    param = Parameter(np.array([0.5]), name="w")
    param.grad[...] = 1.0
    Adam([param], lr=0.1).step()
    assert param.data[0] == pytest.approx(0.4, abs=1e-6)


def test_adam_rejects_non_finite_gradient():
    param = Parameter(np.zeros(2), name="w")
    param.grad[0] = np.nan
    with pytest.raises(NumericalError):
        Adam([param]).step()


def _composite_forward(params, inputs):
    weight, bias, query = params
    hidden = ops.tanh(ops.linear(inputs, weight, bias))
    attention = ops.softmax(ops.cosine(hidden, query))
    return ops.sum(ops.mul(attention, ops.sum(hidden, axis=-1)))


def test_taped_forward_replays_bit_identically():
    rng = np.random.default_rng(31)
    params = [Parameter(rng.normal(size=(4, 3)), name="W"),
              Parameter(rng.normal(size=3), name="b"),
              Parameter(rng.normal(size=(1, 3)), name="q")]
    inputs = rng.normal(size=(5, 4))
    runs = []
    for _ in range(2):
        for param in params:
            param.zero_grad()
        loss = _backward(lambda: _composite_forward(params, inputs))
        runs.append((loss.data.copy(),
                     [param.grad.copy() for param in params]))
    assert np.array_equal(runs[0][0], runs[1][0])
    for first, second in zip(runs[0][1], runs[1][1]):
        assert np.array_equal(first, second)


def _adam_trajectory(seed):
    rng = np.random.default_rng(seed)
    weight = Parameter(rng.normal(size=(3, 2)), name="W")
    bias = Parameter(np.zeros(2), name="b")
    inputs = rng.normal(size=(8, 3))
    targets = rng.normal(size=(8, 2))
    optimizer = Adam([weight, bias], lr=0.05, clip_norm=1.0)
    history = []
    for _ in range(25):
        optimizer.zero_grad()
        _backward(lambda: ops.square_sum(
            ops.sub(ops.linear(inputs, weight, bias), targets)))
        optimizer.step()
        history.append(np.concatenate([weight.data.ravel(), bias.data,
                                       weight.adam_m.ravel(),
                                       weight.adam_v.ravel()]))
    return np.stack(history)


def test_adam_trajectory_is_reproducible():
    first = _adam_trajectory(11)
    assert np.array_equal(first, _adam_trajectory(11))
    assert not np.array_equal(first[0], first[-1])
    assert not np.array_equal(first, _adam_trajectory(12))


def test_clip_grad_norm_rescales_jointly():
    first = Parameter(np.zeros(1), name="a")
    second = Parameter(np.zeros(1), name="b")
    first.grad[...] = 3.0
    second.grad[...] = 4.0
    total = clip_grad_norm([first, second], 1.0)
    assert total == pytest.approx(5.0)
    assert first.grad[0] == pytest.approx(0.6)
    assert second.grad[0] == pytest.approx(0.8)
