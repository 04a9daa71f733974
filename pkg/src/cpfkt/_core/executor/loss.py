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

from _core.autodiff import ops

__all__ = ["bce_loss", "PROBABILITY_FLOOR"]

PROBABILITY_FLOOR = 1e-7


def bce_loss(predictions, labels, mask, params, l2_lambda=0.0):
    """
    Binary cross-entropy averaged over the valid prediction terms plus
    l2_lambda times the squared norm of every parameter block.

    predictions is the (B, T) Tensor of a forward pass or None when the
    batch produced no predictions; labels and mask are (B, T) arrays.
    """
    mask = np.asarray(mask, dtype=np.float64)
    count = float(mask.sum())
    loss = ops.constant(0.0)
    if predictions is not None and count > 0:
        labels = np.asarray(labels, dtype=np.float64)
        clipped = ops.clip(predictions, PROBABILITY_FLOOR,
                           1.0 - PROBABILITY_FLOOR)
        log_likelihood = ops.log(clipped) * ops.constant(labels * mask) + \
            ops.log(1.0 - clipped) * ops.constant((1.0 - labels) * mask)
        loss = ops.sum(log_likelihood) * (-1.0 / count)
    if l2_lambda:
        penalty = None
        for param in params:
            term = ops.square_sum(param)
            penalty = term if penalty is None else penalty + term
        if penalty is not None:
            loss = loss + penalty * l2_lambda
    return loss
