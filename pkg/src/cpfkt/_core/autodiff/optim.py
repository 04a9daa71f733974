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

from _core.exception import NumericalError
from _core.exception import ParamError
from _core.logger import platform_logger

__all__ = ["Adam", "clip_grad_norm"]

LOG = platform_logger("Optimizer")


def clip_grad_norm(params, max_norm):
    """
    Rescales all gradients in place so their joint L2 norm is at most
    max_norm. Returns the norm before clipping.
    """
    total = float(np.sqrt(np.sum([np.sum(np.square(param.grad))
                                  for param in params])))
    if max_norm and max_norm > 0 and total > max_norm:
        scale = max_norm / (total + 1e-12)
        for param in params:
            param.grad *= scale
    return total


class Adam:
    """
    Adam with bias correction. Moment buffers live on each Parameter so a
    checkpoint carries them; weight_decay is decoupled from the moments.
    """

    def __init__(self, params, lr=3e-3, beta1=0.9, beta2=0.999, eps=1e-8,
                 weight_decay=0.0, clip_norm=None):
        if lr < 0:
            raise ParamError("learning rate must be >= 0, got %s" % lr,
                             error_no="00115")
        self.params = list(params)
        self.lr = lr
        self.beta1 = beta1
        self.beta2 = beta2
        self.eps = eps
        self.weight_decay = weight_decay
        self.clip_norm = clip_norm
        self.step_count = 0

    def zero_grad(self):
        for param in self.params:
            param.zero_grad()

    def check_gradients(self):
        for param in self.params:
            if not np.all(np.isfinite(param.grad)):
                raise NumericalError("non-finite gradient in parameter '%s'"
                                     % param.name)

    def step(self):
        self.check_gradients()
        grad_norm = clip_grad_norm(self.params, self.clip_norm)
        self.step_count += 1
        correction1 = 1.0 - self.beta1 ** self.step_count
        correction2 = 1.0 - self.beta2 ** self.step_count
        for param in self.params:
            grad = param.grad
            param.adam_m *= self.beta1
            param.adam_m += (1.0 - self.beta1) * grad
            param.adam_v *= self.beta2
            param.adam_v += (1.0 - self.beta2) * (grad * grad)
            m_hat = param.adam_m / correction1
            v_hat = param.adam_v / correction2
            update = m_hat / (np.sqrt(v_hat) + self.eps)
            if self.weight_decay:
                update = update + self.weight_decay * param.data
            param.data -= self.lr * update
        return grad_norm

    def state_dict(self):
        return {"lr": self.lr, "beta1": self.beta1, "beta2": self.beta2,
                "eps": self.eps, "weight_decay": self.weight_decay,
                "clip_norm": self.clip_norm, "step_count": self.step_count}

    def load_state_dict(self, state):
        for key in ("lr", "beta1", "beta2", "eps", "weight_decay",
                    "clip_norm", "step_count"):
            if key in state:
                setattr(self, key, state[key])
        LOG.debug("Optimizer state restored", step=self.step_count)
