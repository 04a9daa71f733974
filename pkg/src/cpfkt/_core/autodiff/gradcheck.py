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

from dataclasses import dataclass
from dataclasses import field

import numpy as np

from _core.autodiff.tensor import Tape
from _core.logger import platform_logger

__all__ = ["finite_diff_check", "GradCheckReport", "BlockCheck"]

LOG = platform_logger("GradCheck")


@dataclass
class BlockCheck:
    name: str
    checked: int
    max_rel_error: float
    passed: bool

    def to_dict(self):
        return {"name": self.name, "checked": self.checked,
                "max_rel_error": self.max_rel_error, "passed": self.passed}


@dataclass
class GradCheckReport:
    step: float
    tolerance: float
    blocks: list = field(default_factory=list)

    @property
    def passed(self):
        return all(block.passed for block in self.blocks)

    @property
    def max_rel_error(self):
        return max([block.max_rel_error for block in self.blocks] or [0.0])

    def to_dict(self):
        return {"h": self.step, "tolerance": self.tolerance,
                "passed": self.passed, "max_rel_error": self.max_rel_error,
                "blocks": [block.to_dict() for block in self.blocks]}


def relative_error(analytic, numeric):
    return abs(analytic - numeric) / max(abs(analytic), abs(numeric), 1e-6)


def _select_entries(param, analytic, max_entries, rng):
    size = param.data.size
    if max_entries is None or size <= max_entries:
        return np.arange(size)
    # every entry the loss touches, topped up with a seeded random sample
    touched = np.flatnonzero(analytic.reshape(-1))
    if touched.size >= max_entries:
        return np.sort(rng.choice(touched, size=max_entries, replace=False))
    rest = np.setdiff1d(np.arange(size), touched)
    extra = rng.choice(rest, size=min(rest.size, max_entries - touched.size),
                       replace=False)
    return np.sort(np.concatenate([touched, extra]))


def finite_diff_check(closure, params, h=1e-5, tol=1e-4, max_entries=None,
                      seed=0):
    """
    Compares the taped gradient of closure() with central differences
    (f(x + h) - f(x - h)) / 2h for every parameter block.

    closure must be deterministic (no dropout) and return a scalar Tensor.
    Blocks larger than max_entries are sampled.
    """
    params = list(params)
    for param in params:
        param.zero_grad()
    with Tape() as tape:
        loss = closure()
    tape.backward(loss)
    analytics = [param.grad.copy() for param in params]

    rng = np.random.default_rng(seed)
    report = GradCheckReport(step=h, tolerance=tol)
    for param, analytic in zip(params, analytics):
        flat = param.data.reshape(-1)
        entries = _select_entries(param, analytic, max_entries, rng)
        worst = 0.0
        for index in entries:
            original = flat[index]
            flat[index] = original + h
            upper = closure().item()
            flat[index] = original - h
            lower = closure().item()
            flat[index] = original
            numeric = (upper - lower) / (2.0 * h)
            worst = max(worst, relative_error(
                float(analytic.reshape(-1)[index]), numeric))
        block = BlockCheck(param.name, int(entries.size), worst, worst < tol)
        if not block.passed:
            LOG.warning("Gradient mismatch", block=param.name,
                        max_rel_error="%.3e" % worst)
        report.blocks.append(block)
    for param in params:
        param.zero_grad()
    return report
