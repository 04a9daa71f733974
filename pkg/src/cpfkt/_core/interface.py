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

from abc import ABC
from abc import abstractmethod
from enum import Enum

__all__ = ["LifeCycle", "ICell", "IListener", "IReporter"]


class LifeCycle(Enum):
    Run = "Run"
    Fold = "Fold"


def _check_methods(class_info, *methods):
    mro = class_info.__mro__
    for method in methods:
        for cls in mro:
            if method in cls.__dict__:
                if cls.__dict__[method] is None:
                    return NotImplemented
                break
        else:
            return NotImplemented
    return True


class ICell(ABC):
    """
    A recurrent knowledge-tracing cell. The model drives it as:
    __shapes__ once when parameters are allocated, then per batch
    __begin__, and for every step t __step__ followed by __predict__
    for step t + 1.
    """
    __slots__ = ()

    @abstractmethod
    def __shapes__(self, model):
        """
        Ordered list of (name, shape, kind) with kind in
        {"embedding", "weight", "bias"}.
        """

    @abstractmethod
    def __begin__(self, model, batch):
        """
        Returns the initial carry for a batch.
        """

    @abstractmethod
    def __step__(self, model, batch, step, carry, training=False):
        """
        Consumes step `step` of every sequence in the batch and returns
        (carry, StepTrace).
        """

    @abstractmethod
    def __predict__(self, model, batch, step, carry):
        """
        Probability of a correct answer on step `step` given the carry.
        """

    @classmethod
    def __subclasshook__(cls, class_info):
        if cls is ICell:
            return _check_methods(class_info, "__shapes__", "__begin__",
                                  "__step__", "__predict__")
        return NotImplemented


class IListener(ABC):
    """
    Listener notified of training events, as following sequence:
    __started__(Run)
    __started__(Fold)
    __epoch__(record)
    ...
    __ended__(Fold)
    ...
    __ended__(Run)
    """
    __slots__ = ()

    @abstractmethod
    def __started__(self, lifecycle, info):
        pass

    @abstractmethod
    def __epoch__(self, record):
        pass

    @abstractmethod
    def __ended__(self, lifecycle, info, **kwargs):
        pass

    @classmethod
    def __subclasshook__(cls, class_info):
        if cls is IListener:
            return _check_methods(class_info, "__started__", "__epoch__",
                                  "__ended__")
        return NotImplemented


class IReporter(ABC):
    """
    A reporter to generate reports
    """
    __slots__ = ()

    @abstractmethod
    def __generate_reports__(self, report_path, **kwargs):
        pass

    @classmethod
    def __subclasshook__(cls, class_info):
        if cls is IReporter:
            return _check_methods(class_info, "__generate_reports__")
        return NotImplemented
