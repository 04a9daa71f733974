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

from _core.constants import ListenerType
from _core.interface import IListener
from _core.interface import LifeCycle
from _core.logger import platform_logger
from _core.plugin import Plugin

__all__ = ["LogListener", "CollectListener"]

LOG = platform_logger("Listener")


def _format(value):
    return "-" if value is None else "%.4f" % value


@Plugin(type=Plugin.LISTENER, id=ListenerType.log)
class LogListener(IListener):
    """
    Listener training status information to the log
    """

    def __started__(self, lifecycle, info):
        if lifecycle == LifeCycle.Run:
            LOG.info("Run started", **info)
        elif lifecycle == LifeCycle.Fold:
            LOG.info("Fold %s started with %s training windows" % (
                info.get("fold"), info.get("train_windows")))

    def __epoch__(self, record):
        LOG.info("Fold %s epoch %s: loss %.5f, val auc %s, val acc %s" % (
            record.fold, record.epoch, record.loss, _format(record.val_auc),
            _format(record.val_acc)))

    def __ended__(self, lifecycle, info, **kwargs):
        if lifecycle == LifeCycle.Fold:
            LOG.info("Fold %s finished, best epoch %s" % (
                info.get("fold"), info.get("best_epoch")))
        elif lifecycle == LifeCycle.Run:
            LOG.info("Run finished", **info)


@Plugin(type=Plugin.LISTENER, id=ListenerType.collect)
class CollectListener(IListener):
    """
    Keeps every epoch record of the current run for the training log.
    """

    def __init__(self):
        self.records = []

    def __started__(self, lifecycle, info):
        if lifecycle == LifeCycle.Run:
            self.records = []

    def __epoch__(self, record):
        self.records.append(record)

    def __ended__(self, lifecycle, info, **kwargs):
        pass

    def get_records(self):
        return list(self.records)
