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

from _core.exception import ParamError
from _core.interface import ICell
from _core.interface import IListener
from _core.interface import IReporter

__all__ = ["PluginConfig", "Plugin", "get_plugin", "registered_ids"]

# (plugin type, plugin id) -> instances, the first one wins
_REGISTRY = {}
_INTERNAL_MODULES = ("_core.", "cpfkt.")


class PluginConfig(dict):
    """
    Extra keyword arguments of the decorator, readable as attributes:
    @Plugin(type=Plugin.LOG, id="tool", enabled=True) gives
    get_plugin_config().enabled.
    """

    def __getattr__(self, name):
        try:
            return self[name]
        except KeyError as error:
            raise AttributeError(name) from error


class Plugin(object):
    """
    Class decorator that registers one instance of the decorated class:

        @Plugin(type=Plugin.CELL, id=CellType.cpf)
        class CpfCell(ICell):
            ...

    Cells, listeners and reporters must implement their interface. A class
    from outside the package registered under an existing id shadows the
    built-in one.
    """
    LOG = "log"
    CELL = "cell"
    LISTENER = "listener"
    REPORTER = "reporter"

    _interfaces = {
        CELL: ICell,
        LISTENER: IListener,
        REPORTER: IReporter,
    }

    def __init__(self, **kwargs):
        if "type" not in kwargs or "id" not in kwargs:
            raise ParamError("@Plugin needs both type and id, for example "
                             "@Plugin(type=Plugin.CELL, id=\"cpf\")",
                             error_no="00115")
        self.plugin_type = kwargs.pop("type")
        self.plugin_id = kwargs.pop("id")
        self.config = PluginConfig(kwargs)

    def __call__(self, cls):
        if hasattr(cls, "get_plugin_config"):
            raise TypeError("plugin %s may not define get_plugin_config" %
                            cls.__name__)
        config = self.config
        setattr(cls, "get_plugin_config", lambda _: config)

        instance = cls()
        interface = self._interfaces.get(self.plugin_type)
        if interface is not None and not isinstance(instance, interface):
            raise TypeError("%s plugin %s must implement %s" % (
                self.plugin_type, cls.__name__, interface.__name__))

        instances = _REGISTRY.setdefault(
            (self.plugin_type, self.plugin_id), [])
        if cls.__module__.startswith(_INTERNAL_MODULES):
            instances.append(instance)
        else:
            instances.insert(0, instance)
        return cls


def get_plugin(plugin_type, plugin_id=None):
    """
    Instances registered as (plugin_type, plugin_id); without an id, the
    winning instance of every id of that type.
    """
    if plugin_id is not None:
        return list(_REGISTRY.get((plugin_type, plugin_id), []))
    return [instances[0] for (kind, _), instances in _REGISTRY.items()
            if kind == plugin_type and instances]


def registered_ids(plugin_type):
    return sorted(plugin_id for (kind, plugin_id), instances in
                  _REGISTRY.items() if kind == plugin_type and instances)
