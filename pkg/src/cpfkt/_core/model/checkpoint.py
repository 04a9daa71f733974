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

import io
import json
import os
import zipfile

import numpy as np

from _core.config.config_manager import RunConfig
from _core.config.config_manager import config_from_dict
from _core.data.dataset import Vocabulary
from _core.exception import DataError
from _core.exception import ParamError
from _core.logger import platform_logger
from _core.model.model import KnowledgeTracer

__all__ = ["save_checkpoint", "load_checkpoint", "CHECKPOINT_VERSION"]

LOG = platform_logger("Checkpoint")

CHECKPOINT_VERSION = 1
# fixed member timestamps keep reruns byte-identical
_ZIP_DATE = (1980, 1, 1, 0, 0, 0)
_META = "meta.json"


def _write_member(archive, name, data):
    info = zipfile.ZipInfo(name, date_time=_ZIP_DATE)
    info.compress_type = zipfile.ZIP_DEFLATED
    info.external_attr = 0o644 << 16
    archive.writestr(info, data)


def _array_bytes(array):
    buffer = io.BytesIO()
    np.lib.format.write_array(buffer, np.ascontiguousarray(array),
                              allow_pickle=False)
    return buffer.getvalue()


def save_checkpoint(path, model, run_config=None, optimizer=None,
                    extra=None):
    """
    Writes parameters, Adam moments, the enhanced Q-matrix, the P-matrix,
    the difficulty table when set and a json header into one zip archive.
    """
    if run_config is None:
        run_config = RunConfig(model=model.config,
                               discretizer=model.discretizer)
    meta = {
        "version": CHECKPOINT_VERSION,
        "config": run_config.to_dict(),
        "vocab": model.vocab.to_dict(),
        "dims": model.dims.to_dict(),
        "seed": model.seed,
        "params": model.params.names(),
        "optimizer": optimizer.state_dict() if optimizer else {},
        "extra": extra or {},
    }
    arrays = [("Q", model.q_entries), ("P", model.prerequisites),
              ("exercise_concept", model.vocab.exercise_concept)]
    # absent when windows keep their own difficulty buckets
    if model.difficulty is not None:
        arrays.append(("difficulty", model.difficulty))
    for param in model.params:
        arrays.append(("param/%s" % param.name, param.data))
        arrays.append(("adam_m/%s" % param.name, param.adam_m))
        arrays.append(("adam_v/%s" % param.name, param.adam_v))

    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    with zipfile.ZipFile(path, "w") as archive:
        _write_member(archive, _META,
                      json.dumps(meta, sort_keys=True, indent=2))
        for name, array in arrays:
            _write_member(archive, "%s.npy" % name, _array_bytes(array))
    LOG.info("Checkpoint saved", path=path, blocks=len(model.params))
    return path


def load_checkpoint(path):
    """
    Returns (model, meta). The rebuilt model holds the saved parameters,
    moments, P-matrix and difficulty table bit for bit.
    """
    if not os.path.isfile(path):
        raise ParamError("checkpoint %s does not exist" % path,
                         error_no="00110")
    try:
        with zipfile.ZipFile(path, "r") as archive:
            meta = json.loads(archive.read(_META).decode("utf-8"))
            arrays = {}
            for name in archive.namelist():
                if not name.endswith(".npy"):
                    continue
                with archive.open(name) as member:
                    arrays[name[:-len(".npy")]] = np.lib.format.read_array(
                        io.BytesIO(member.read()), allow_pickle=False)
    except (zipfile.BadZipFile, KeyError, ValueError) as error:
        raise DataError("checkpoint %s is unreadable: %s" % (path, error)) \
            from error

    if meta.get("version") != CHECKPOINT_VERSION:
        raise DataError("checkpoint %s has version %s, expected %s" % (
            path, meta.get("version"), CHECKPOINT_VERSION))
    run_config = config_from_dict(meta["config"])
    model = KnowledgeTracer(run_config.model,
                            Vocabulary.from_dict(meta["vocab"]),
                            run_config.discretizer,
                            prerequisites=arrays["P"],
                            difficulty=arrays.get("difficulty"),
                            seed=meta["seed"])
    model.params.restore({name: arrays["param/%s" % name]
                          for name in model.params.names()})
    for param in model.params:
        param.adam_m[...] = arrays["adam_m/%s" % param.name]
        param.adam_v[...] = arrays["adam_v/%s" % param.name]
    meta["run_config"] = run_config
    LOG.info("Checkpoint loaded", path=path, mode=run_config.model.mode)
    return model, meta
