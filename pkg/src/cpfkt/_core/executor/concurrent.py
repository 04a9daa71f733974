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

from concurrent.futures import ThreadPoolExecutor
from concurrent.futures import wait

from _core.logger import platform_logger
from _core.utils import get_instance_name

__all__ = ["Concurrent"]

LOG = platform_logger("Concurrent")


class Concurrent:
    @classmethod
    def executor_callback(cls, worker):
        worker_exception = worker.exception()
        if worker_exception:
            LOG.error("Worker return exception: %s: %s" % (
                get_instance_name(worker_exception), worker_exception),
                error_no=getattr(worker_exception, "error_no", "00000"))

    @classmethod
    def concurrent_execute(cls, func, params_list, max_size=8):
        """
        Runs func(*params) for every entry of params_list on a thread pool
        of max_size workers and returns the results in input order. A
        worker failure is logged when it happens and re-raised after the
        pool drains. max_size <= 1 runs inline.
        """
        if max_size <= 1 or len(params_list) <= 1:
            return [func(*params) for params in params_list]
        with ThreadPoolExecutor(max_size) as executor:
            futures = []
            for params in params_list:
                future = executor.submit(func, *params)
                future.add_done_callback(cls.executor_callback)
                futures.append(future)
            wait(futures)
            return [future.result() for future in futures]
