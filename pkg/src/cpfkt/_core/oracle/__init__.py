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

from _core.oracle.world import WorldSpec
from _core.oracle.world import World
from _core.oracle.world import generate_world
from _core.oracle.simulator import StudentTrace
from _core.oracle.simulator import simulate_student
from _core.oracle.simulator import simulate_log
from _core.oracle.simulator import ground_truth
from _core.oracle.simulator import write_simulation
from _core.oracle.recovery import RecoveryScore
from _core.oracle.recovery import concept_streams
from _core.oracle.recovery import score_p_recovery
from _core.oracle.recovery import permutation_null_auc

__all__ = ["WorldSpec", "World", "generate_world", "StudentTrace",
           "simulate_student", "simulate_log", "ground_truth",
           "write_simulation",
           "RecoveryScore", "concept_streams", "score_p_recovery",
           "permutation_null_auc"]
