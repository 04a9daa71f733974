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

from _core.data.records import InteractionRecord
from _core.data.records import ParseResult
from _core.data.records import parse_interactions
from _core.data.records import discretize
from _core.data.features import compute_exercise_difficulty
from _core.data.features import compute_running_accuracy
from _core.data.features import difficulty_table
from _core.data.features import enhance_q_matrix
from _core.data.features import QMatrix
from _core.data.sequence import StudentSequence
from _core.data.sequence import SequenceBatch
from _core.data.sequence import make_windows
from _core.data.sequence import kfold
from _core.data.dataset import Dataset
from _core.data.dataset import Vocabulary
from _core.data.dataset import build_dataset
from _core.data.dataset import load_dataset
from _core.data.dataset import save_dataset
from _core.data.dataset import student_streams
