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

from _core.graph.prerequisite import ConceptGraph
from _core.graph.prerequisite import TransitionMatrix
from _core.graph.prerequisite import build_answer_matrix
from _core.graph.prerequisite import binarize_transitions
from _core.graph.prerequisite import derive_prerequisites
from _core.graph.prerequisite import relation_distribution
from _core.graph.prerequisite import prerequisite_weights
from _core.graph.prerequisite import build_concept_graph
from _core.graph.forgetting import ForgettingParams
from _core.graph.forgetting import nearest_prerequisite_step
from _core.graph.forgetting import forgetting_weight
from _core.graph.forgetting import batch_forgetting_weights
from _core.graph.export import export_graph
