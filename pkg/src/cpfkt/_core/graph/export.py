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

import os

import numpy as np
import pandas as pd

from _core.config.json_parser import write_json
from _core.constants import FileName
from _core.logger import platform_logger

__all__ = ["export_graph", "write_matrix_csv"]

LOG = platform_logger("GraphExport")


def write_matrix_csv(path, matrix, labels):
    frame = pd.DataFrame(np.asarray(matrix), index=labels, columns=labels)
    frame.index.name = "concept"
    frame.to_csv(path, float_format="%.10g", lineterminator="\n")


def export_graph(graph, concepts, output_dir):
    """
    Writes p_matrix.csv and t_tilde.csv (K x K, labelled by concept id),
    edges.json and relations.json.
    """
    os.makedirs(output_dir, exist_ok=True)
    labels = [str(concept) for concept in concepts]
    write_matrix_csv(os.path.join(output_dir, FileName.p_matrix),
                     graph.prerequisites, labels)
    write_matrix_csv(os.path.join(output_dir, FileName.t_tilde),
                     graph.transitions.t_tilde, labels)
    edges = [{"from": labels[source], "to": labels[target], "weight": weight}
             for source, target, weight in graph.edges()]
    write_json(os.path.join(output_dir, FileName.edges), edges)
    relations = dict(graph.relations())
    relations["threshold"] = graph.transitions.threshold
    relations["concepts"] = len(labels)
    write_json(os.path.join(output_dir, FileName.relations), relations)
    LOG.info("Concept graph exported", path=output_dir, edges=len(edges))
    return output_dir
