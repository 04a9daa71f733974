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

from dataclasses import asdict
from dataclasses import dataclass

import numpy as np

from _core.data.records import group_by_student
from _core.executor.evaluator import auc_score
from _core.graph.prerequisite import binarize_transitions
from _core.graph.prerequisite import build_answer_matrix
from _core.graph.prerequisite import derive_prerequisites
from _core.logger import platform_logger

__all__ = ["RecoveryScore", "edge_labels", "concept_streams",
           "score_p_recovery", "permutation_null_auc"]

LOG = platform_logger("Recovery")


@dataclass
class RecoveryScore:
    auc: float = None
    precision: float = None
    recall: float = None
    true_edges: int = 0
    predicted_edges: int = 0

    def to_dict(self):
        return asdict(self)


def edge_labels(true_edges, num_concepts):
    labels = np.zeros((num_concepts, num_concepts), dtype=np.int64)
    for source, target in true_edges:
        labels[source, target] = 1
    return labels


def _off_diagonal(matrix):
    return matrix[~np.eye(matrix.shape[0], dtype=bool)]


def concept_streams(records, world):
    """
    Per-student (concepts, corrects) in world concept indices.
    """
    index = {world.concept_id(concept): concept
             for concept in range(world.num_concepts)}
    streams = []
    for student_records in group_by_student(records):
        streams.append((
            np.asarray([index[record.concept_id]
                        for record in student_records], dtype=np.int64),
            np.asarray([record.correct for record in student_records],
                       dtype=np.int64)))
    return streams


def score_p_recovery(true_edges, t_tilde, prerequisites=None):
    """
    AUC of T~ ranking the true edges above every other ordered pair, and
    precision / recall of the derived P-matrix. prerequisites defaults to
    the P-matrix derived from t_tilde by the same threshold rule as the
    graph builder.
    """
    t_tilde = np.asarray(t_tilde, dtype=np.float64)
    num_concepts = t_tilde.shape[0]
    truth = edge_labels(true_edges, num_concepts)
    if prerequisites is None:
        prerequisites = derive_prerequisites(
            binarize_transitions(t_tilde).t)
    predicted = np.asarray(prerequisites, dtype=bool)
    np.fill_diagonal(predicted, False)

    true_count = int(truth.sum())
    predicted_count = int(predicted.sum())
    hits = int(np.sum(predicted & truth.astype(bool)))
    score = RecoveryScore(true_edges=true_count,
                          predicted_edges=predicted_count)
    if true_count:
        score.auc = auc_score(_off_diagonal(t_tilde), _off_diagonal(truth))
        score.recall = hits / true_count
        if predicted_count:
            score.precision = hits / predicted_count
    LOG.info("P-matrix recovery", auc=score.auc, precision=score.precision,
             recall=score.recall)
    return score


def permutation_null_auc(streams, true_edges, num_concepts, draws=50,
                         seed=0, threshold_power=3.0):
    """
    Mean edge-score AUC after relabeling the concepts of every student with
    an independent random permutation; None without true edges.
    """
    truth = _off_diagonal(edge_labels(true_edges, num_concepts))
    if not truth.any():
        return None
    rng = np.random.default_rng(seed)
    scores = []
    for _ in range(draws):
        shuffled = []
        for concepts, corrects in streams:
            relabel = rng.permutation(num_concepts)
            shuffled.append((relabel[np.asarray(concepts, dtype=np.int64)],
                             corrects))
        transitions = binarize_transitions(
            build_answer_matrix(shuffled, num_concepts), threshold_power)
        value = auc_score(_off_diagonal(transitions.t_tilde), truth)
        if value is not None:
            scores.append(value)
    return float(np.mean(scores)) if scores else None
