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

from dataclasses import dataclass

import numpy as np

from _core.constants import RelationType
from _core.logger import platform_logger

__all__ = ["TransitionMatrix", "ConceptGraph", "build_answer_matrix",
           "binarize_transitions", "derive_prerequisites",
           "relation_distribution", "prerequisite_weights",
           "build_concept_graph"]

LOG = platform_logger("ConceptGraph")


@dataclass
class TransitionMatrix:
    t_tilde: np.ndarray
    t: np.ndarray
    threshold: float


@dataclass
class ConceptGraph:
    answer: np.ndarray
    transitions: TransitionMatrix
    prerequisites: np.ndarray

    @property
    def num_concepts(self):
        return self.answer.shape[0]

    def edges(self):
        """
        (from, to, weight) for every prerequisite edge, weight is T~.
        """
        rows, cols = np.nonzero(self.prerequisites)
        return [(int(row), int(col),
                 float(self.transitions.t_tilde[row, col]))
                for row, col in zip(rows, cols)]

    def relations(self):
        return relation_distribution(self.transitions.t)


def build_answer_matrix(streams, num_concepts):
    """
    streams: per-student (concepts, corrects) in time order, unwindowed.
    Counts i -> j where both consecutive attempts are correct and i != j,
    then normalizes every non-empty row to sum 1.
    """
    counts = np.zeros((num_concepts, num_concepts))
    for concepts, corrects in streams:
        concepts = np.asarray(concepts, dtype=np.int64)
        corrects = np.asarray(corrects, dtype=bool)
        if concepts.shape[0] < 2:
            continue
        pairs = corrects[:-1] & corrects[1:] & (concepts[:-1] != concepts[1:])
        np.add.at(counts, (concepts[:-1][pairs], concepts[1:][pairs]), 1.0)
    totals = counts.sum(axis=1, keepdims=True)
    return np.divide(counts, totals, out=np.zeros_like(counts),
                     where=totals > 0)


def binarize_transitions(answer, threshold_power=3.0):
    """
    Global min-max over every entry (diagonal included), then a strict
    threshold at mean(T~) ** threshold_power.
    """
    answer = np.asarray(answer, dtype=np.float64)
    low, high = answer.min(), answer.max()
    if high <= low:
        LOG.warning("Answer matrix is constant, no transitions derived",
                    value=float(low))
        zeros = np.zeros_like(answer)
        return TransitionMatrix(zeros, zeros.astype(np.int64), 0.0)
    t_tilde = (answer - low) / (high - low)
    threshold = float(t_tilde.mean() ** threshold_power)
    return TransitionMatrix(t_tilde, (t_tilde > threshold).astype(np.int64),
                            threshold)


def derive_prerequisites(transitions):
    t = np.asarray(transitions, dtype=np.int64)
    prerequisites = ((t == 1) & (t.T == 0)).astype(np.int64)
    np.fill_diagonal(prerequisites, 0)
    return prerequisites


def relation_distribution(transitions):
    """
    Counts unordered concept pairs by how T links them.
    """
    t = np.asarray(transitions, dtype=bool)
    upper = np.triu_indices(t.shape[0], k=1)
    forward, backward = t[upper], t.T[upper]
    mutual = int(np.sum(forward & backward))
    directed = int(np.sum(forward ^ backward))
    return {RelationType.mutual: mutual,
            RelationType.directed: directed,
            RelationType.unrelated: int(forward.size) - mutual - directed}


def prerequisite_weights(prerequisites, rho=0.0):
    """
    Row k holds the weights averaging concept embeddings into the
    prerequisite vector of concept k: 1 for prerequisites of k, rho for
    every other concept, nothing on the diagonal.
    """
    p = np.asarray(prerequisites, dtype=np.float64)
    weights = p.T + rho * (1.0 - p.T)
    np.fill_diagonal(weights, 0.0)
    totals = weights.sum(axis=1, keepdims=True)
    return np.divide(weights, totals, out=np.zeros_like(weights),
                     where=totals > 0)


def build_concept_graph(streams, num_concepts, threshold_power=3.0):
    answer = build_answer_matrix(streams, num_concepts)
    transitions = binarize_transitions(answer, threshold_power)
    prerequisites = derive_prerequisites(transitions.t)
    LOG.info("Concept graph built", concepts=num_concepts,
             threshold="%.6g" % transitions.threshold,
             edges=int(prerequisites.sum()))
    return ConceptGraph(answer, transitions, prerequisites)
