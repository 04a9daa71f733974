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

import math
from dataclasses import dataclass
from dataclasses import replace

import numpy as np
import pandas as pd

from _core.constants import ColumnConst
from _core.exception import DataError
from _core.exception import ParamError
from _core.logger import platform_logger

__all__ = ["InteractionRecord", "ParseResult", "parse_interactions",
           "records_from_frame", "records_to_frame", "discretize",
           "group_by_student"]

LOG = platform_logger("Records")
_SECONDS_PER_MINUTE = 60.0
_MAX_LOGGED_DROPS = 10


@dataclass(frozen=True)
class InteractionRecord:
    student_id: str
    exercise_id: str
    concept_id: str
    correct: int
    # seconds spent on the attempt
    answer_time: float
    # epoch seconds
    timestamp: float
    # filled by discretize
    interval_time: float = 0.0
    answer_bucket: int = -1
    interval_bucket: int = -1


@dataclass
class ParseResult:
    records: list
    dropped: int

    @property
    def students(self):
        return sorted({record.student_id for record in self.records})


def _parse_timestamps(series, timestamp_format):
    if not timestamp_format:
        return pd.to_numeric(series, errors="coerce")
    parsed = pd.to_datetime(
        series, errors="coerce", utc=True,
        format=None if timestamp_format == "auto" else timestamp_format)
    return (parsed - pd.Timestamp(0, tz="UTC")).dt.total_seconds()


def _clean_ids(series):
    series = series.astype("string").str.strip()
    return series.where((series.str.len() > 0).fillna(False))


def parse_interactions(path, columns):
    """
    Reads an interaction CSV through the configured column mapping.
    Rows with missing or out-of-range fields are dropped and counted;
    the result is sorted by (student_id, timestamp), stable on ties.
    """
    try:
        frame = pd.read_csv(path, dtype=str, keep_default_na=True)
    except FileNotFoundError as error:
        raise ParamError("interaction log %s does not exist" % path,
                         error_no="00110") from error
    except (pd.errors.ParserError, UnicodeDecodeError) as error:
        raise DataError("cannot read interaction log %s: %s" % (
            path, error)) from error

    mapping = {ColumnConst.student: columns.student,
               ColumnConst.exercise: columns.exercise,
               ColumnConst.concept: columns.concept,
               ColumnConst.correct: columns.correct,
               ColumnConst.answer_time: columns.answer_time,
               ColumnConst.timestamp: columns.timestamp}
    missing = [name for name in mapping.values() if name not in frame.columns]
    if missing:
        raise ParamError("unknown column(s) %s, available: %s" % (
            missing, list(frame.columns)), error_no="00115")

    data = pd.DataFrame({key: frame[name] for key, name in mapping.items()})
    data[ColumnConst.student] = _clean_ids(data[ColumnConst.student])
    data[ColumnConst.exercise] = _clean_ids(data[ColumnConst.exercise])
    concepts = data[ColumnConst.concept]
    if columns.concept_separator:
        concepts = concepts.str.split(columns.concept_separator,
                                      regex=False).str[0]
    data[ColumnConst.concept] = _clean_ids(concepts)
    data[ColumnConst.correct] = pd.to_numeric(data[ColumnConst.correct],
                                              errors="coerce")
    data[ColumnConst.answer_time] = pd.to_numeric(
        data[ColumnConst.answer_time], errors="coerce") * \
        columns.answer_time_scale
    data[ColumnConst.timestamp] = _parse_timestamps(
        data[ColumnConst.timestamp], columns.timestamp_format)

    valid = data.notna().all(axis=1)
    valid &= data[ColumnConst.correct].isin([0, 1])
    for name in (ColumnConst.answer_time, ColumnConst.timestamp):
        valid &= np.isfinite(data[name]) & (data[name] >= 0)
    dropped = int((~valid).sum())
    if dropped:
        for index in data.index[~valid][:_MAX_LOGGED_DROPS]:
            LOG.debug("Row skipped", line=int(index) + 2)
        LOG.warning("Dropped rows with missing, negative or infinite fields",
                    path=path, dropped=dropped)

    data = data[valid].sort_values(
        [ColumnConst.student, ColumnConst.timestamp], kind="mergesort")
    records = records_from_frame(data)
    LOG.info("Parsed interactions", path=path, records=len(records),
             students=data[ColumnConst.student].nunique())
    return ParseResult(records=records, dropped=dropped)


def records_from_frame(data):
    return [InteractionRecord(student_id=str(row.student),
                              exercise_id=str(row.exercise),
                              concept_id=str(row.concept),
                              correct=int(row.correct),
                              answer_time=float(row.answer_time),
                              timestamp=float(row.timestamp))
            for row in data.itertuples(index=False)]


def records_to_frame(records):
    return pd.DataFrame(
        [(record.student_id, record.exercise_id, record.concept_id,
          record.correct, record.answer_time, record.timestamp)
         for record in records],
        columns=ColumnConst.required())


def group_by_student(records):
    """
    Splits a (student_id, timestamp) sorted list into per-student lists,
    ordered by student id.
    """
    groups = {}
    for record in records:
        groups.setdefault(record.student_id, []).append(record)
    return [groups[key] for key in sorted(groups)]


def discretize(records, spec):
    """
    answer_time -> whole seconds capped at answer_time_cap;
    interval -> whole minutes since the student's previous attempt capped at
    interval_time_cap, 0 on the first attempt. Raw seconds are kept.
    """
    result = []
    for student_records in group_by_student(records):
        previous = None
        for record in student_records:
            interval = 0.0 if previous is None else \
                max(record.timestamp - previous, 0.0)
            result.append(replace(
                record,
                interval_time=interval,
                answer_bucket=int(min(math.floor(record.answer_time),
                                      spec.answer_time_cap)),
                interval_bucket=int(min(
                    math.floor(interval / _SECONDS_PER_MINUTE),
                    spec.interval_time_cap))))
            previous = record.timestamp
    return result
