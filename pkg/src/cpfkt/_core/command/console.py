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

import argparse
import os
from dataclasses import replace

import numpy as np

from _core.autodiff import finite_diff_check
from _core.autodiff import set_default_dtype
from _core.config.config_manager import RunConfigManager
from _core.constants import AblationType
from _core.constants import CellType
from _core.constants import FileName
from _core.constants import ListenerType
from _core.constants import ReporterType
from _core.constants import ToolCommandType
from _core.data.dataset import build_dataset
from _core.data.dataset import load_dataset
from _core.data.dataset import save_dataset
from _core.data.dataset import student_streams
from _core.data.records import parse_interactions
from _core.data.sequence import kfold
from _core.exception import DataError
from _core.exception import NumericalError
from _core.exception import ParamError
from _core.executor.cross_validation import cross_validate
from _core.executor.cross_validation import run_fold
from _core.executor.cross_validation import sweep
from _core.executor.evaluator import evaluate
from _core.executor.loss import bce_loss
from _core.graph.export import export_graph
from _core.graph.prerequisite import build_concept_graph
from _core.interface import LifeCycle
from _core.logger import add_task_file_handler
from _core.logger import change_logger_level
from _core.logger import platform_logger
from _core.logger import remove_task_file_handler
from _core.model.checkpoint import load_checkpoint
from _core.model.checkpoint import save_checkpoint
from _core.model.model import KnowledgeTracer
from _core.oracle.simulator import simulate_log
from _core.oracle.simulator import write_simulation
from _core.oracle.world import WorldSpec
from _core.oracle.world import generate_world
from _core.plugin import Plugin
from _core.plugin import get_plugin
from _core.utils import NumberListAction
from _core.utils import get_instance_name
from _core.utils import is_csv_file
from _core.utils import is_python_satisfied

__all__ = ["Console", "EXIT_OK", "EXIT_FAILURE", "EXIT_USAGE"]

LOG = platform_logger("Console")

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
GRADCHECK_MAX_ENTRIES = 40
GRADCHECK_WINDOWS = 4

_COMMAND_HELP = {
    ToolCommandType.toolcmd_key_ingest:
        "parse an interaction csv into a windowed dataset",
    ToolCommandType.toolcmd_key_build_graph:
        "build the concept prerequisite graph",
    ToolCommandType.toolcmd_key_train: "train one fold and save a checkpoint",
    ToolCommandType.toolcmd_key_eval: "evaluate a checkpoint",
    ToolCommandType.toolcmd_key_cross_validate:
        "k-fold cross-validation and sensitivity sweeps",
    ToolCommandType.toolcmd_key_gradcheck:
        "compare analytic gradients with finite differences",
    ToolCommandType.toolcmd_key_simulate:
        "simulate students over a synthetic concept graph",
    ToolCommandType.toolcmd_key_export_states:
        "export per-step knowledge state traces",
}


class Console(object):
    """
    Class representing the cpf command line: one subcommand per process,
    logs to standard error and data to files only.
    """
    __instance = None

    def __new__(cls, *args, **kwargs):
        """
        Singleton instance
        """
        if cls.__instance is None:
            cls.__instance = super(Console, cls).__new__(cls, *args, **kwargs)
        return cls.__instance

    def __init__(self):
        pass

    def console(self, args):
        """
        Runs one command, args being argv without the program name.
        Returns the exit status.
        """
        if not is_python_satisfied():
            return EXIT_FAILURE
        parser = self.argument_parser()
        if not args:
            parser.print_help()
            return EXIT_USAGE
        try:
            options = parser.parse_args(args)
        except SystemExit as error:
            return EXIT_OK if error.code in (0, None) else EXIT_USAGE
        return self.command_parser(options, parser)

    @classmethod
    def argument_parser(cls):
        parser = argparse.ArgumentParser(
            prog="cpf", description="Concept prerequisite knowledge tracing.")
        commands = parser.add_subparsers(dest="action", metavar="command")
        commands.add_parser(ToolCommandType.toolcmd_key_help,
                            help="show this help")
        for command in ToolCommandType().command_list:
            sub_parser = commands.add_parser(command,
                                             help=_COMMAND_HELP[command])
            cls._add_common_arguments(sub_parser)
            if command in (ToolCommandType.toolcmd_key_eval,
                           ToolCommandType.toolcmd_key_export_states):
                sub_parser.add_argument("--checkpoint",
                                        dest="checkpoint", default=None,
                                        help="checkpoint written by train")
            if command == ToolCommandType.toolcmd_key_simulate:
                sub_parser.add_argument("--students", type=int,
                                        dest="students", default=None,
                                        help="number of simulated students")
                sub_parser.add_argument("--steps", type=int, dest="steps",
                                        default=None,
                                        help="attempts per student")
            if command == ToolCommandType.toolcmd_key_cross_validate:
                sub_parser.add_argument("--gamma-grid", type=float,
                                        action=NumberListAction,
                                        dest="gamma_grid", default=None,
                                        help="comma separated Q-matrix "
                                             "gamma values to sweep")
        return parser

    @classmethod
    def _add_common_arguments(cls, parser):
        parser.add_argument("--config", dest="config", default="",
                            help="run configuration json")
        parser.add_argument("--seed", type=int, dest="seed", default=None,
                            help="global random seed")
        parser.add_argument("--in", dest="data_in", default=None,
                            help="interaction csv or dataset directory")
        parser.add_argument("--out", dest="output_dir", default=None,
                            help="output directory")
        parser.add_argument("--ablation", dest="ablation", default=None,
                            choices=AblationType.values(),
                            help="model variant")
        parser.add_argument("--mode", dest="mode", default=None,
                            choices=[CellType.cpf, CellType.lpkt],
                            help="recurrent cell")
        parser.add_argument("--k-window", type=int, action=NumberListAction,
                            dest="k_window", default=None,
                            help="review window, a comma separated list "
                                 "sweeps it in cross-validate")
        parser.add_argument("--fold", type=int, dest="fold", default=None,
                            help="fold index")
        parser.add_argument("--log-file", dest="log_file", default=None,
                            help="also write the log to this file")

    def command_parser(self, options, parser):
        command = options.action
        if command is None or command == ToolCommandType.toolcmd_key_help:
            parser.print_help()
            return EXIT_OK if command else EXIT_USAGE
        add_task_file_handler(options.log_file)
        try:
            LOG.info("Input command: %s" % command)
            self._process_command(command, options)
            return EXIT_OK
        except Exception as exception:
            error_no = getattr(exception, "error_no", "00000")
            LOG.exception("%s: %s" % (get_instance_name(exception), exception),
                          exc_info=False, error_no=error_no)
            return EXIT_FAILURE
        finally:
            remove_task_file_handler()

    def _process_command(self, command, options):
        handlers = {
            ToolCommandType.toolcmd_key_ingest: self._process_command_ingest,
            ToolCommandType.toolcmd_key_build_graph:
                self._process_command_build_graph,
            ToolCommandType.toolcmd_key_train: self._process_command_train,
            ToolCommandType.toolcmd_key_eval: self._process_command_eval,
            ToolCommandType.toolcmd_key_cross_validate:
                self._process_command_cross_validate,
            ToolCommandType.toolcmd_key_gradcheck:
                self._process_command_gradcheck,
            ToolCommandType.toolcmd_key_simulate:
                self._process_command_simulate,
            ToolCommandType.toolcmd_key_export_states:
                self._process_command_export_states,
        }
        handler = handlers.get(command)
        if handler is None:
            raise ParamError("Unsupported command action '%s'" % command,
                             error_no="00100")
        manager = self._resolve_config(command, options)
        config = manager.get_config()
        output_dir = config.paths.output_dir
        manager.dump(output_dir)
        handler(config, options, output_dir)

    @classmethod
    def _resolve_config(cls, command, options):
        overrides = {
            "seed": options.seed,
            "model.ablation": options.ablation,
            "model.mode": options.mode,
            "train.fold": options.fold,
            "paths.data_in": options.data_in,
            "paths.output_dir": options.output_dir,
            "paths.checkpoint": getattr(options, "checkpoint", None),
            "simulation.students": getattr(options, "students", None),
            "simulation.steps": getattr(options, "steps", None),
        }
        k_window = options.k_window or []
        if len(k_window) == 1:
            overrides["model.review_window"] = k_window[0]
        elif len(k_window) > 1 and \
                command != ToolCommandType.toolcmd_key_cross_validate:
            raise ParamError("a --k-window list is only accepted by "
                             "cross-validate", error_no="00115")
        manager = RunConfigManager(options.config, overrides)
        config = manager.get_config()
        change_logger_level(config.log_level)
        set_default_dtype(config.train.precision)
        return manager

    @staticmethod
    def _load_dataset(config):
        data_in = config.paths.data_in
        if not data_in:
            raise ParamError("no input given, use --in or paths.data_in",
                             error_no="00115")
        if is_csv_file(data_in):
            parsed = parse_interactions(data_in, config.columns)
            return build_dataset(parsed.records, config.discretizer)
        return load_dataset(data_in)

    @staticmethod
    def _reporter():
        return get_plugin(Plugin.REPORTER, ReporterType.result)[0]

    @staticmethod
    def _listeners():
        listeners = get_plugin(Plugin.LISTENER)
        collectors = [listener for listener in
                      get_plugin(Plugin.LISTENER, ListenerType.collect)]
        return listeners, collectors[0] if collectors else None

    def _process_command_ingest(self, config, options, output_dir):
        if not is_csv_file(config.paths.data_in or ""):
            raise ParamError("ingest needs an interaction csv, got '%s'" %
                             config.paths.data_in, error_no="00110")
        parsed = parse_interactions(config.paths.data_in, config.columns)
        dataset = build_dataset(parsed.records, config.discretizer)
        save_dataset(dataset, output_dir)
        LOG.info("Dataset saved", path=output_dir,
                 students=len(dataset.students), dropped=parsed.dropped)

    def _process_command_build_graph(self, config, options, output_dir):
        dataset = self._load_dataset(config)
        graph = build_concept_graph(student_streams(dataset.sequences),
                                    dataset.vocab.num_concepts,
                                    config.graph.threshold_power)
        export_graph(graph, dataset.vocab.concepts, output_dir)

    def _process_command_train(self, config, options, output_dir):
        dataset = self._load_dataset(config)
        listeners, collector = self._listeners()
        splits = kfold(dataset.students, config.train.folds, config.seed,
                       config.train.val_ratio)
        fold = max(config.train.fold, 0)
        for listener in listeners:
            listener.__started__(LifeCycle.Run, {"fold": fold})
        result = run_fold(dataset, splits[fold], config, listeners)
        checkpoint = config.paths.checkpoint or os.path.join(
            output_dir, FileName.checkpoint)
        save_checkpoint(checkpoint, result.model, config,
                        result.train_result.optimizer,
                        extra={"fold": fold,
                               "best_epoch": result.best_epoch})
        for listener in listeners:
            listener.__ended__(LifeCycle.Run, {"fold": fold})
        self._reporter().__generate_reports__(
            output_dir, metrics=result.to_dict(),
            train_log=collector.get_records() if collector
            else result.train_result.records)

    def _process_command_eval(self, config, options, output_dir):
        model, meta = self._load_model(config)
        dataset = self._load_dataset(config)
        self._check_vocab(model, dataset)
        sequences = dataset.sequences
        fold = config.train.fold
        if fold >= 0:
            splits = kfold(dataset.students, config.train.folds, config.seed,
                           config.train.val_ratio)
            sequences = dataset.select(splits[fold].test)
        metrics = evaluate(model, sequences, config.train.batch_size,
                           config.train.workers)
        content = {"fold": fold,
                   "epoch": meta.get("extra", {}).get("best_epoch")}
        content.update(metrics.to_dict())
        self._reporter().__generate_reports__(output_dir, metrics=content)

    def _process_command_cross_validate(self, config, options, output_dir):
        dataset = self._load_dataset(config)
        listeners, collector = self._listeners()
        rows = []
        k_window = options.k_window or []
        if len(k_window) > 1:
            rows.extend(sweep(dataset, config, "k_window", k_window,
                              listeners))
        if options.gamma_grid:
            rows.extend(sweep(dataset, config, "gamma", options.gamma_grid,
                              listeners))
        if rows:
            self._reporter().__generate_reports__(output_dir,
                                                  sensitivity=rows)
            return
        report = cross_validate(dataset, config, listeners)
        self._reporter().__generate_reports__(
            output_dir, cv_report=report,
            metrics=dict(report.mean.to_dict(), fold=-1, epoch=None),
            train_log=collector.get_records() if collector else None)

    def _process_command_gradcheck(self, config, options, output_dir):
        set_default_dtype("float64")
        model_config = replace(config.model, dropout=0.0)
        if config.paths.data_in:
            dataset = self._load_dataset(config)
        else:
            simulation = replace(config.simulation,
                                 students=min(config.simulation.students,
                                              GRADCHECK_WINDOWS))
            world = generate_world(WorldSpec.from_config(simulation,
                                                         config.seed))
            records = simulate_log(world, min(config.simulation.steps,
                                              config.discretizer.window))
            dataset = build_dataset(records, config.discretizer)
        sequences = dataset.sequences[:GRADCHECK_WINDOWS]
        graph = build_concept_graph(student_streams(dataset.sequences),
                                    dataset.vocab.num_concepts,
                                    config.graph.threshold_power)
        model = KnowledgeTracer(model_config, dataset.vocab,
                                dataset.discretizer,
                                prerequisites=graph.prerequisites,
                                seed=config.seed)
        batch = model.make_batch(sequences)

        def closure():
            result = model.forward(batch)
            return bce_loss(result.predictions, result.labels, result.mask,
                            model.params, config.train.l2_lambda)

        report = finite_diff_check(closure, model.params,
                                   max_entries=GRADCHECK_MAX_ENTRIES,
                                   seed=config.seed)
        self._reporter().__generate_reports__(output_dir, gradcheck=report)
        LOG.info("Gradient check finished", passed=report.passed,
                 max_rel_error="%.3e" % report.max_rel_error)
        if not report.passed:
            failed = [block.name for block in report.blocks
                      if not block.passed]
            raise NumericalError("gradient check failed for %s" % failed)

    def _process_command_simulate(self, config, options, output_dir):
        world = generate_world(WorldSpec.from_config(config.simulation,
                                                     config.seed))
        records = simulate_log(world, config.simulation.steps,
                               workers=config.train.workers)
        write_simulation(world, records, output_dir)

    def _process_command_export_states(self, config, options, output_dir):
        model, _ = self._load_model(config)
        dataset = self._load_dataset(config)
        self._check_vocab(model, dataset)
        rows = []
        vocab = dataset.vocab
        for sequence in dataset.sequences:
            predictions, traces = model.forward_sequence(sequence)
            for step, (y, trace) in enumerate(zip(predictions, traces),
                                              start=1):
                rows.append({
                    "student_id": sequence.student_id,
                    "window_index": sequence.window_index,
                    "step": step,
                    "exercise": vocab.exercises[sequence.exercise[step]],
                    "concept": vocab.concepts[sequence.concept[step]],
                    "correct": int(sequence.correct[step]),
                    "y": float(y),
                    "pooled_norm": float(trace.pooled_norm[0]),
                    "w_f": float(trace.forgetting_weight[0]),
                    "learning_gate_mean": float(trace.learning_gate_mean[0]),
                    "forgetting_gate_mean":
                        float(trace.forgetting_gate_mean[0])})
        self._reporter().__generate_reports__(output_dir, states=rows)

    @staticmethod
    def _load_model(config):
        if not config.paths.checkpoint:
            raise ParamError("no checkpoint given, use --checkpoint",
                             error_no="00115")
        return load_checkpoint(config.paths.checkpoint)

    @staticmethod
    def _check_vocab(model, dataset):
        if list(model.vocab.exercises) != list(dataset.vocab.exercises) or \
                list(model.vocab.concepts) != list(dataset.vocab.concepts) \
                or not np.array_equal(model.vocab.exercise_concept,
                                      dataset.vocab.exercise_concept):
            raise DataError("dataset vocabulary does not match the "
                            "checkpoint, ingest with the same log")
