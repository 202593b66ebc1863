"""
pipeline_manager
================

Defines the :class:`PipelineManager` responsible for loading pipelines and
routing subcommands to them.  Built-in pipelines live in
``mollow.pipelines``; extra ones can be dropped into any directory and
loaded with ``mollow --pipelines DIR``.

The manager expects each pipeline module to expose a class called
``Pipeline`` that derives from :class:`BasePipeline`.  During registration
the manager instantiates the class, calls its ``initialize`` method and
collects the commands it provides.
"""

from __future__ import annotations

import argparse
import importlib
import importlib.util
import logging
import pathlib
import pkgutil
from typing import Dict, List, Optional, TextIO

from .pipeline_base import BasePipeline, Command

logger = logging.getLogger(__name__)


class PipelineManager:
    """Coordinates loading and execution of pipelines."""

    def __init__(self, stdout: Optional[TextIO] = None) -> None:
        self.pipelines: List[BasePipeline] = []
        self.command_registry: Dict[str, Command] = {}
        self.command_owner: Dict[str, BasePipeline] = {}
        #: Report stream; ``None`` means ``sys.stdout`` at emit time.
        self.stdout = stdout

    def load_builtin_pipelines(self) -> None:
        package = "mollow.pipelines"
        package_obj = importlib.import_module(package)
        for _, module_name, _ in pkgutil.iter_modules(package_obj.__path__, package + "."):
            module = importlib.import_module(module_name)
            cls = getattr(module, "Pipeline", None)
            if isinstance(cls, type) and issubclass(cls, BasePipeline):
                self.register_pipeline(cls(self))

    def load_external_pipelines(self, path: str) -> None:
        """Load every ``*.py`` module of ``path`` exposing a ``Pipeline`` class.

        A missing directory is ignored; modules that fail to import are
        logged and skipped.
        """
        pipeline_dir = pathlib.Path(path)
        if not pipeline_dir.is_dir():
            logger.warning("Pipeline directory %s does not exist", path)
            return
        for file in sorted(pipeline_dir.glob("*.py")):
            spec = importlib.util.spec_from_file_location(f"mollow_external_{file.stem}", file)
            if not (spec and spec.loader):
                continue
            module = importlib.util.module_from_spec(spec)
            try:
                spec.loader.exec_module(module)
            except Exception as exc:
                logger.error("Failed to load pipeline %s: %s", file.name, exc)
                continue
            cls = getattr(module, "Pipeline", None)
            if isinstance(cls, type) and issubclass(cls, BasePipeline):
                self.register_pipeline(cls(self))
                logger.info("Loaded external pipeline %s from %s", cls.name, file.name)

    def register_pipeline(self, pipeline: BasePipeline) -> None:
        """Register a pipeline instance, initialise it and merge its commands."""
        if pipeline.name in {p.name for p in self.pipelines}:
            raise ValueError(f"Duplicate pipeline name: {pipeline.name}")
        commands = pipeline.get_commands()
        for command in commands:
            if command in self.command_registry:
                raise ValueError(f"Duplicate command {command} registered by {pipeline.name}")
        self.pipelines.append(pipeline)
        pipeline.initialize()
        for command, func in commands.items():
            self.command_registry[command] = func
            self.command_owner[command] = pipeline

    def finalize_pipelines(self) -> None:
        """Invoke the finalization hook on all pipelines in reverse order."""
        for pipeline in reversed(self.pipelines):
            try:
                pipeline.finalize()
            except Exception as exc:
                logger.error("Pipeline %s failed to finalize: %s", pipeline.name, exc)

    def add_subparsers(self, parser: argparse.ArgumentParser) -> None:
        sub = parser.add_subparsers(dest="command", metavar="COMMAND")
        sub.required = True
        for command in sorted(self.command_registry):
            owner = self.command_owner[command]
            child = sub.add_parser(command, help=owner.description, description=owner.description)
            owner.add_arguments(child)

    def dispatch(self, command: str, args: argparse.Namespace) -> int:
        func = self.command_registry.get(command)
        if func is None:
            raise KeyError(f"Unknown command: {command}")
        logger.debug("Dispatching %s to pipeline %s", command, self.command_owner[command].name)
        return func(args)
